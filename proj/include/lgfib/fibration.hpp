#pragma once

// The LG fibration S^(2^n-1) -> S^n:
//
//   contract : sphere angles  -> rotor angles      (index grouping)
//   project  : rotor angles   -> unit vector in R^(n+1)
//   torus_embed / torus_invert / mu : the factorization through the partial torus
//
// project(r)_0 = ∏ cos θ_k
// project(r)_k = sin θ_k ∏_{l>k} cos θ_l ∏_{m<k} (-1)^{(θ_m - (θ_m mod π))/π},  k = 1..n

#include <lgfib/angles.hpp>
#include <lgfib/errors.hpp>
#include <lgfib/multicomplex.hpp>
#include <lgfib/polysphere.hpp>

#include <Eigen/Core>
#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lgfib {

/// Image of the projection: a unit vector (e_0, ..., e_n) in R^(n+1).
template <typename Scalar = double>
class ProjectedPoint {
 public:
  explicit ProjectedPoint(Vector<Scalar> coords, Scalar tol = Scalar(kDefaultTolerance))
      : coords_(std::move(coords)) {
    using std::abs;
    check_order(order());
    if (!(abs(coords_.norm() - Scalar(1)) <= tol)) {
      throw NonUnitInput("projected point is not unit length (norm " +
                         std::to_string(double(coords_.norm())) + ")");
    }
  }

  int order() const noexcept { return int(coords_.size()) - 1; }
  const Vector<Scalar>& coords() const noexcept { return coords_; }

 private:
  Vector<Scalar> coords_;
};

/// Point of the partial torus with radius offsets (a_2, ..., a_n), each >= 1.
template <typename Scalar = double>
class TorusPoint {
 public:
  TorusPoint(Vector<Scalar> coords, Vector<Scalar> radii)
      : coords_(std::move(coords)), radii_(std::move(radii)) {
    check_order(order());
    if (radii_.size() != coords_.size() - 2) {
      throw DomainError("order " + std::to_string(order()) + " torus needs " +
                        std::to_string(order() - 1) + " radii");
    }
    for (Eigen::Index i = 0; i < radii_.size(); ++i) {
      if (!(radii_[i] >= Scalar(1)) || !std::isfinite(double(radii_[i]))) {
        throw DomainError("torus radius a" + std::to_string(i + 2) + " must be >= 1");
      }
    }
  }

  int order() const noexcept { return int(coords_.size()) - 1; }
  const Vector<Scalar>& coords() const noexcept { return coords_; }
  const Vector<Scalar>& radii() const noexcept { return radii_; }

 private:
  Vector<Scalar> coords_;
  Vector<Scalar> radii_;
};

struct KernelReport {
  bool is_kernel = false;
  /// Rotor indices k >= 2 with θ_k within tolerance of π/2, ascending.
  std::vector<int> offending_indices;
  double tolerance = kDefaultTolerance;
};

/// Preimage structure of the projection at a rotor.
struct FiberClass {
  /// Largest k >= 2 with θ_k = π/2, if any.
  std::optional<int> collapse_index;
  /// Rotor indices 1..k-1 whose values do not move the projected point. θ_1 is
  /// free only inside its current half circle, since its half fixes the sign of
  /// e_2..e_n.
  std::vector<int> free_indices;
  /// 0 when θ_1 lies in [0, π), 1 when it lies in [π, 2π).
  int leading_half = 0;
};

template <typename Scalar>
Vector<Scalar> default_radii(int order) {
  check_order(order);
  return Vector<Scalar>::Ones(order - 1);
}

// ---------------------------------------------------------------------------
// Contraction

/// Sphere angles with every index replaced by the rotor angle its group feeds,
/// after the closed-boundary wrap. Embedding these reproduces the rotor's
/// coefficient vector.
template <typename Scalar>
Vector<Scalar> contracted_sphere_angles(const SphereAngles<Scalar>& angles);

/// Collapses the 2^n - 1 sphere angles onto (θ_{2^n-n}, θ_3, θ_7, ..., θ_{2^n-1}).
/// A top angle of exactly π maps to 0 and shifts the full-circle angle by π.
template <typename Scalar>
RotorAngles<Scalar> contract(const SphereAngles<Scalar>& angles) {
  const int n = angles.order();
  Vector<Scalar> rotor(n);
  rotor[0] = angles.angle(full_circle_index(n));
  for (int l = 2; l <= n; ++l) rotor[l - 1] = angles.angle((1 << l) - 1);
  if (n >= 2 && rotor[n - 1] >= kPi<Scalar>) {
    rotor[n - 1] = Scalar(0);
    rotor[0] = wrap_two_pi(rotor[0] + kPi<Scalar>);
  }
  return RotorAngles<Scalar>(std::move(rotor));
}

template <typename Scalar>
Vector<Scalar> contracted_sphere_angles(const SphereAngles<Scalar>& angles) {
  const RotorAngles<Scalar> rotor = contract(angles);
  const IndexPartition partition = theta_partition(angles.order());
  Vector<Scalar> out(angles.theta().size());
  for (std::size_t g = 0; g < partition.groups.size(); ++g) {
    for (int index : partition.groups[g]) out[index - 1] = rotor.theta()[Eigen::Index(g)];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Projection

/// Projection formula evaluated for arbitrary angle values, with the per-term
/// sign products exactly as written (no reduction to a global sign).
template <typename Derived>
Vector<typename Derived::Scalar> lg_projection(const Eigen::MatrixBase<Derived>& theta) {
  using Scalar = typename Derived::Scalar;
  using std::cos;
  using std::sin;
  const Eigen::Index n = theta.size();
  Vector<Scalar> cosines(n);
  for (Eigen::Index k = 0; k < n; ++k) cosines[k] = cos(theta[k]);

  // suffix[k] = ∏_{l >= k} cos θ_l (0-based), suffix[n] = 1
  Vector<Scalar> suffix(n + 1);
  suffix[n] = Scalar(1);
  for (Eigen::Index k = n; k-- > 0;) suffix[k] = suffix[k + 1] * cosines[k];

  Vector<Scalar> out(n + 1);
  out[0] = suffix[0];
  Scalar sign(1);  // ∏_{m<k} (-1)^{half turns of θ_m}
  for (Eigen::Index k = 0; k < n; ++k) {
    out[k + 1] = sin(theta[k]) * suffix[k + 1] * sign;
    sign *= half_turn_sign(theta[k]);
  }
  return out;
}

/// Projection of a rotor onto S^n.
template <typename Scalar>
ProjectedPoint<Scalar> project(const RotorAngles<Scalar>& angles) {
  return ProjectedPoint<Scalar>(lg_projection(angles.theta()));
}

/// Projection using the reduced form valid on the rotor domain: components
/// e_2..e_n share the single sign (-1)^{⌊θ_1/π⌋}.
template <typename Scalar>
Vector<Scalar> project_reduced(const RotorAngles<Scalar>& angles) {
  using std::cos;
  using std::sin;
  const int n = angles.order();
  Vector<Scalar> out(n + 1);
  Scalar tail(1);
  for (int k = 2; k <= n; ++k) tail *= cos(angles.angle(k));
  out[0] = cos(angles.angle(1)) * tail;
  out[1] = sin(angles.angle(1)) * tail;
  const Scalar s = half_turn_sign(angles.angle(1));
  for (int k = 2; k <= n; ++k) {
    Scalar c(1);
    for (int l = k + 1; l <= n; ++l) c *= cos(angles.angle(l));
    out[k] = s * sin(angles.angle(k)) * c;
  }
  return out;
}

/// LG fibration: project ∘ contract.
template <typename Scalar>
ProjectedPoint<Scalar> lg(const SphereAngles<Scalar>& angles) {
  return project(contract(angles));
}

// ---------------------------------------------------------------------------
// Kernel and inverse

template <typename Scalar>
KernelReport kernel_check(const RotorAngles<Scalar>& angles,
                          Scalar tol = Scalar(kDefaultTolerance)) {
  using std::abs;
  KernelReport report;
  report.tolerance = double(tol);
  const Scalar half_pi = kPi<Scalar> / Scalar(2);
  for (int k = 2; k <= angles.order(); ++k) {
    if (abs(angles.angle(k) - half_pi) <= tol) report.offending_indices.push_back(k);
  }
  report.is_kernel = !report.offending_indices.empty();
  return report;
}

template <typename Scalar>
FiberClass fiber_class(const RotorAngles<Scalar>& angles, Scalar tol = Scalar(kDefaultTolerance)) {
  FiberClass fc;
  fc.leading_half = half_turn_sign(angles.angle(1)) > Scalar(0) ? 0 : 1;
  const KernelReport report = kernel_check(angles, tol);
  if (!report.is_kernel) return fc;
  fc.collapse_index = report.offending_indices.back();
  for (int k = 1; k < *fc.collapse_index; ++k) fc.free_indices.push_back(k);
  return fc;
}

/// Inverse of the projection off the kernel.
///
/// With r_j = |(p_0..p_j)|, |cos θ_k| = r_{k-1} / r_k and θ_k is either
/// α_k = atan2(|p_k|, r_{k-1}) or π - α_k. The signs of the nonzero components
/// among e_2..e_n fix the global sign s and the cosine signs of all but the
/// lowest such index; that last cosine sign follows from which of the two
/// directions atan2(p_1, p_0) or its antipode puts θ_1 in the half circle
/// selected by s.
///
/// Throws NonUnitInput when |p| is off by more than tol, and KernelAmbiguity
/// when some |cos θ_k| <= tol (k >= 2).
template <typename Derived>
RotorAngles<typename Derived::Scalar> invert_projection(
    const Eigen::MatrixBase<Derived>& p,
    typename Derived::Scalar tol = typename Derived::Scalar(kDefaultTolerance)) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::atan2;
  using std::sqrt;
  const int n = int(p.size()) - 1;
  check_order(n);
  if (!(abs(p.norm() - Scalar(1)) <= tol)) {
    throw NonUnitInput("point is not unit length (norm " + std::to_string(double(p.norm())) + ")");
  }

  // radius[j] = |(p_0..p_j)|
  Vector<Scalar> radius(n + 1);
  Scalar acc(0);
  for (int j = 0; j <= n; ++j) {
    acc += p[j] * p[j];
    radius[j] = sqrt(acc);
  }
  for (int k = n; k >= 2; --k) {
    if (radius[k - 1] <= tol * radius[k]) {
      throw KernelAmbiguity("theta" + std::to_string(k) +
                                " is pi/2: the leading components vanish and the preimage "
                                "is not unique",
                            k);
    }
  }

  std::vector<int> signed_indices;  // k >= 2 with p_k != 0, descending
  for (int k = n; k >= 2; --k) {
    if (p[k] != Scalar(0)) signed_indices.push_back(k);
  }
  auto sign_of = [&](int k) { return p[k] > Scalar(0) ? 1 : -1; };

  const Scalar phi = wrap_two_pi(atan2(p[1], p[0]));
  Scalar theta1 = phi;
  std::vector<int> cos_sign(std::size_t(n + 1), 1);
  if (!signed_indices.empty()) {
    const int s = sign_of(signed_indices.front());
    int q1 = 1;
    if ((half_turn_sign(phi) > Scalar(0)) != (s > 0)) {
      theta1 = wrap_two_pi(phi + kPi<Scalar>);
      q1 = -1;
    }
    for (std::size_t i = 0; i + 1 < signed_indices.size(); ++i) {
      cos_sign[std::size_t(signed_indices[i])] =
          sign_of(signed_indices[i]) * sign_of(signed_indices[i + 1]);
    }
    const int last = signed_indices.back();
    cos_sign[std::size_t(last)] = q1 * s * sign_of(last);
  }

  Vector<Scalar> theta(n);
  theta[0] = theta1;
  for (int k = 2; k <= n; ++k) {
    const Scalar alpha = atan2(abs(p[k]), radius[k - 1]);
    Scalar t = cos_sign[std::size_t(k)] > 0 ? alpha : kPi<Scalar> - alpha;
    if (t >= kPi<Scalar>) t = below_pi<Scalar>();
    theta[k - 1] = t;
  }
  return RotorAngles<Scalar>(std::move(theta));
}

template <typename Scalar>
RotorAngles<Scalar> invert_projection(const ProjectedPoint<Scalar>& p,
                                      Scalar tol = Scalar(kDefaultTolerance)) {
  return invert_projection(p.coords(), tol);
}

// ---------------------------------------------------------------------------
// Partial torus

/// Torus parameterization for arbitrary radii (radii[k-2] = a_k); with all
/// radii zero it coincides with the reduced projection.
template <typename DerivedT, typename DerivedA>
Vector<typename DerivedT::Scalar> torus_coordinates(const Eigen::MatrixBase<DerivedT>& theta,
                                                    const Eigen::MatrixBase<DerivedA>& radii) {
  using Scalar = typename DerivedT::Scalar;
  using std::cos;
  using std::sin;
  const Eigen::Index n = theta.size();
  // suffix[k] = ∏_{l >= k} (a_l + cos θ_l) over 1-based l >= 2, indexed 1-based
  Vector<Scalar> suffix(n + 2);
  suffix[n + 1] = Scalar(1);
  for (Eigen::Index l = n; l >= 2; --l) suffix[l] = suffix[l + 1] * (radii[l - 2] + cos(theta[l - 1]));
  suffix[1] = suffix[2];

  Vector<Scalar> out(n + 1);
  out[0] = cos(theta[0]) * suffix[2];
  out[1] = sin(theta[0]) * suffix[2];
  const Scalar s = half_turn_sign(theta[0]);
  for (Eigen::Index k = 2; k <= n; ++k) out[k] = s * sin(theta[k - 1]) * suffix[k + 1];
  return out;
}

template <typename Scalar>
TorusPoint<Scalar> torus_embed(const RotorAngles<Scalar>& angles, const Vector<Scalar>& radii) {
  if (radii.size() != angles.order() - 1) {
    throw DomainError("order " + std::to_string(angles.order()) + " torus needs " +
                      std::to_string(angles.order() - 1) + " radii");
  }
  return TorusPoint<Scalar>(torus_coordinates(angles.theta(), radii), radii);
}

template <typename Scalar>
TorusPoint<Scalar> torus_embed(const RotorAngles<Scalar>& angles) {
  return torus_embed(angles, default_radii<Scalar>(angles.order()));
}

namespace detail {

template <typename Scalar>
struct TorusSearch {
  const Vector<Scalar>& x;
  const Vector<Scalar>& a;
  Scalar rho1;       // |(x_0, x_1)| = ∏ (a_k + cos θ_k)
  Scalar theta1;
  Vector<Scalar> lower;  // lower[k] = ∏_{l=2..k} (a_l - 1)
  Vector<Scalar> upper;  // upper[k] = ∏_{l=2..k} (a_l + 1)
  Vector<Scalar> theta;
  Vector<Scalar> best;
  Scalar best_residual = std::numeric_limits<Scalar>::infinity();
  Scalar slack;

  // Level k knows scale = ∏_{l>k} (a_l + cos θ_l).
  void descend(int k, Scalar scale) {
    using std::abs;
    using std::atan2;
    using std::sqrt;
    if (k == 1) {
      theta[0] = theta1;
      const Scalar residual = (torus_coordinates(theta, a) - x).cwiseAbs().maxCoeff();
      if (residual < best_residual) {
        best_residual = residual;
        best = theta;
      }
      return;
    }
    Scalar sn = abs(x[k]) / scale;
    if (sn > Scalar(1) + slack) return;
    if (sn > Scalar(1)) sn = Scalar(1);
    const Scalar c = sqrt(Scalar(1) - sn * sn);
    const Scalar candidates[2] = {c, -c};
    const int count = c > Scalar(0) ? 2 : 1;
    for (int i = 0; i < count; ++i) {
      const Scalar ck = candidates[i];
      const Scalar t = atan2(sn, ck);
      if (t >= kPi<Scalar>) continue;
      const Scalar next = scale * (a[k - 2] + ck);
      if (!(next > Scalar(0))) continue;
      // remaining factors l = 2..k-1 must bring next down (or up) to rho1
      const Scalar hi = next * upper[k - 1];
      const Scalar lo = next * lower[k - 1];
      if (rho1 > hi * (Scalar(1) + slack) + slack || rho1 < lo * (Scalar(1) - slack) - slack) continue;
      theta[k - 1] = t;
      descend(k - 1, next);
    }
  }
};

// Gauss-Newton refinement of θ_2..θ_n against the equations
//   σ sin θ_k ∏_{l>k} (a_l + cos θ_l) = x_k  (k = 2..n),   ∏_{l>=2} (a_l + cos θ_l) = ρ_1.
// Near θ_k = π/2 the k-th equation alone pins cos θ_k poorly; ρ_1 restores it.
template <typename Scalar>
void polish_torus_angles(const Vector<Scalar>& x, const Vector<Scalar>& a, Scalar rho1,
                         Vector<Scalar>& theta) {
  using std::cos;
  using std::sin;
  const int n = int(theta.size());
  if (n < 2) return;
  const Scalar s = half_turn_sign(theta[0]);
  auto evaluate = [&](const Vector<Scalar>& t, Vector<Scalar>& r, Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>* jac) {
    Vector<Scalar> factor(n + 1), sine(n + 1);
    for (int l = 2; l <= n; ++l) {
      factor[l] = a[l - 2] + cos(t[l - 1]);
      sine[l] = sin(t[l - 1]);
    }
    // product over l in [lo, n] skipping `skip`
    auto prod = [&](int lo, int skip) {
      Scalar p(1);
      for (int l = lo; l <= n; ++l) {
        if (l != skip) p *= factor[l];
      }
      return p;
    };
    r.resize(n);
    if (jac) jac->setZero(n, n - 1);
    for (int k = 2; k <= n; ++k) {
      r[k - 2] = s * sine[k] * prod(k + 1, 0) - x[k];
      if (!jac) continue;
      (*jac)(k - 2, k - 2) = s * cos(t[k - 1]) * prod(k + 1, 0);
      for (int j = k + 1; j <= n; ++j) (*jac)(k - 2, j - 2) = -s * sine[k] * sine[j] * prod(k + 1, j);
    }
    r[n - 1] = prod(2, 0) - rho1;
    if (jac) {
      for (int j = 2; j <= n; ++j) (*jac)(n - 1, j - 2) = -sine[j] * prod(2, j);
    }
  };

  Vector<Scalar> r, trial_r;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> jac;
  evaluate(theta, r, &jac);
  for (int iter = 0; iter < 4; ++iter) {
    const Vector<Scalar> step = jac.colPivHouseholderQr().solve(-r);
    Vector<Scalar> trial = theta;
    for (int k = 2; k <= n; ++k) {
      Scalar t = trial[k - 1] + step[k - 2];
      if (t < Scalar(0)) t = Scalar(0);
      if (t >= kPi<Scalar>) t = below_pi<Scalar>();
      trial[k - 1] = t;
    }
    evaluate(trial, trial_r, nullptr);
    if (!(trial_r.squaredNorm() < r.squaredNorm())) break;
    theta = trial;
    evaluate(theta, r, &jac);
  }
}

}  // namespace detail

/// Recovers the rotor angles of a torus point. The top-down search branches on
/// the sign of each cos θ_k and keeps the assignment that reproduces the
/// coordinates best. For radii > 1 and n >= 3 the parameterization meets itself
/// on a measure-zero set; there the first best candidate in search order wins.
/// Throws OffSurface when no assignment reproduces the point within
/// tol * max(1, |x|_inf).
template <typename Scalar>
RotorAngles<Scalar> torus_invert(const TorusPoint<Scalar>& t, Scalar tol = Scalar(kDefaultTolerance)) {
  using std::atan2;
  using std::hypot;
  using std::max;
  const int n = t.order();
  const Vector<Scalar>& x = t.coords();
  const Scalar scale_tol = tol * max(Scalar(1), x.cwiseAbs().maxCoeff());

  detail::TorusSearch<Scalar> search{x, t.radii(), hypot(x[0], x[1]), wrap_two_pi(atan2(x[1], x[0])),
                                     Vector<Scalar>(n + 1), Vector<Scalar>(n + 1),
                                     Vector<Scalar>::Zero(n), Vector<Scalar>(), std::numeric_limits<Scalar>::infinity(),
                                     std::max(scale_tol, Scalar(1e-12))};
  search.lower[0] = search.lower[1] = Scalar(1);
  search.upper[0] = search.upper[1] = Scalar(1);
  for (int k = 2; k <= n; ++k) {
    search.lower[k] = search.lower[k - 1] * (t.radii()[k - 2] - Scalar(1));
    search.upper[k] = search.upper[k - 1] * (t.radii()[k - 2] + Scalar(1));
  }
  search.descend(n, Scalar(1));
  if (search.best.size() == n) detail::polish_torus_angles(x, t.radii(), search.rho1, search.best);
  if (search.best.size() == n) {
    search.best_residual = (torus_coordinates(search.best, t.radii()) - x).cwiseAbs().maxCoeff();
  }

  if (!(search.best_residual <= scale_tol)) {
    throw OffSurface("point is not on the partial torus for the given radii");
  }
  return RotorAngles<Scalar>(std::move(search.best));
}

/// Collapses the torus onto S^n: the parameterization at the recovered angles
/// with every radius set to zero.
template <typename Scalar>
ProjectedPoint<Scalar> mu(const TorusPoint<Scalar>& t, Scalar tol = Scalar(kDefaultTolerance)) {
  const RotorAngles<Scalar> angles = torus_invert(t, tol);
  return ProjectedPoint<Scalar>(
      torus_coordinates(angles.theta(), Vector<Scalar>::Zero(angles.order() - 1)));
}

}  // namespace lgfib
