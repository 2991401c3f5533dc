#pragma once

// Polyspherical coordinates for S^(2^n - 1) in the particular orientation
//
//   S_p^(2^n-1)  = ( S_p+^(2^(n-1)-1) cos t, S_p^(2^(n-1)-1)  sin t ),  t in [0, π]
//   S_p+^(2^n-1) = ( S_p+^(2^(n-1)-1) cos t, S_p+^(2^(n-1)-1) sin t ), t in [0, π)
//
// with S_p+^1 the half circle [0, π) and S_p^1 the full circle [0, 2π).
// Angles are numbered 1..2^n-1: the cosine block takes the lowest indices, the
// sine block follows, and the block's own angle t comes last.

#include <lgfib/angles.hpp>
#include <lgfib/errors.hpp>
#include <lgfib/multicomplex.hpp>

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lgfib {

enum class AngleDomain : std::uint8_t {
  kHalfOpen,    // [0, π)
  kFullCircle,  // [0, 2π)
  kClosedHalf,  // [0, π]
};

/// Number of sphere angles for order n, 2^n - 1.
inline Eigen::Index sphere_angle_count(int order) { return (Eigen::Index(1) << order) - 1; }

/// 1-based index of the single full-circle angle, 2^n - n.
inline int full_circle_index(int order) { return (1 << order) - order; }

namespace detail {

enum class BlockKind { kPositive, kGeneral };

inline void assign_domains(std::vector<AngleDomain>& out, BlockKind kind, int m, int offset) {
  if (m == 1) {
    out[offset] = kind == BlockKind::kPositive ? AngleDomain::kHalfOpen : AngleDomain::kFullCircle;
    return;
  }
  const int half = (1 << (m - 1)) - 1;
  assign_domains(out, BlockKind::kPositive, m - 1, offset);
  assign_domains(out, kind, m - 1, offset + half);
  out[offset + 2 * half] =
      kind == BlockKind::kPositive ? AngleDomain::kHalfOpen : AngleDomain::kClosedHalf;
}

}  // namespace detail

/// Domain of every sphere angle (0-based positions), computed once per order.
inline const std::vector<AngleDomain>& sphere_domains(int order) {
  check_order(order);
  static const auto table = [] {
    std::array<std::vector<AngleDomain>, kMaxOrder + 1> t;
    for (int n = 1; n <= kMaxOrder; ++n) {
      t[n].resize(std::size_t(sphere_angle_count(n)));
      detail::assign_domains(t[n], detail::BlockKind::kGeneral, n, 0);
    }
    return t;
  }();
  return table[std::size_t(order)];
}

template <typename Scalar>
bool in_domain(Scalar theta, AngleDomain d) {
  if (!(theta >= Scalar(0))) return false;
  switch (d) {
    case AngleDomain::kHalfOpen: return theta < kPi<Scalar>;
    case AngleDomain::kFullCircle: return theta < kTwoPi<Scalar>;
    case AngleDomain::kClosedHalf: return theta <= kPi<Scalar>;
  }
  return false;
}

/// Angles (θ_1, ..., θ_{2^n-1}) of a point of the particular orientation.
template <typename Scalar = double>
class SphereAngles {
 public:
  using Angles = Vector<Scalar>;

  SphereAngles(int order, Angles theta) : order_(order), theta_(std::move(theta)) {
    check_order(order);
    if (theta_.size() != sphere_angle_count(order)) {
      throw DomainError("order " + std::to_string(order) + " needs " +
                        std::to_string(sphere_angle_count(order)) + " sphere angles, got " +
                        std::to_string(theta_.size()));
    }
    const auto& domains = sphere_domains(order);
    for (Eigen::Index i = 0; i < theta_.size(); ++i) {
      if (!in_domain(theta_[i], domains[std::size_t(i)])) {
        throw DomainError("sphere angle theta" + std::to_string(i + 1) + " = " +
                          std::to_string(double(theta_[i])) + " outside its domain");
      }
    }
  }

  int order() const noexcept { return order_; }
  const Angles& theta() const noexcept { return theta_; }
  /// θ_k with 1-based k.
  Scalar angle(int k) const { return theta_[k - 1]; }

 private:
  int order_;
  Angles theta_;
};

namespace detail {

template <typename Scalar, typename Derived>
void embed_block(const Eigen::MatrixBase<Derived>& theta, int m, int offset,
                 Eigen::Ref<Vector<Scalar>> out) {
  using std::cos;
  using std::sin;
  if (m == 1) {
    out[0] = cos(theta[offset]);
    out[1] = sin(theta[offset]);
    return;
  }
  const int half_angles = (1 << (m - 1)) - 1;
  const Eigen::Index half = Eigen::Index(1) << (m - 1);
  const Scalar t = theta[offset + 2 * half_angles];
  embed_block<Scalar>(theta, m - 1, offset, out.head(half));
  embed_block<Scalar>(theta, m - 1, offset + half_angles, out.tail(half));
  out.head(half) *= cos(t);
  out.tail(half) *= sin(t);
}

}  // namespace detail

/// Evaluates the recursive polyspherical parameterization for any angle values,
/// without domain checks.
template <typename Derived>
Vector<typename Derived::Scalar> embed_polyspherical(int order,
                                                     const Eigen::MatrixBase<Derived>& theta) {
  using Scalar = typename Derived::Scalar;
  check_order(order);
  if (theta.size() != sphere_angle_count(order)) {
    throw DomainError("angle vector length does not match order " + std::to_string(order));
  }
  Vector<Scalar> out(Eigen::Index(1) << order);
  detail::embed_block<Scalar>(theta, order, 0, out);
  return out;
}

/// Point of S^(2^n - 1) in R^(2^n) for the given particular-orientation angles.
template <typename Scalar>
Vector<Scalar> embed_sphere(const SphereAngles<Scalar>& angles) {
  return embed_polyspherical(angles.order(), angles.theta());
}

namespace detail {

// Recovers positive-block angles for sign * u, where sign in {+1, -1} is
// whichever makes sign * u a member of S_p+. Writes into theta[offset ..].
template <typename Scalar>
Scalar recover_positive(const Eigen::Ref<const Vector<Scalar>>& u, int m, int offset,
                        Vector<Scalar>& theta) {
  using std::atan2;
  if (m == 1) {
    const Scalar sign = (u[1] > Scalar(0) || (u[1] == Scalar(0) && u[0] >= Scalar(0)))
                            ? Scalar(1)
                            : Scalar(-1);
    Scalar a = atan2(sign * u[1], sign * u[0]);
    if (!(a > Scalar(0))) a = Scalar(0);
    if (a >= kPi<Scalar>) a = below_pi<Scalar>();
    theta[offset] = a;
    return sign;
  }
  const int half_angles = (1 << (m - 1)) - 1;
  const Eigen::Index half = Eigen::Index(1) << (m - 1);
  const Scalar ra = u.head(half).norm();
  const Scalar rb = u.tail(half).norm();
  Scalar sign(1);
  if (rb > Scalar(0)) {
    sign = recover_positive<Scalar>(u.tail(half) / rb, m - 1, offset + half_angles, theta);
  } else {
    theta.segment(offset + half_angles, half_angles).setZero();
  }
  Scalar cos_sign(1);
  if (ra > Scalar(0)) {
    const Vector<Scalar> w = sign * u.head(half) / ra;
    cos_sign = recover_positive<Scalar>(w, m - 1, offset, theta);
  } else {
    theta.segment(offset, half_angles).setZero();
  }
  if (rb == Scalar(0)) sign = cos_sign, cos_sign = Scalar(1);
  Scalar t = atan2(rb, cos_sign * ra);
  if (t >= kPi<Scalar>) t = below_pi<Scalar>();
  theta[offset + 2 * half_angles] = t;
  return sign;
}

template <typename Scalar>
void recover_general(const Eigen::Ref<const Vector<Scalar>>& u, int m, int offset,
                     Vector<Scalar>& theta) {
  using std::atan2;
  if (m == 1) {
    theta[offset] = wrap_two_pi(atan2(u[1], u[0]));
    return;
  }
  const int half_angles = (1 << (m - 1)) - 1;
  const Eigen::Index half = Eigen::Index(1) << (m - 1);
  const Scalar ra = u.head(half).norm();
  const Scalar rb = u.tail(half).norm();
  if (rb > Scalar(0)) {
    recover_general<Scalar>(u.tail(half) / rb, m - 1, offset + half_angles, theta);
  } else {
    theta.segment(offset + half_angles, half_angles).setZero();
  }
  Scalar cos_sign(1);
  if (ra > Scalar(0)) {
    cos_sign = recover_positive<Scalar>(u.head(half) / ra, m - 1, offset, theta);
  } else {
    theta.segment(offset, half_angles).setZero();
  }
  theta[offset + 2 * half_angles] = atan2(rb, cos_sign * ra);
}

}  // namespace detail

/// Inverse of embed_sphere. Throws NonUnitInput when |x| differs from 1 by more
/// than tol, and OffManifold when re-embedding the recovered angles misses x by
/// more than tol in any coordinate.
template <typename Derived>
SphereAngles<typename Derived::Scalar> recover_sphere_angles(
    int order, const Eigen::MatrixBase<Derived>& x,
    typename Derived::Scalar tol = typename Derived::Scalar(kDefaultTolerance)) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  check_order(order);
  if (x.size() != (Eigen::Index(1) << order)) {
    throw DomainError("coordinate vector length does not match order " + std::to_string(order));
  }
  if (abs(x.norm() - Scalar(1)) > tol) throw NonUnitInput("sphere coordinates are not unit length");
  Vector<Scalar> theta(sphere_angle_count(order));
  const Vector<Scalar> u = x / x.norm();
  detail::recover_general<Scalar>(u, order, 0, theta);
  SphereAngles<Scalar> angles(order, std::move(theta));
  const Scalar residual = (embed_sphere(angles) - x).cwiseAbs().maxCoeff();
  if (residual > tol) {
    throw OffManifold("coordinates are not reproduced by the particular orientation (residual " +
                      std::to_string(double(residual)) + ")");
  }
  return angles;
}

/// Grouping of the 2^n - 1 sphere angle indices onto the n rotor angles.
struct IndexPartition {
  int order = 0;
  /// groups[0] feeds rotor angle 1 (the full circle); groups[l-1] feeds rotor angle l.
  std::vector<std::vector<int>> groups;
  /// Sphere index each group collapses onto: 2^n - n for the first, 2^l - 1 after.
  std::vector<int> representative;
};

/// Θ^{2^m-1}_l from Θ_0 = {2^m - 1}, Θ_l = {k + 2^{m+l-1} - 1 : k in Θ_{l-1}} ∪ Θ_{l-1}.
inline std::vector<int> theta_index_set(int m, int l) {
  std::vector<int> set{(1 << m) - 1};
  for (int j = 1; j <= l; ++j) {
    const int shift = (1 << (m + j - 1)) - 1;
    const std::size_t prev = set.size();
    for (std::size_t i = 0; i < prev; ++i) set.push_back(set[i] + shift);
  }
  std::sort(set.begin(), set.end());
  return set;
}

inline IndexPartition theta_partition(int order) {
  check_order(order);
  IndexPartition p;
  p.order = order;
  p.groups.push_back(theta_index_set(1, order - 1));
  p.representative.push_back(full_circle_index(order));
  for (int m = 2; m <= order; ++m) {
    p.groups.push_back(theta_index_set(m, order - m));
    p.representative.push_back((1 << m) - 1);
  }
  return p;
}

/// Hopf map S^3 -> S^2, (a²+b²-c²-d², 2(ad+bc), 2(bd-ac)).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> hopf(const Eigen::Matrix<Scalar, 4, 1>& p,
                                 Scalar tol = Scalar(kDefaultTolerance)) {
  using std::abs;
  if (abs(p.norm() - Scalar(1)) > tol) throw NonUnitInput("Hopf input is not on S^3");
  const Scalar a = p[0], b = p[1], c = p[2], d = p[3];
  return {a * a + b * b - c * c - d * d, Scalar(2) * (a * d + b * c),
          Scalar(2) * (b * d - a * c)};
}

/// Hopf map of the polyspherical point (cosθ1 cosθ3, sinθ1 cosθ3, cosθ2 sinθ3, sinθ2 sinθ3)
/// in closed form: (cos 2θ3, sin 2θ3 sin(θ1+θ2), -sin 2θ3 cos(θ1+θ2)).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> hopf_polyspherical(Scalar theta1, Scalar theta2, Scalar theta3) {
  using std::cos;
  using std::sin;
  const Scalar s2 = sin(Scalar(2) * theta3);
  return {cos(Scalar(2) * theta3), s2 * sin(theta1 + theta2), -s2 * cos(theta1 + theta2)};
}

}  // namespace lgfib
