#pragma once

// Multicomplex ring C_n: 2^n-dimensional commutative algebra over the reals
// generated by n commuting imaginary units i_1..i_n with i_k^2 = -1.
//
// Basis blades are indexed by bitmask: bit (k-1) of the index selects i_k, so
// index 0 is the real unit and index 0b11 is i_1 i_2.

#include <lgfib/angles.hpp>
#include <lgfib/errors.hpp>

#include <Eigen/Core>

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>

namespace lgfib {

using BladeIndex = std::uint32_t;

struct BladeProduct {
  int sign;
  BladeIndex blade;

  friend constexpr bool operator==(const BladeProduct&, const BladeProduct&) = default;
};

/// Product of two basis blades. Units commute and square to -1, so the sign is
/// (-1)^|A ∩ B|.
constexpr BladeProduct blade_mul(BladeIndex a, BladeIndex b) noexcept {
  return {(std::popcount(a & b) & 1) ? -1 : 1, a ^ b};
}

inline void check_order(int order) {
  if (order < 1 || order > kMaxOrder) {
    throw DomainError("multicomplex order must lie in [1, " + std::to_string(kMaxOrder) +
                      "], got " + std::to_string(order));
  }
}

/// Element of C_n stored densely over all 2^n blades.
template <typename Scalar = double>
class Multicomplex {
 public:
  using Coefficients = Vector<Scalar>;

  explicit Multicomplex(int order) : order_(order) {
    check_order(order);
    coeffs_ = Coefficients::Zero(Eigen::Index(1) << order);
  }

  Multicomplex(int order, Coefficients coeffs) : order_(order), coeffs_(std::move(coeffs)) {
    check_order(order);
    if (coeffs_.size() != (Eigen::Index(1) << order)) {
      throw DomainError("coefficient vector of length " + std::to_string(coeffs_.size()) +
                        " does not match order " + std::to_string(order));
    }
  }

  static Multicomplex zero(int order) { return Multicomplex(order); }

  static Multicomplex one(int order) { return blade(0, order); }

  static Multicomplex blade(BladeIndex index, int order, Scalar value = Scalar(1)) {
    Multicomplex r(order);
    if (index >= r.dimension()) {
      throw DomainError("blade index " + std::to_string(index) + " out of range for order " +
                        std::to_string(order));
    }
    r.coeffs_[index] = value;
    return r;
  }

  /// The simple unit i_k, 1 <= k <= order.
  static Multicomplex unit(int k, int order) {
    check_order(order);
    if (k < 1 || k > order) {
      throw DomainError("unit index " + std::to_string(k) + " out of range for order " +
                        std::to_string(order));
    }
    return blade(BladeIndex(1) << (k - 1), order);
  }

  int order() const noexcept { return order_; }
  std::size_t dimension() const noexcept { return std::size_t(coeffs_.size()); }
  const Coefficients& coeffs() const noexcept { return coeffs_; }
  Scalar operator[](BladeIndex b) const { return coeffs_[Eigen::Index(b)]; }

 private:
  int order_;
  Coefficients coeffs_;
};

namespace detail {

template <typename Scalar>
void require_same_order(const Multicomplex<Scalar>& x, const Multicomplex<Scalar>& y) {
  if (x.order() != y.order()) {
    throw OrderMismatch("multicomplex orders differ: " + std::to_string(x.order()) + " vs " +
                        std::to_string(y.order()));
  }
}

}  // namespace detail

/// Ring product. Each output blade sums symmetric pairs x[a]y[b] + x[b]y[a], so
/// mul(x, y) and mul(y, x) are bitwise identical.
template <typename Scalar>
Multicomplex<Scalar> mul(const Multicomplex<Scalar>& x, const Multicomplex<Scalar>& y) {
  detail::require_same_order(x, y);
  const auto n = BladeIndex(x.dimension());
  typename Multicomplex<Scalar>::Coefficients out(n);
  for (BladeIndex c = 0; c < n; ++c) {
    Scalar acc(0);
    for (BladeIndex a = 0; a < n; ++a) {
      const BladeIndex b = a ^ c;
      if (b < a) continue;
      const Scalar sign = Scalar(blade_mul(a, b).sign);
      if (a == b) {
        acc += sign * x[a] * y[a];
      } else {
        acc += sign * (x[a] * y[b] + x[b] * y[a]);
      }
    }
    out[c] = acc;
  }
  return Multicomplex<Scalar>(x.order(), std::move(out));
}

template <typename Scalar>
Multicomplex<Scalar> operator*(const Multicomplex<Scalar>& x, const Multicomplex<Scalar>& y) {
  return mul(x, y);
}

template <typename Scalar>
Multicomplex<Scalar> operator*(Scalar s, const Multicomplex<Scalar>& x) {
  return Multicomplex<Scalar>(x.order(), s * x.coeffs());
}

template <typename Scalar>
Multicomplex<Scalar> operator+(const Multicomplex<Scalar>& x, const Multicomplex<Scalar>& y) {
  detail::require_same_order(x, y);
  return Multicomplex<Scalar>(x.order(), x.coeffs() + y.coeffs());
}

template <typename Scalar>
Multicomplex<Scalar> operator-(const Multicomplex<Scalar>& x, const Multicomplex<Scalar>& y) {
  detail::require_same_order(x, y);
  return Multicomplex<Scalar>(x.order(), x.coeffs() - y.coeffs());
}

/// Euclidean inner product of the coefficient vectors in R^(2^n).
template <typename Scalar>
Scalar inner_product(const Multicomplex<Scalar>& x, const Multicomplex<Scalar>& y) {
  detail::require_same_order(x, y);
  return x.coeffs().dot(y.coeffs());
}

template <typename Scalar>
Scalar norm(const Multicomplex<Scalar>& x) {
  return x.coeffs().norm();
}

/// e^{i_k θ} = cos θ + i_k sin θ.
template <typename Scalar>
Multicomplex<Scalar> exp_simple(int k, Scalar theta, int order) {
  using std::cos;
  using std::sin;
  Multicomplex<Scalar> u = Multicomplex<Scalar>::unit(k, order);
  typename Multicomplex<Scalar>::Coefficients c = u.coeffs() * sin(theta);
  c[0] = cos(theta);
  return Multicomplex<Scalar>(order, std::move(c));
}

/// Angles (θ_1, ..., θ_n) of a rotor ∏ e^{i_k θ_k} with θ_1 in [0, 2π) and
/// θ_k in [0, π) for k >= 2. Construction rejects angles outside those domains.
template <typename Scalar = double>
class RotorAngles {
 public:
  using Angles = Vector<Scalar>;

  explicit RotorAngles(Angles theta) : theta_(std::move(theta)) {
    check_order(int(theta_.size()));
    for (Eigen::Index i = 0; i < theta_.size(); ++i) {
      const Scalar upper = (i == 0) ? kTwoPi<Scalar> : kPi<Scalar>;
      if (!(theta_[i] >= Scalar(0) && theta_[i] < upper)) {
        throw DomainError("rotor angle theta" + std::to_string(i + 1) + " = " +
                          std::to_string(double(theta_[i])) + " outside " +
                          (i == 0 ? "[0, 2pi)" : "[0, pi)"));
      }
    }
  }

  RotorAngles(std::initializer_list<Scalar> theta) : RotorAngles(from_list(theta)) {}

  /// Brings arbitrary angles into the rotor domain without changing the rotor:
  /// every angle is wrapped into [0, 2π), then each θ_k ≥ π (k ≥ 2) drops by π
  /// and θ_1 absorbs the resulting sign, since e^{i(θ+π)} = -e^{iθ}.
  static RotorAngles canonical(Angles theta) {
    check_order(int(theta.size()));
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      if (!std::isfinite(double(theta[i]))) throw DomainError("non-finite rotor angle");
      theta[i] = wrap_two_pi(theta[i]);
    }
    for (Eigen::Index i = 1; i < theta.size(); ++i) {
      if (theta[i] >= kPi<Scalar>) {
        theta[i] -= kPi<Scalar>;
        theta[0] = wrap_two_pi(theta[0] + kPi<Scalar>);
      }
    }
    return RotorAngles(std::move(theta));
  }

  int order() const noexcept { return int(theta_.size()); }
  const Angles& theta() const noexcept { return theta_; }
  /// θ_k with 1-based k.
  Scalar angle(int k) const { return theta_[k - 1]; }

 private:
  static Angles from_list(std::initializer_list<Scalar> theta) {
    Angles a(Eigen::Index(theta.size()));
    Eigen::Index i = 0;
    for (Scalar t : theta) a[i++] = t;
    return a;
  }

  Angles theta_;
};

namespace detail {

// x · e^{i_k θ}: only blades b and b ^ 2^(k-1) mix.
template <typename Scalar>
void apply_simple_rotor(Vector<Scalar>& x, int k, Scalar theta) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(theta);
  const Scalar s = sin(theta);
  const BladeIndex u = BladeIndex(1) << (k - 1);
  const auto n = BladeIndex(x.size());
  for (BladeIndex b = 0; b < n; ++b) {
    if (b & u) continue;
    const Scalar lo = x[b];
    const Scalar hi = x[b | u];
    x[b] = c * lo - s * hi;
    x[b | u] = c * hi + s * lo;
  }
}

}  // namespace detail

/// ∏_k e^{i_k θ_k}, a unit element of C_n.
template <typename Scalar>
Multicomplex<Scalar> rotor_product(const RotorAngles<Scalar>& angles) {
  const int n = angles.order();
  typename Multicomplex<Scalar>::Coefficients x = Multicomplex<Scalar>::one(n).coeffs();
  for (int k = 1; k <= n; ++k) detail::apply_simple_rotor(x, k, angles.angle(k));
  return Multicomplex<Scalar>(n, std::move(x));
}

/// Right-hand side of the expanded rotor identity,
///   ∏ cos θ_k + Σ_k i_k sin θ_k ∏_{l>k} cos θ_l ∏_{m<k} e^{i_m θ_m},
/// evaluated term by term with general ring products.
template <typename Scalar>
Multicomplex<Scalar> closed_form_expansion(const RotorAngles<Scalar>& angles) {
  using std::cos;
  using std::sin;
  const int n = angles.order();

  Scalar all_cos(1);
  for (int k = 1; k <= n; ++k) all_cos *= cos(angles.angle(k));
  Multicomplex<Scalar> sum = Multicomplex<Scalar>::blade(0, n, all_cos);

  Multicomplex<Scalar> leading = Multicomplex<Scalar>::one(n);  // ∏_{m<k} e^{i_m θ_m}
  for (int k = 1; k <= n; ++k) {
    Scalar scale = sin(angles.angle(k));
    for (int l = k + 1; l <= n; ++l) scale *= cos(angles.angle(l));
    sum = sum + scale * mul(Multicomplex<Scalar>::unit(k, n), leading);
    leading = mul(leading, exp_simple(k, angles.angle(k), n));
  }
  return sum;
}

}  // namespace lgfib
