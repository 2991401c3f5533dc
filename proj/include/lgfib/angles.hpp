#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>

namespace lgfib {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Default absolute tolerance for floating comparisons and kernel bands.
inline constexpr double kDefaultTolerance = 1e-9;

/// Largest supported multicomplex order (2^20 coefficients).
inline constexpr int kMaxOrder = 20;

template <typename Scalar>
inline constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

template <typename Scalar>
inline constexpr Scalar kTwoPi = Scalar(2) * std::numbers::pi_v<Scalar>;

/// Reduces an angle into [0, 2π).
template <typename Scalar>
Scalar wrap_two_pi(Scalar theta) {
  using std::fmod;
  Scalar r = fmod(theta, kTwoPi<Scalar>);
  if (r < Scalar(0)) r += kTwoPi<Scalar>;
  if (r >= kTwoPi<Scalar> || r == Scalar(0)) r = Scalar(0);
  return r;
}

/// Number of whole half turns, (θ − (θ mod π)) / π.
template <typename Scalar>
long half_turns(Scalar theta) {
  using std::fmod;
  return std::lround((theta - fmod(theta, kPi<Scalar>)) / kPi<Scalar>);
}

/// (−1)^((θ − (θ mod π)) / π): +1 on [0, π), −1 on [π, 2π).
template <typename Scalar>
Scalar half_turn_sign(Scalar theta) {
  return (half_turns(theta) % 2 == 0) ? Scalar(1) : Scalar(-1);
}

/// Largest representable value strictly below π, used to clamp open upper bounds.
template <typename Scalar>
Scalar below_pi() {
  return std::nextafter(kPi<Scalar>, Scalar(0));
}

/// Unsigned distance between two angles measured along the circle.
template <typename Scalar>
Scalar circular_distance(Scalar a, Scalar b) {
  Scalar d = wrap_two_pi(a - b);
  return d > kPi<Scalar> ? kTwoPi<Scalar> - d : d;
}

}  // namespace lgfib
