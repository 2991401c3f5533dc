#pragma once

// Reference implementations written independently of the library, and the
// random generators used by the property tests.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <vector>

namespace oracle {

constexpr double pi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Generators

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) {
    const double u = double(rng_() >> 11) * 0x1.0p-53;
    const double v = lo + (hi - lo) * u;
    return v < hi ? v : std::nextafter(hi, lo);
  }

  int integer(int lo, int hi) { return lo + int(rng_() % std::uint64_t(hi - lo + 1)); }

  /// θ_1 in [0, 2π), θ_k in [0, π).
  Eigen::VectorXd rotor(int n) {
    Eigen::VectorXd t(n);
    t[0] = uniform(0, 2 * pi);
    for (int k = 1; k < n; ++k) t[k] = uniform(0, pi);
    return t;
  }

  /// Rotor angles with every θ_k (k >= 2) farther than margin from π/2.
  Eigen::VectorXd rotor_off_kernel(int n, double margin) {
    while (true) {
      Eigen::VectorXd t = rotor(n);
      bool ok = true;
      for (int k = 1; k < n; ++k) ok = ok && std::abs(t[k] - pi / 2) > margin;
      if (ok) return t;
    }
  }

  Eigen::VectorXd coefficients(int n) {
    Eigen::VectorXd c(1 << n);
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = uniform(-1, 1);
    return c;
  }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Multicomplex arithmetic by explicit unit lists

/// Multiplies two blades by listing their units and cancelling repeated ones,
/// each cancellation contributing i_k^2 = -1.
inline std::pair<int, unsigned> blade_product(unsigned a, unsigned b) {
  std::multiset<int> units;
  for (int k = 0; k < 32; ++k) {
    if (a >> k & 1u) units.insert(k);
    if (b >> k & 1u) units.insert(k);
  }
  int sign = 1;
  unsigned blade = 0;
  for (int k = 0; k < 32; ++k) {
    const auto c = units.count(k);
    if (c == 2) sign = -sign;
    if (c == 1) blade |= 1u << k;
  }
  return {sign, blade};
}

/// Plain double loop over all blade pairs with nonzero coefficients.
inline Eigen::VectorXd multiply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  for (unsigned a = 0; a < unsigned(x.size()); ++a) {
    if (x[a] == 0) continue;
    for (unsigned b = 0; b < unsigned(y.size()); ++b) {
      if (y[b] == 0) continue;
      const auto [sign, c] = blade_product(a, b);
      out[c] += sign * x[a] * y[b];
    }
  }
  return out;
}

/// ∏ (cos θ_k + i_k sin θ_k) by repeated general multiplication.
inline Eigen::VectorXd rotor(const Eigen::VectorXd& theta) {
  const int n = int(theta.size());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(1 << n);
  acc[0] = 1;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(1 << n);
    f[0] = std::cos(theta[k]);
    f[1 << k] = std::sin(theta[k]);
    acc = multiply(acc, f);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Polyspherical points

/// Order-2 particular orientation written out by hand.
inline Eigen::Vector4d sphere3(double t1, double t2, double t3) {
  return {std::cos(t1) * std::cos(t3), std::sin(t1) * std::cos(t3), std::cos(t2) * std::sin(t3),
          std::sin(t2) * std::sin(t3)};
}

/// Order-3 particular orientation written out by hand.
inline Eigen::Matrix<double, 8, 1> sphere7(const Eigen::VectorXd& t) {
  const double c3 = std::cos(t[2]), s3 = std::sin(t[2]), c6 = std::cos(t[5]), s6 = std::sin(t[5]);
  const double c7 = std::cos(t[6]), s7 = std::sin(t[6]);
  Eigen::Matrix<double, 8, 1> x;
  x << std::cos(t[0]) * c3 * c7, std::sin(t[0]) * c3 * c7, std::cos(t[1]) * s3 * c7,
      std::sin(t[1]) * s3 * c7, std::cos(t[3]) * c6 * s7, std::sin(t[3]) * c6 * s7,
      std::cos(t[4]) * s6 * s7, std::sin(t[4]) * s6 * s7;
  return x;
}

// ---------------------------------------------------------------------------
// Index partition by direct set recursion

inline std::set<int> theta_set(int m, int l) {
  if (l == 0) return {(1 << m) - 1};
  std::set<int> prev = theta_set(m, l - 1);
  std::set<int> out = prev;
  for (int k : prev) out.insert(k + (1 << (m + l - 1)) - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Projection

/// (-1)^floor(θ/π)
inline double floor_sign(double theta) {
  return (static_cast<long long>(std::floor(theta / pi)) % 2 == 0) ? 1.0 : -1.0;
}

/// Projection with the sign products taken literally from floor(θ_m / π).
inline Eigen::VectorXd project(const Eigen::VectorXd& theta) {
  const int n = int(theta.size());
  Eigen::VectorXd p(n + 1);
  double all = 1;
  for (int k = 0; k < n; ++k) all *= std::cos(theta[k]);
  p[0] = all;
  for (int k = 0; k < n; ++k) {
    double v = std::sin(theta[k]);
    for (int l = k + 1; l < n; ++l) v *= std::cos(theta[l]);
    for (int m = 0; m < k; ++m) v *= floor_sign(theta[m]);
    p[k + 1] = v;
  }
  return p;
}

/// Torus parameterization written out term by term; radii[k-2] = a_k.
inline Eigen::VectorXd torus(const Eigen::VectorXd& theta, const Eigen::VectorXd& radii) {
  const int n = int(theta.size());
  auto ring = [&](int from) {  // ∏_{l >= from} (a_l + cos θ_l), 1-based
    double r = 1;
    for (int l = from; l <= n; ++l) r *= radii[l - 2] + std::cos(theta[l - 1]);
    return r;
  };
  Eigen::VectorXd x(n + 1);
  x[0] = std::cos(theta[0]) * ring(2);
  x[1] = std::sin(theta[0]) * ring(2);
  for (int k = 2; k <= n; ++k) x[k] = floor_sign(theta[0]) * std::sin(theta[k - 1]) * ring(k + 1);
  return x;
}

/// Smallest distance between two angles around the circle.
inline double angle_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2 * pi);
  return std::min(d, 2 * pi - d);
}

}  // namespace oracle
