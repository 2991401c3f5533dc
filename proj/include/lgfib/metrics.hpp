#pragma once

// Inner products before and after projection and the difference function
//
//   D(α, β) = | ∏ cos(α_k - β_k) - <P(α), P(β)> |

#include <lgfib/angles.hpp>
#include <lgfib/errors.hpp>
#include <lgfib/fibration.hpp>
#include <lgfib/multicomplex.hpp>

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace lgfib {

template <typename Scalar = double>
class AnglePair {
 public:
  AnglePair(RotorAngles<Scalar> alpha, RotorAngles<Scalar> beta)
      : alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (alpha_.order() != beta_.order()) {
      throw OrderMismatch("angle pair orders differ: " + std::to_string(alpha_.order()) + " vs " +
                          std::to_string(beta_.order()));
    }
  }

  int order() const noexcept { return alpha_.order(); }
  const RotorAngles<Scalar>& alpha() const noexcept { return alpha_; }
  const RotorAngles<Scalar>& beta() const noexcept { return beta_; }

 private:
  RotorAngles<Scalar> alpha_;
  RotorAngles<Scalar> beta_;
};

/// ∏ cos(α_k - β_k), the inner product of the two rotors in R^(2^n).
template <typename Scalar>
Scalar rotor_inner(const AnglePair<Scalar>& pair) {
  using std::cos;
  Scalar r(1);
  for (int k = 1; k <= pair.order(); ++k) r *= cos(pair.alpha().angle(k) - pair.beta().angle(k));
  return r;
}

/// <P(α), P(β)> written as 1 - |P(α) - P(β)|² / 2, which is symmetric in its
/// arguments bit for bit and exactly 1 on the diagonal.
template <typename Scalar>
Scalar projected_inner(const AnglePair<Scalar>& pair) {
  const Vector<Scalar> pa = lg_projection(pair.alpha().theta());
  const Vector<Scalar> pb = lg_projection(pair.beta().theta());
  return Scalar(1) - (pa - pb).squaredNorm() / Scalar(2);
}

template <typename Scalar>
Scalar difference(const AnglePair<Scalar>& pair) {
  using std::abs;
  return abs(rotor_inner(pair) - projected_inner(pair));
}

/// (-1)^{(α_1 + β_1 - α_1 mod π - β_1 mod π)/π}
template <typename Scalar>
Scalar leading_sign_factor(const AnglePair<Scalar>& pair) {
  const long turns = half_turns(pair.alpha().angle(1)) + half_turns(pair.beta().angle(1));
  return turns % 2 == 0 ? Scalar(1) : Scalar(-1);
}

/// |sin α_2 sin β_2 (cos(α_1 - β_1) - (-1)^(⌊α_1/π⌋ + ⌊β_1/π⌋))|, the reduced form of D for n = 2.
template <typename Scalar>
Scalar closed_form_difference_n2(const AnglePair<Scalar>& pair) {
  using std::abs;
  using std::cos;
  using std::sin;
  if (pair.order() != 2) {
    throw DomainError("closed-form difference needs order 2, got " + std::to_string(pair.order()));
  }
  const auto& a = pair.alpha();
  const auto& b = pair.beta();
  return abs(sin(a.angle(2)) * sin(b.angle(2)) * (cos(a.angle(1) - b.angle(1)) - leading_sign_factor(pair)));
}

template <typename Scalar>
bool is_invariant_pair(const AnglePair<Scalar>& pair, Scalar tol = Scalar(kDefaultTolerance)) {
  return difference(pair) <= tol;
}

struct ScanSample {
  Vector<double> alpha;
  Vector<double> beta;
  double difference = 0.0;
};

struct DifferenceScan {
  int order = 0;
  int resolution = 0;
  double tolerance = kDefaultTolerance;
  std::vector<ScanSample> samples;
  std::uint64_t count = 0;
  std::uint64_t invariant_count = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  double invariant_fraction() const {
    return count == 0 ? 0.0 : double(invariant_count) / double(count);
  }
};

struct ScanOptions {
  int order = 2;
  int resolution = 4;
  double tolerance = kDefaultTolerance;
  /// Largest number of pairs a scan may visit.
  std::uint64_t max_evaluations = 100'000'000;
};

/// Grid value j of rotor angle k (1-based): cell centres of [0, 2π) for k = 1
/// and of [0, π) otherwise, so no sample sits on 0, π/2 or π.
inline double grid_angle(int k, int j, int resolution) {
  const double span = k == 1 ? kTwoPi<double> : kPi<double>;
  return (double(j) + 0.5) * span / double(resolution);
}

/// Number of pairs visited by a scan, resolution^(2n); throws GridTooLarge above
/// the cap.
inline std::uint64_t scan_size(const ScanOptions& options) {
  check_order(options.order);
  if (options.resolution < 2) {
    throw DomainError("scan resolution must be at least 2, got " + std::to_string(options.resolution));
  }
  const auto cap = options.max_evaluations;
  std::uint64_t total = 1;
  for (int i = 0; i < 2 * options.order; ++i) {
    if (total > cap / std::uint64_t(options.resolution)) {
      throw GridTooLarge("scan of order " + std::to_string(options.order) + " at resolution " +
                         std::to_string(options.resolution) + " exceeds " + std::to_string(cap) +
                         " evaluations");
    }
    total *= std::uint64_t(options.resolution);
  }
  if (total > cap) throw GridTooLarge("scan exceeds " + std::to_string(cap) + " evaluations");
  return total;
}

/// Visits every grid pair in lexicographic order (α_1 slowest, β_n fastest) and
/// calls visit(pair, D).
template <typename Visitor>
void for_each_grid_pair(const ScanOptions& options, Visitor&& visit) {
  scan_size(options);
  const int n = options.order;
  const int res = options.resolution;
  std::vector<int> index(std::size_t(2 * n), 0);
  Vector<double> a(n), b(n);
  while (true) {
    for (int k = 1; k <= n; ++k) {
      a[k - 1] = grid_angle(k, index[std::size_t(k - 1)], res);
      b[k - 1] = grid_angle(k, index[std::size_t(n + k - 1)], res);
    }
    const AnglePair<double> pair{RotorAngles<double>(a), RotorAngles<double>(b)};
    visit(pair, difference(pair));

    int pos = 2 * n - 1;
    while (pos >= 0 && ++index[std::size_t(pos)] == res) index[std::size_t(pos--)] = 0;
    if (pos < 0) break;
  }
}

/// Exhaustive grid scan of D. With keep_samples false only the summary is kept.
inline DifferenceScan scan_difference(const ScanOptions& options, bool keep_samples = true) {
  DifferenceScan scan;
  scan.order = options.order;
  scan.resolution = options.resolution;
  scan.tolerance = options.tolerance;
  if (keep_samples) scan.samples.reserve(std::size_t(scan_size(options)));
  for_each_grid_pair(options, [&](const AnglePair<double>& pair, double d) {
    ++scan.count;
    if (d <= options.tolerance) ++scan.invariant_count;
    if (d < scan.min) scan.min = d;
    if (d > scan.max) scan.max = d;
    if (keep_samples) scan.samples.push_back({pair.alpha().theta(), pair.beta().theta(), d});
  });
  return scan;
}

}  // namespace lgfib
