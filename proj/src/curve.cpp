#include <lgfib/curve.hpp>

#include <lgfib/angles.hpp>
#include <lgfib/errors.hpp>
#include <lgfib/fibration.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace lgfib {

namespace {

constexpr double kLobeTolerance = 0.1;
constexpr double kJumpFactor = 10.0;

}  // namespace

void validate(const CurveParams& params) {
  if (params.a < 1) throw DomainError("curve multiplier a must be >= 1, got " + std::to_string(params.a));
  if (params.samples < 2) {
    throw DomainError("curve needs at least 2 samples, got " + std::to_string(params.samples));
  }
}

std::vector<CurvePoint> sample_curve(const CurveParams& params) {
  validate(params);
  std::vector<CurvePoint> out(std::size_t(params.samples));
  Vector<double> theta(2);
  for (int i = 0; i < params.samples; ++i) {
    CurvePoint& p = out[std::size_t(i)];
    p.theta = kTwoPi<double> * double(i) / double(params.samples);
    theta << p.theta, double(params.a) * p.theta;
    p.projected = lg_projection(theta);
    p.plain = {std::cos(theta[0]) * std::cos(theta[1]), std::sin(theta[0]) * std::cos(theta[1]),
               std::sin(theta[1])};
  }
  return out;
}

int count_petals(const std::vector<CurvePoint>& curve) {
  const std::size_t n = curve.size();
  std::vector<int> sign(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CurvePoint& p = curve[i];
    const double r = p.projected.x() * std::cos(p.theta) + p.projected.y() * std::sin(p.theta);
    sign[i] = r > 0 ? 1 : (r < 0 ? -1 : 0);
  }

  // Arcs of constant nonzero sign, accumulated as direction sums.
  struct Arc {
    int sign;
    Eigen::Vector2d sum;
  };
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    if (sign[i] == 0) continue;
    const Eigen::Vector2d xy = curve[i].projected.head<2>();
    if (arcs.empty() || arcs.back().sign != sign[i] || (i > 0 && sign[i - 1] == 0)) {
      arcs.push_back({sign[i], xy});
    } else {
      arcs.back().sum += xy;
    }
  }
  // The first and last arcs are one arc when the trace wraps without a crossing.
  if (arcs.size() > 1 && arcs.front().sign == arcs.back().sign && sign.front() != 0 &&
      sign.back() != 0) {
    arcs.front().sum += arcs.back().sum;
    arcs.pop_back();
  }

  std::vector<double> lobes;
  for (const Arc& arc : arcs) {
    const double dir = std::atan2(arc.sum.y(), arc.sum.x());
    const bool seen = std::any_of(lobes.begin(), lobes.end(), [&](double d) {
      return circular_distance(d, dir) <= kLobeTolerance;
    });
    if (!seen) lobes.push_back(dir);
  }
  return int(lobes.size());
}

std::vector<Kink> non_differentiable_points(const std::vector<CurvePoint>& curve) {
  const std::size_t n = curve.size();
  if (n < 3) return {};
  const double h = kTwoPi<double> / double(n);

  // Forward slopes, cyclic: slope[i] covers samples i -> i+1.
  std::vector<double> slope(n);
  for (std::size_t i = 0; i < n; ++i) {
    slope[i] = (curve[(i + 1) % n].projected.z() - curve[i].projected.z()) / h;
  }
  // jump[i] is the slope change at sample i.
  std::vector<double> jump(n);
  for (std::size_t i = 0; i < n; ++i) jump[i] = std::abs(slope[i] - slope[(i + n - 1) % n]);

  std::vector<double> sorted = jump;
  std::nth_element(sorted.begin(), sorted.begin() + std::ptrdiff_t(n / 2), sorted.end());
  const double threshold = kJumpFactor * sorted[n / 2];

  std::vector<bool> flagged(n);
  for (std::size_t i = 0; i < n; ++i) flagged[i] = jump[i] > threshold;
  if (std::all_of(flagged.begin(), flagged.end(), [](bool f) { return f; })) return {};

  // Start scanning just after an unflagged sample so no run straddles the seam.
  std::size_t start = 0;
  while (flagged[start]) ++start;

  std::vector<Kink> runs;
  std::size_t best = n;
  for (std::size_t step = 1; step <= n; ++step) {
    const std::size_t i = (start + step) % n;
    if (flagged[i]) {
      if (best == n || jump[i] > jump[best]) best = i;
    } else if (best != n) {
      runs.push_back({curve[best].theta, curve[best].projected});
      best = n;
    }
  }

  // Largest step between consecutive samples bounds how far apart two samples
  // of one kink can be.
  double spacing = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    spacing = std::max(spacing, (curve[(i + 1) % n].projected - curve[i].projected).norm());
  }
  std::vector<Kink> kinks;
  for (const Kink& k : runs) {
    const bool seen = std::any_of(kinks.begin(), kinks.end(), [&](const Kink& other) {
      return (other.point - k.point).norm() <= 2.0 * spacing;
    });
    if (!seen) kinks.push_back(k);
  }
  return kinks;
}

}  // namespace lgfib
