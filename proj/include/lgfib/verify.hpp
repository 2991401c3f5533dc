#pragma once

// Randomized property suites behind `lgfib verify`.

#include <lgfib/angles.hpp>
#include <lgfib/multicomplex.hpp>
#include <lgfib/records.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace lgfib {

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

/// Uniform in [lo, hi), never returning hi.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double v = lo + (hi - lo) * uniform01(rng);
  return v < hi ? v : std::nextafter(hi, lo);
}

/// Rotor angles drawn uniformly over the rotor domain.
RotorAngles<double> random_rotor(std::mt19937_64& rng, int order);

struct VerifyConfig {
  /// Suites run for orders 2..max_order (the rotor expansion suite from 1, at most 8).
  int max_order = 6;
  /// Upper bound on every suite threshold; each suite uses min(nominal, tolerance).
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 1;
  /// Random draws per order and suite.
  int samples = 1000;
};

/// Largest order verify accepts.
inline constexpr int kMaxVerifyOrder = 16;

struct SuiteResult {
  std::string name;
  int min_order = 0;
  int max_order = 0;
  std::uint64_t samples = 0;
  double max_deviation = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;

  bool passed() const;
};

/// Runs every suite. Throws DomainError for orders outside [2, kMaxVerifyOrder],
/// nonpositive tolerance or sample counts.
VerifyReport run_verify(const VerifyConfig& config);

/// One row per suite plus a summary with the configuration and pass count.
Table report_table(const VerifyReport& report, const VerifyConfig& config);

}  // namespace lgfib
