#pragma once

// Subcommand implementations. Each reads from / writes to the given streams
// and returns the process exit code.

#include <lgfib/angles.hpp>
#include <lgfib/records.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>

namespace lgfib {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitInputError = 2,
  kExitConfigError = 3,
};

struct RunConfig {
  /// When unset, project and invert infer the order from the column count and
  /// verify runs orders 2..6.
  std::optional<int> order;
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 1;
  int resolution = 4;
  Format format = Format::kCsv;
  int a = 1;
  int samples = 3600;
  /// Draws per order for verify.
  int verify_samples = 1000;
  std::uint64_t max_evaluations = 100'000'000;
};

/// Rows of 2^n - 1 sphere angles or 2^n sphere coordinates -> e_0..e_n, status.
int cmd_project(std::istream& in, std::ostream& out, std::ostream& err, const RunConfig& config);

/// Rows of n + 1 coordinates -> theta1..thetan, status (ok, kernel-ambiguous, non-unit).
int cmd_invert(std::istream& in, std::ostream& out, std::ostream& err, const RunConfig& config);

int cmd_verify(std::ostream& out, std::ostream& err, const RunConfig& config);

int cmd_curve(std::ostream& out, std::ostream& err, const RunConfig& config);

int cmd_scan(std::ostream& out, std::ostream& err, const RunConfig& config);

}  // namespace lgfib
