#include <lgfib/commands.hpp>

#include <lgfib/curve.hpp>
#include <lgfib/errors.hpp>
#include <lgfib/fibration.hpp>
#include <lgfib/metrics.hpp>
#include <lgfib/polysphere.hpp>
#include <lgfib/verify.hpp>

#include <bit>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace lgfib {

namespace {

constexpr int kDefaultVerifyOrder = 6;
constexpr int kDefaultScanOrder = 2;

int fail(std::ostream& err, int code, const std::string& message) {
  err << "lgfib: " << message << '\n';
  return code;
}

/// Checks the settings shared by every subcommand; returns an empty string when valid.
std::string config_problem(const RunConfig& config) {
  if (!(config.tolerance > 0)) return "--tol must be positive";
  if (config.order && (*config.order < 1 || *config.order > kMaxOrder)) {
    return "--order must lie in [1, " + std::to_string(kMaxOrder) + "]";
  }
  return {};
}

Vector<double> to_vector(const std::vector<double>& values) {
  return Eigen::Map<const Vector<double>>(values.data(), Eigen::Index(values.size()));
}

std::vector<std::string> numbered(const std::string& stem, int first, int last) {
  std::vector<std::string> names;
  for (int i = first; i <= last; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

enum class InputKind { kAngles, kCoordinates };

struct ProjectShape {
  int order;
  InputKind kind;
};

// 2^n - 1 columns are angles, 2^n columns are coordinates.
std::optional<ProjectShape> project_shape(std::size_t columns, std::optional<int> order) {
  if (order) {
    const std::size_t dim = std::size_t(1) << *order;
    if (columns == dim - 1) return ProjectShape{*order, InputKind::kAngles};
    if (columns == dim) return ProjectShape{*order, InputKind::kCoordinates};
    return std::nullopt;
  }
  if (columns == 0) return std::nullopt;
  if (std::has_single_bit(columns + 1)) {
    const int n = std::countr_zero(columns + 1);
    if (n <= kMaxOrder) return ProjectShape{n, InputKind::kAngles};
  }
  if (std::has_single_bit(columns)) {
    const int n = std::countr_zero(columns);
    if (n >= 1 && n <= kMaxOrder) return ProjectShape{n, InputKind::kCoordinates};
  }
  return std::nullopt;
}

}  // namespace

int cmd_project(std::istream& in, std::ostream& out, std::ostream& err, const RunConfig& config) {
  if (auto problem = config_problem(config); !problem.empty()) {
    return fail(err, kExitConfigError, problem);
  }
  std::vector<InputRecord> records;
  try {
    records = read_records(in);
  } catch (const ParseError& e) {
    return fail(err, kExitInputError, e.what());
  }

  std::optional<int> order = config.order;
  Table table;
  for (const InputRecord& rec : records) {
    const std::string where = "line " + std::to_string(rec.line) + ": ";
    const auto shape = project_shape(rec.values.size(), order);
    if (!shape) {
      return fail(err, kExitInputError,
                  where + std::to_string(rec.values.size()) + " columns match neither " +
                      (order ? "2^n - 1 angles nor 2^n coordinates for order " + std::to_string(*order)
                             : std::string("2^n - 1 angles nor 2^n coordinates")));
    }
    order = shape->order;
    if (table.columns.empty()) {
      table.columns = numbered("e", 0, shape->order);
      table.columns.push_back("status");
    }
    try {
      const Vector<double> values = to_vector(rec.values);
      const SphereAngles<double> angles =
          shape->kind == InputKind::kAngles ? SphereAngles<double>(shape->order, values)
                                            : recover_sphere_angles(shape->order, values, config.tolerance);
      const RotorAngles<double> rotor = contract(angles);
      const Vector<double> p = lg_projection(rotor.theta());
      std::vector<Cell> row(p.data(), p.data() + p.size());
      row.emplace_back(std::string(kernel_check(rotor, config.tolerance).is_kernel ? "kernel-proximate"
                                                                                   : "ok"));
      table.rows.push_back(std::move(row));
    } catch (const Error& e) {
      return fail(err, kExitInputError, where + e.what());
    }
  }
  if (table.columns.empty() && order) {
    table.columns = numbered("e", 0, *order);
    table.columns.push_back("status");
  }
  write_table(out, table, config.format);
  return kExitOk;
}

int cmd_invert(std::istream& in, std::ostream& out, std::ostream& err, const RunConfig& config) {
  if (auto problem = config_problem(config); !problem.empty()) {
    return fail(err, kExitConfigError, problem);
  }
  std::vector<InputRecord> records;
  try {
    records = read_records(in);
  } catch (const ParseError& e) {
    return fail(err, kExitInputError, e.what());
  }

  std::optional<int> order = config.order;
  std::vector<std::vector<Cell>> rows;
  for (const InputRecord& rec : records) {
    const int n = int(rec.values.size()) - 1;
    if (order ? n != *order : (n < 1 || n > kMaxOrder)) {
      return fail(err, kExitInputError,
                  "line " + std::to_string(rec.line) + ": expected " +
                      (order ? std::to_string(*order + 1) : std::string("between 2 and ") +
                                                                std::to_string(kMaxOrder + 1)) +
                      " coordinates, got " + std::to_string(rec.values.size()));
    }
    order = n;
    std::vector<Cell> row(static_cast<std::size_t>(n));
    std::string status = "ok";
    try {
      const RotorAngles<double> r = invert_projection(to_vector(rec.values), config.tolerance);
      for (int k = 0; k < n; ++k) row[std::size_t(k)] = r.theta()[k];
    } catch (const KernelAmbiguity&) {
      status = "kernel-ambiguous";
    } catch (const NonUnitInput&) {
      status = "non-unit";
    }
    row.emplace_back(std::move(status));
    rows.push_back(std::move(row));
  }

  Table table;
  if (order) {
    table.columns = numbered("theta", 1, *order);
    table.columns.push_back("status");
  }
  table.rows = std::move(rows);
  write_table(out, table, config.format);
  return kExitOk;
}

int cmd_verify(std::ostream& out, std::ostream& err, const RunConfig& config) {
  if (!(config.tolerance > 0)) return fail(err, kExitConfigError, "--tol must be positive");
  VerifyConfig vc;
  vc.max_order = config.order.value_or(kDefaultVerifyOrder);
  vc.tolerance = config.tolerance;
  vc.seed = config.seed;
  vc.samples = config.verify_samples;
  VerifyReport report;
  try {
    report = run_verify(vc);
  } catch (const DomainError& e) {
    return fail(err, kExitConfigError, e.what());
  }
  write_table(out, report_table(report, vc), config.format);
  return report.passed() ? kExitOk : kExitVerificationFailure;
}

int cmd_curve(std::ostream& out, std::ostream& err, const RunConfig& config) {
  const CurveParams params{config.a, config.samples};
  std::vector<CurvePoint> curve;
  try {
    curve = sample_curve(params);
  } catch (const DomainError& e) {
    return fail(err, kExitConfigError, e.what());
  }
  Table table;
  table.columns = {"theta1", "x_prime", "y_prime", "z_prime", "x", "y", "z"};
  for (const CurvePoint& p : curve) {
    table.rows.push_back({p.theta, p.projected.x(), p.projected.y(), p.projected.z(), p.plain.x(),
                          p.plain.y(), p.plain.z()});
  }
  table.summary = {{"a", std::int64_t(params.a)},
                   {"samples", std::int64_t(params.samples)},
                   {"petals", std::int64_t(count_petals(curve))},
                   {"non_differentiable_points", std::int64_t(non_differentiable_points(curve).size())}};
  write_table(out, table, config.format);
  return kExitOk;
}

int cmd_scan(std::ostream& out, std::ostream& err, const RunConfig& config) {
  if (auto problem = config_problem(config); !problem.empty()) {
    return fail(err, kExitConfigError, problem);
  }
  ScanOptions options;
  options.order = config.order.value_or(kDefaultScanOrder);
  options.resolution = config.resolution;
  options.tolerance = config.tolerance;
  options.max_evaluations = config.max_evaluations;
  try {
    scan_size(options);
  } catch (const Error& e) {
    return fail(err, kExitConfigError, e.what());
  }

  std::vector<std::string> columns = numbered("alpha", 1, options.order);
  for (auto& name : numbered("beta", 1, options.order)) columns.push_back(std::move(name));
  columns.push_back("difference");
  columns.push_back("invariant");
  TableWriter writer(out, columns, config.format);

  DifferenceScan scan;
  std::vector<Cell> row;
  for_each_grid_pair(options, [&](const AnglePair<double>& pair, double d) {
    ++scan.count;
    const bool invariant = d <= options.tolerance;
    if (invariant) ++scan.invariant_count;
    scan.min = std::min(scan.min, d);
    scan.max = std::max(scan.max, d);
    row.clear();
    for (int k = 1; k <= options.order; ++k) row.emplace_back(pair.alpha().angle(k));
    for (int k = 1; k <= options.order; ++k) row.emplace_back(pair.beta().angle(k));
    row.emplace_back(d);
    row.emplace_back(std::int64_t(invariant ? 1 : 0));
    writer.row(row);
  });
  writer.finish({{"order", std::int64_t(options.order)},
                 {"resolution", std::int64_t(options.resolution)},
                 {"count", std::int64_t(scan.count)},
                 {"min", scan.min},
                 {"max", scan.max},
                 {"invariant_count", std::int64_t(scan.invariant_count)},
                 {"invariant_fraction", scan.invariant_fraction()}});
  return kExitOk;
}

}  // namespace lgfib
