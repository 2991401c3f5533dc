#include <lgfib/verify.hpp>

#include <lgfib/errors.hpp>
#include <lgfib/fibration.hpp>
#include <lgfib/metrics.hpp>
#include <lgfib/polysphere.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace lgfib {

namespace {

constexpr double kExact = 1e-12;
constexpr double kRoundTrip = 1e-9;
constexpr double kKernelMargin = 1e-6;
constexpr int kMaxExpansionOrder = 8;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Draws per order for suites whose cost grows like 2^n.
int scaled_samples(int samples, int order) {
  const long budget = 1L << 20;
  return int(std::clamp<long>(budget >> order, 10, samples));
}

std::mt19937_64 suite_rng(std::uint64_t seed, std::uint64_t suite, int order) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(suite),
                    std::uint32_t(order)};
  return std::mt19937_64(seq);
}

SphereAngles<double> random_sphere(std::mt19937_64& rng, int order) {
  const auto& domains = sphere_domains(order);
  Vector<double> theta(sphere_angle_count(order));
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    switch (domains[std::size_t(i)]) {
      case AngleDomain::kHalfOpen: theta[i] = uniform(rng, 0.0, kPi<double>); break;
      case AngleDomain::kFullCircle: theta[i] = uniform(rng, 0.0, kTwoPi<double>); break;
      case AngleDomain::kClosedHalf:
        // The closed end gets its own share of draws so the wrap rule is exercised.
        theta[i] = (rng() % 8 == 0) ? kPi<double> : uniform(rng, 0.0, kPi<double>);
        break;
    }
  }
  return SphereAngles<double>(order, std::move(theta));
}

RotorAngles<double> random_off_kernel(std::mt19937_64& rng, int order) {
  while (true) {
    RotorAngles<double> r = random_rotor(rng, order);
    bool near = false;
    for (int k = 2; k <= order; ++k) {
      near = near || std::abs(r.angle(k) - kPi<double> / 2) <= kKernelMargin;
    }
    if (!near) return r;
  }
}

struct Suite {
  std::string name;
  int min_order;
  int max_order;
  double nominal;
  /// Returns the largest deviation over `count` draws for one order.
  std::function<double(std::mt19937_64&, int order, int count)> run;
  /// Draw count for an order.
  std::function<int(int order)> count;
};

double rotor_expansion(std::mt19937_64& rng, int n, int count) {
  double dev = 0;
  for (int i = 0; i < count; ++i) {
    const RotorAngles<double> r = random_rotor(rng, n);
    dev = std::max(dev, (rotor_product(r).coeffs() - closed_form_expansion(r).coeffs())
                            .cwiseAbs()
                            .maxCoeff());
  }
  return dev;
}

double rotor_norm(std::mt19937_64& rng, int n, int count) {
  double dev = 0;
  for (int i = 0; i < count; ++i) {
    dev = std::max(dev, std::abs(norm(rotor_product(random_rotor(rng, n))) - 1.0));
  }
  return dev;
}

double projection_norm(std::mt19937_64& rng, int n, int count) {
  double dev = 0;
  for (int i = 0; i < count; ++i) {
    dev = std::max(dev, std::abs(lg_projection(random_rotor(rng, n).theta()).norm() - 1.0));
  }
  return dev;
}

double sign_reduction(std::mt19937_64& rng, int n, int count) {
  double dev = 0;
  for (int i = 0; i < count; ++i) {
    const RotorAngles<double> r = random_rotor(rng, n);
    dev = std::max(dev, (lg_projection(r.theta()) - project_reduced(r)).cwiseAbs().maxCoeff());
  }
  return dev;
}

double round_trip(std::mt19937_64& rng, int n, int count) {
  double dev = 0;
  for (int i = 0; i < count; ++i) {
    const RotorAngles<double> r = random_off_kernel(rng, n);
    try {
      const RotorAngles<double> back = invert_projection(project(r).coords());
      dev = std::max(dev, circular_distance(back.angle(1), r.angle(1)));
      for (int k = 2; k <= n; ++k) dev = std::max(dev, std::abs(back.angle(k) - r.angle(k)));
    } catch (const Error&) {
      return kInf;
    }
  }
  return dev;
}

double kernel_collapse(std::mt19937_64& rng, int n, int count) {
  double dev = 0;
  for (int i = 0; i < count; ++i) {
    const int k = 2 + int(rng() % std::uint64_t(n - 1));
    Vector<double> theta = random_rotor(rng, n).theta();
    theta[k - 1] = kPi<double> / 2;
    const Vector<double> base = lg_projection(theta);
    if (!kernel_check(RotorAngles<double>(theta)).is_kernel) return kInf;
    // θ_1 keeps its half circle; θ_2..θ_{k-1} are unconstrained.
    const double lo = theta[0] < kPi<double> ? 0.0 : kPi<double>;
    theta[0] = uniform(rng, lo, lo + kPi<double>);
    for (int m = 2; m < k; ++m) theta[m - 1] = uniform(rng, 0.0, kPi<double>);
    dev = std::max(dev, (lg_projection(theta) - base).cwiseAbs().maxCoeff());
  }
  return dev;
}

double diagram(std::mt19937_64& rng, int n, int count) {
  double dev = 0;
  for (int i = 0; i < count; ++i) {
    const RotorAngles<double> r = random_rotor(rng, n);
    Vector<double> radii(n - 1);
    for (Eigen::Index j = 0; j < radii.size(); ++j) radii[j] = 1.0 + 2.0 * uniform01(rng);
    try {
      const Vector<double> via_torus = mu(torus_embed(r, radii)).coords();
      dev = std::max(dev, (via_torus - project(r).coords()).cwiseAbs().maxCoeff());
    } catch (const Error&) {
      return kInf;
    }
  }
  return dev;
}

double contraction(std::mt19937_64& rng, int n, int count) {
  double dev = 0;
  for (int i = 0; i < count; ++i) {
    const SphereAngles<double> s = random_sphere(rng, n);
    const Vector<double> grouped = embed_polyspherical(n, contracted_sphere_angles(s));
    dev = std::max(dev, (grouped - rotor_product(contract(s)).coeffs()).cwiseAbs().maxCoeff());
  }
  return dev;
}

double inner_identity(std::mt19937_64& rng, int n, int count) {
  double dev = 0;
  for (int i = 0; i < count; ++i) {
    const AnglePair<double> pair{random_rotor(rng, n), random_rotor(rng, n)};
    const double direct = inner_product(rotor_product(pair.alpha()), rotor_product(pair.beta()));
    dev = std::max(dev, std::abs(direct - rotor_inner(pair)));
  }
  return dev;
}

double difference_reduction(std::mt19937_64& rng, int, int count) {
  double dev = 0;
  for (int i = 0; i < count; ++i) {
    const AnglePair<double> pair{random_rotor(rng, 2), random_rotor(rng, 2)};
    dev = std::max(dev, std::abs(difference(pair) - closed_form_difference_n2(pair)));
  }
  return dev;
}

double hopf_forms(std::mt19937_64& rng, int, int count) {
  double dev = 0;
  for (int i = 0; i < count; ++i) {
    const double t1 = uniform(rng, 0.0, kTwoPi<double>);
    const double t2 = uniform(rng, 0.0, kTwoPi<double>);
    const double t3 = uniform(rng, 0.0, kPi<double> / 2);
    const Eigen::Vector4d p(std::cos(t1) * std::cos(t3), std::sin(t1) * std::cos(t3),
                            std::cos(t2) * std::sin(t3), std::sin(t2) * std::sin(t3));
    const Eigen::Vector3d h = hopf(p);
    dev = std::max(dev, (h - hopf_polyspherical(t1, t2, t3)).cwiseAbs().maxCoeff());
    dev = std::max(dev, std::abs(h.norm() - 1.0));
  }
  return dev;
}

}  // namespace

RotorAngles<double> random_rotor(std::mt19937_64& rng, int order) {
  Vector<double> theta(order);
  theta[0] = uniform(rng, 0.0, kTwoPi<double>);
  for (int k = 1; k < order; ++k) theta[k] = uniform(rng, 0.0, kPi<double>);
  return RotorAngles<double>(std::move(theta));
}

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

VerifyReport run_verify(const VerifyConfig& config) {
  if (config.max_order < 2 || config.max_order > kMaxVerifyOrder) {
    throw DomainError("verify order must lie in [2, " + std::to_string(kMaxVerifyOrder) + "], got " +
                      std::to_string(config.max_order));
  }
  if (!(config.tolerance > 0)) throw DomainError("tolerance must be positive");
  if (config.samples < 1) throw DomainError("sample count must be positive");

  const int top = config.max_order;
  const int s = config.samples;
  auto flat = [s](int) { return s; };
  auto scaled = [s](int n) { return scaled_samples(s, n); };
  const std::vector<Suite> suites = {
      {"rotor-closed-form", 1, std::min(top, kMaxExpansionOrder), kExact, rotor_expansion,
       [s](int n) { return std::max(10, std::min(s, (1 << 16) >> n)); }},
      {"rotor-norm", 1, top, kExact, rotor_norm, scaled},
      {"projection-norm", 2, top, kExact, projection_norm, flat},
      {"sign-reduction", 2, top, kExact, sign_reduction, flat},
      {"round-trip", 2, top, kRoundTrip, round_trip, flat},
      {"kernel-collapse", 2, top, kExact, kernel_collapse, flat},
      {"diagram-commutativity", 2, top, kExact, diagram, flat},
      {"contraction-consistency", 1, top, kExact, contraction, scaled},
      {"inner-product-identity", 1, top, kExact, inner_identity, scaled},
      {"difference-simplification", 2, 2, kExact, difference_reduction,
       [s](int) { return 10 * s; }},
      {"hopf-forms", 2, 2, kExact, hopf_forms, flat},
  };

  VerifyReport report;
  for (std::size_t id = 0; id < suites.size(); ++id) {
    const Suite& suite = suites[id];
    SuiteResult result;
    result.name = suite.name;
    result.min_order = suite.min_order;
    result.max_order = suite.max_order;
    result.threshold = std::min(suite.nominal, config.tolerance);
    for (int n = suite.min_order; n <= suite.max_order; ++n) {
      std::mt19937_64 rng = suite_rng(config.seed, id, n);
      const int count = suite.count(n);
      result.max_deviation = std::max(result.max_deviation, suite.run(rng, n, count));
      result.samples += std::uint64_t(count);
    }
    result.passed = result.max_deviation <= result.threshold;
    report.suites.push_back(std::move(result));
  }
  return report;
}

Table report_table(const VerifyReport& report, const VerifyConfig& config) {
  Table table;
  table.columns = {"property", "min_order", "max_order", "samples", "max_deviation", "threshold",
                   "status"};
  std::int64_t passed = 0;
  for (const SuiteResult& s : report.suites) {
    passed += s.passed ? 1 : 0;
    table.rows.push_back({s.name, std::int64_t(s.min_order), std::int64_t(s.max_order),
                          std::int64_t(s.samples), s.max_deviation, s.threshold,
                          std::string(s.passed ? "pass" : "fail")});
  }
  table.summary = {{"seed", std::to_string(config.seed)},
                   {"tolerance", config.tolerance},
                   {"max_order", std::int64_t(config.max_order)},
                   {"suites", std::int64_t(report.suites.size())},
                   {"passed", passed},
                   {"failed", std::int64_t(report.suites.size()) - passed},
                   {"result", std::string(report.passed() ? "pass" : "fail")}};
  return table;
}

}  // namespace lgfib
