#include <lgfib/commands.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

int main(int argc, char** argv) {
  using namespace lgfib;

  CLI::App app{"LG fibration S^(2^n-1) -> S^n: projection, inversion, verification and scans"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  int order = 0;
  std::string output;
  std::string input;

  const std::map<std::string, Format> formats{{"csv", Format::kCsv}, {"json", Format::kJson}};
  app.add_option("--order", order, "Order n (sphere S^(2^n-1))")->check(CLI::Range(1, kMaxOrder));
  app.add_option("--tol", config.tolerance, "Absolute tolerance")->capture_default_str();
  app.add_option("--seed", config.seed, "Seed for random draws")->capture_default_str();
  app.add_option("--resolution", config.resolution, "Grid samples per angle (scan)")
      ->capture_default_str();
  app.add_option("--format", config.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->default_str("csv");
  app.add_option("--output", output, "Output file (default stdout)");
  app.add_option("--a", config.a, "Curve multiplier, theta2 = a * theta1")->capture_default_str();
  app.add_option("--samples", config.samples, "Curve samples")->capture_default_str();

  auto* project = app.add_subcommand("project", "Project sphere angles or coordinates onto S^n");
  project->add_option("input", input, "Input CSV (default stdin)");
  auto* invert = app.add_subcommand("invert", "Recover rotor angles from points of S^n");
  invert->add_option("input", input, "Input CSV (default stdin)");
  auto* verify = app.add_subcommand("verify", "Run the property suites");
  auto* curve = app.add_subcommand("curve", "Sample the curve theta2 = a * theta1");
  auto* scan = app.add_subcommand("scan", "Grid scan of the difference function");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  if (app.count("--order")) config.order = order;

  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) {
      std::cerr << "lgfib: cannot open " << output << " for writing\n";
      return kExitConfigError;
    }
  }
  std::ostream& out = output.empty() ? std::cout : file;

  auto with_input = [&](auto command) {
    if (input.empty() || input == "-") return command(std::cin, out, std::cerr, config);
    std::ifstream in(input);
    if (!in) {
      std::cerr << "lgfib: cannot open " << input << '\n';
      return int(kExitInputError);
    }
    return command(in, out, std::cerr, config);
  };

  if (*project) return with_input(cmd_project);
  if (*invert) return with_input(cmd_invert);
  if (*verify) return cmd_verify(out, std::cerr, config);
  if (*curve) return cmd_curve(out, std::cerr, config);
  if (*scan) return cmd_scan(out, std::cerr, config);
  return kExitConfigError;
}
