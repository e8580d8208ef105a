#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "facdirac/scenario.hpp"

using namespace facdirac;

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

OutputFormat resolve_format(const ScenarioConfig& config, const std::optional<std::string>& path,
                            OutputFormat fallback) {
  if (config.format) return *config.format;
  if (path && ends_with(*path, ".csv")) return OutputFormat::csv;
  if (path && ends_with(*path, ".json")) return OutputFormat::json;
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac-like hierarchies from shape-invariant factorizations: spectra, identity checks, plot data"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::uint64_t> seed;
  bool timings = false;

  for (const char* name : {"spectrum", "verify", "plotdata"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "scenario config (JSON)")->required();
    sub->add_option("--out", out_path, "output file (default: config output.path, else stdout)");
    sub->add_option("--seed", seed, "seed for the random test functions");
    if (std::string(name) == "verify") sub->add_flag("--timings", timings, "record per-check wall time");
  }
  app.get_subcommand("spectrum")->description("analytic and numeric eigenvalues side by side");
  app.get_subcommand("verify")->description("run the operator-identity checks; exit 1 if any fails");
  app.get_subcommand("plotdata")->description("eigenfunction and eigenspinor samples for plotting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  ScenarioConfig config;
  try {
    config = load_config(config_path);
  } catch (const Error& e) {
    std::cerr << "facdirac: " << e.what() << "\n";
    return 2;
  }
  if (seed) config.seed = *seed;
  if (out_path) config.output_path = out_path;

  std::ofstream file;
  if (config.output_path) {
    file.open(*config.output_path, std::ios::binary);
    if (!file) {
      std::cerr << "facdirac: cannot write \"" << *config.output_path << "\"\n";
      return 2;
    }
  }
  std::ostream& out = config.output_path ? static_cast<std::ostream&>(file) : std::cout;

  try {
    if (command == "verify") {
      const auto report = run_verify(config);
      if (resolve_format(config, config.output_path, OutputFormat::json) == OutputFormat::csv) {
        write_csv(out, report, timings);
      } else {
        write_json(out, report, config, timings);
      }
      for (const auto& c : report.checks) {
        if (!c.pass) std::cerr << "FAIL " << c.name << ": residual " << format_number(c.residual) << " >= "
                               << format_number(c.tolerance) << "\n";
      }
      return report.all_pass() ? 0 : 1;
    }
    const Table table = command == "spectrum" ? run_spectrum(config) : run_plotdata(config);
    const OutputFormat fallback = command == "plotdata" ? OutputFormat::csv : OutputFormat::json;
    if (resolve_format(config, config.output_path, fallback) == OutputFormat::csv) {
      write_csv(out, table);
    } else {
      write_json(out, table, command, config);
    }
  } catch (const Error& e) {
    std::cerr << "facdirac: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
