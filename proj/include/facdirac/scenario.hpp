#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "facdirac/models.hpp"

namespace facdirac {

/// Raised for malformed or inconsistent scenario configs. Front ends map it
/// to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { json, csv };

struct GridSpec {
  std::optional<int> n_points;
  std::optional<double> x_min;
  std::optional<double> x_max;
};

struct ScenarioConfig {
  std::string model_id;
  int n = 0;
  int k_max = 0;
  std::optional<double> m0;
  GridSpec grid;
  std::vector<std::string> checks;  // empty: the default suite
  std::optional<std::string> output_path;
  // Unset: taken from the --out extension, else json (csv for plot data).
  std::optional<OutputFormat> format;
  std::uint64_t seed = 1;
  int test_functions = 20;
  // Amplitude of a deliberate sin(2x) corruption of every superpotential.
  double perturbation = 0.0;

  Model model() const;
  Grid make_grid() const;
};

ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

/// Known verification check ids, sorted.
std::vector<std::string> known_checks();

/// The checks that apply to the config's model and indices.
std::vector<std::string> default_checks(const ScenarioConfig& config);

struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool pass;  // residual < tolerance
  double wall_time_ms = 0.0;
};

struct VerificationReport {
  std::string model_id;
  int n;
  std::uint64_t seed;
  std::vector<CheckResult> checks;  // sorted by name

  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }
};

VerificationReport run_verify(const ScenarioConfig& config);

/// Column-oriented result shared by the spectrum and plot-data exports.
using Cell = std::variant<std::string, int, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// model,n,k,sign,epsilon_analytic,epsilon_numeric,abs_err. With m0 set the
/// massive 4x4 levels follow, under model "<id>+massive".
Table run_spectrum(const ScenarioConfig& config);

/// x followed by psi_n^k for k <= k_max and the real and imaginary parts of
/// both components of every eigenspinor Psi_n^{k,sign} with k <= k_max.
Table run_plotdata(const ScenarioConfig& config);

/// %.17g, with "nan", "inf", "-inf" spelled out.
std::string format_number(double x);

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table, const std::string& command, const ScenarioConfig& config);
void write_csv(std::ostream& out, const VerificationReport& report, bool timings);
void write_json(std::ostream& out, const VerificationReport& report, const ScenarioConfig& config, bool timings);

}  // namespace facdirac
