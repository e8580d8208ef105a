#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "facdirac/scenario.hpp"

using namespace facdirac;

namespace {

std::string verify_json(const ScenarioConfig& c) {
  std::ostringstream out;
  write_json(out, run_verify(c), c, false);
  return out.str();
}

const CheckResult& find_check(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c;
  }
  FAIL("missing check " << name);
  return r.checks.front();
}

std::vector<double> column(const Table& t, const std::string& name) {
  std::size_t idx = 0;
  while (idx < t.columns.size() && t.columns[idx] != name) ++idx;
  REQUIRE(idx < t.columns.size());
  std::vector<double> out;
  for (const auto& row : t.rows) out.push_back(std::get<double>(row[idx]));
  return out;
}

std::multiset<long> scaled_energies(const Table& t, const std::string& model) {
  std::multiset<long> out;
  for (const auto& row : t.rows) {
    if (std::get<std::string>(row[0]) == model) out.insert(std::lround(10.0 * std::get<double>(row[4])));
  }
  return out;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(R"({"model_id": "trig_pt", "n": 1, "k_max": 3, "m0": 0.75,
      "grid": {"n_points": 801}, "checks": ["intertwining"], "output": {"path": "r.csv", "format": "csv"},
      "seed": 18446744073709551615})");
  CHECK(c.model_id == "trig_pt");
  CHECK(c.n == 1);
  CHECK(c.k_max == 3);
  CHECK(*c.m0 == 0.75);
  CHECK(c.make_grid().n_points() == 801);
  CHECK(c.make_grid().x_max() == doctest::Approx(M_PI));
  CHECK(*c.output_path == "r.csv");
  CHECK(*c.format == OutputFormat::csv);
  CHECK(c.seed == 18446744073709551615ULL);
  CHECK(parse_config(R"({"model": "hyp_pt", "n": 2})").model_id == "hyp_pt");

  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config("[]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"n": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model_id": "square_well", "n": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model_id": "hyp_pt", "n": 0})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model_id": "hyp_pt", "n": 2, "m0": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model_id": "trig_pt", "n": 1, "m0": -1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model_id": "trig_pt", "n": 1, "k_max": -1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model_id": "trig_pt", "n": "one"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model_id": "trig_pt", "n": 1, "colour": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model_id": "trig_pt", "n": 1, "grid": {"n_points": 4}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"model_id": "trig_pt", "n": 1, "output": {"format": "xml"}})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("unknown checks are listed") {
  try {
    parse_config(R"({"model_id": "trig_pt", "n": 1, "checks": ["bogus"]})");
    FAIL("expected a config error");
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    for (const auto& name : known_checks()) CHECK(what.find(name) != std::string::npos);
  }
  // Needs a lower neighbour the hyperbolic n = 1 member does not have.
  CHECK_THROWS_AS(parse_config(R"({"model_id": "hyp_pt", "n": 1, "checks": ["intertwining"]})"), ConfigError);
}

TEST_CASE("default suite on trig_pt n=1") {
  const auto c = parse_config(R"({"model_id": "trig_pt", "n": 1, "k_max": 2})");
  const auto report = run_verify(c);
  CHECK(report.checks.size() >= 10);
  CHECK(report.all_pass());
  for (std::size_t i = 1; i < report.checks.size(); ++i) CHECK(report.checks[i - 1].name < report.checks[i].name);
  for (const auto& check : report.checks) CHECK(check.pass == (check.residual < check.tolerance));
}

TEST_CASE("hyperbolic suite and pseudo-Hermiticity") {
  const auto c = parse_config(R"({"model_id": "hyp_pt", "n": 3, "k_max": 2})");
  const auto report = run_verify(c);
  CHECK(report.all_pass());
  CHECK(find_check(report, "pseudo_hermiticity").residual < 1e-10);
  CHECK(report.checks.size() >= 10);
}

TEST_CASE("corrupted superpotential fails the intertwining check") {
  const auto c = parse_config(R"({"model_id": "trig_pt", "n": 1, "perturbation": 0.05,
      "checks": ["intertwining", "factorization"]})");
  const auto report = run_verify(c);
  CHECK_FALSE(find_check(report, "intertwining").pass);
  CHECK(find_check(report, "factorization").pass);
  CHECK(report.failed() == 1);
}

TEST_CASE("reports are deterministic and seed dependent") {
  auto c = parse_config(R"({"model_id": "trig_pt", "n": 1, "k_max": 2, "test_functions": 4,
      "checks": ["intertwining", "reduction_scalar", "factorization"]})");
  const auto first = verify_json(c);
  CHECK(first == verify_json(c));
  CHECK(first.find("\"schema_version\": 1") != std::string::npos);
  CHECK(first.find("wall_time_ms") == std::string::npos);
  c.seed = 99;
  const auto other = verify_json(c);
  CHECK(other != first);
  CHECK(other.find("\"seed\": 99") != std::string::npos);
}

TEST_CASE("spectrum export") {
  const auto trig = run_spectrum(parse_config(R"({"model_id": "trig_pt", "n": 0, "k_max": 2})"));
  CHECK(trig.columns ==
        std::vector<std::string>{"model", "n", "k", "sign", "epsilon_analytic", "epsilon_numeric", "abs_err"});
  CHECK(scaled_energies(trig, "trig_pt") == std::multiset<long>{5, 15, -15, 25, -25});
  for (const auto& row : trig.rows) CHECK(std::get<double>(row[6]) < 1e-3);

  const auto hyp = run_spectrum(parse_config(R"({"model_id": "hyp_pt", "n": 3, "k_max": 2})"));
  CHECK(scaled_energies(hyp, "hyp_pt") == std::multiset<long>{-25, 15, -15, 5, -5});

  const auto massive = run_spectrum(parse_config(R"({"model_id": "trig_pt", "n": 0, "k_max": 0, "m0": 1})"));
  std::vector<double> e;
  for (const auto& row : massive.rows) {
    if (std::get<std::string>(row[0]) == "trig_pt+massive") e.push_back(std::get<double>(row[4]));
  }
  REQUIRE(e.size() == 2);
  CHECK(e[0] == doctest::Approx(-1.11803).epsilon(1e-5));
  CHECK(e[1] == doctest::Approx(1.11803).epsilon(1e-5));
}

TEST_CASE("plot data") {
  const auto trig = run_plotdata(parse_config(R"({"model_id": "trig_pt", "n": 0, "k_max": 1})"));
  const auto x = column(trig, "x");
  const auto psi = column(trig, "psi_n0_k0");
  std::size_t peak = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (psi[i] > psi[peak]) peak = i;
  }
  CHECK(x[peak] == doctest::Approx(M_PI / 2).epsilon(1e-3));
  CHECK(psi[peak] == doctest::Approx(0.70711).epsilon(1e-5));

  // Psi_0^{1+}: definite norm 1 by trapezoidal quadrature.
  const Grid grid = Model::trig_pt().default_grid();
  std::vector<double> density(grid.size(), 0.0);
  for (const char* part : {"_upper_re", "_upper_im", "_lower_re", "_lower_im"}) {
    const auto col = column(trig, std::string("Psi_n0_k1+") + part);
    for (std::size_t i = 0; i < col.size(); ++i) density[i] += col[i] * col[i];
  }
  CHECK(integrate(grid, density) == doctest::Approx(1.0).epsilon(1e-9));

  const auto hyp = run_plotdata(parse_config(R"({"model_id": "hyp_pt", "n": 3, "k_max": 0})"));
  for (double v : column(hyp, "Psi_n3_k0-_upper_re")) CHECK(v == 0.0);
  double lower = 0.0;
  for (double v : column(hyp, "Psi_n3_k0-_lower_re")) lower = std::max(lower, std::abs(v));
  CHECK(lower > 0.1);
}

TEST_CASE("csv quoting and number format") {
  Table t{{"a", "b,c"}, {{std::string("say \"hi\""), 0.1}, {std::string("line\nbreak"), 3}}};
  std::ostringstream out;
  write_csv(out, t);
  CHECK(out.str() == "a,\"b,c\"\r\n\"say \"\"hi\"\"\",0.10000000000000001\r\n\"line\nbreak\",3\r\n");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_number(std::nan("")) == "nan");
}

#ifdef FACDIRAC_CLI
namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FACDIRAC_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("facdirac_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("command-line exit codes and outputs") {
  const auto good = write_temp("good.json", R"({"model_id": "trig_pt", "n": 1, "test_functions": 3,
      "checks": ["intertwining", "factorization"]})");
  const auto failing = write_temp("fail.json", R"({"model_id": "trig_pt", "n": 1, "perturbation": 0.05,
      "test_functions": 3, "checks": ["intertwining"]})");
  const auto unknown = write_temp("unknown.json", R"({"model_id": "trig_pt", "n": 1, "checks": ["bogus"]})");
  const auto spectrum = write_temp("spectrum.json", R"({"model_id": "trig_pt", "n": 0, "k_max": 2})");

  const auto out_a = (std::filesystem::temp_directory_path() / "facdirac_test_a.json").string();
  const auto out_b = (std::filesystem::temp_directory_path() / "facdirac_test_b.json").string();
  CHECK(run_cli("verify --config " + good + " --seed 7 --out " + out_a) == 0);
  CHECK(run_cli("verify --config " + good + " --seed 7 --out " + out_b) == 0);
  CHECK(slurp(out_a) == slurp(out_b));
  CHECK(slurp(out_a).find("\"seed\": 7") != std::string::npos);

  CHECK(run_cli("verify --config " + failing) == 1);
  CHECK(run_cli("verify --config " + unknown) == 2);
  CHECK(run_cli("verify --config /nonexistent.json") == 2);
  CHECK(run_cli("verify") == 2);
  CHECK(run_cli("") == 2);

  const auto csv = (std::filesystem::temp_directory_path() / "facdirac_test_spectrum.csv").string();
  CHECK(run_cli("spectrum --config " + spectrum + " --out " + csv) == 0);
  CHECK(slurp(csv).rfind("model,n,k,sign,epsilon_analytic,epsilon_numeric,abs_err\r\n", 0) == 0);
  const auto plot = (std::filesystem::temp_directory_path() / "facdirac_test_plot.csv").string();
  CHECK(run_cli("plotdata --config " + spectrum + " --out " + plot) == 0);
  CHECK(slurp(plot).rfind("x,psi_n0_k0", 0) == 0);
}
#endif
