#include "facdirac/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "facdirac/dirac2.hpp"
#include "facdirac/dirac4.hpp"
#include "facdirac/eigensolver.hpp"
#include "facdirac/geometry.hpp"
#include "facdirac/hierarchy.hpp"

namespace facdirac {

namespace {

using nlohmann::json;

bool increasing(const Model& m) { return m.kind() == HierarchyKind::increasing; }

template <typename T>
T get_field(const json& j, const char* key, const char* what) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field \"") + key + "\" must be " + what);
  }
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      throw ConfigError("unknown config field \"" + key + "\"" + where);
    }
  }
}

// ---------------------------------------------------------------------------
// Verification checks

struct Context {
  const ScenarioConfig& config;
  Model model;
  Grid grid;
  std::vector<GridFunction> functions;
  std::vector<Spinor2> spinors;
};

template <typename T, typename F>
double max_over(const std::vector<T>& items, F&& f) {
  double worst = 0.0;
  for (const auto& item : items) {
    const double r = f(item);
    if (!(r <= worst)) worst = r;  // propagates nan
  }
  return worst;
}

bool has_lower_neighbour(const Model& m, int n) { return m.n_valid(n - 1); }
// The 2x2 intertwiners of the decreasing kind reach down to h_{n-1}.
bool intertwiners_defined(const Model& m, int n) { return increasing(m) || has_lower_neighbour(m, n); }

double kernel_check(const Context& c) {
  const DiracOperator op(c.model, c.config.n);
  const bool inc = increasing(c.model);
  const Sign ground = inc ? Sign::plus : Sign::minus;
  const Sign r_first = inc ? Sign::minus : Sign::plus;
  const Sign t_first = inc ? Sign::plus : Sign::minus;
  const std::vector<std::pair<IntertwinerKind, std::pair<int, Sign>>> kernel{
      {IntertwinerKind::R_minus, {0, ground}}, {IntertwinerKind::R_minus, {1, r_first}},
      {IntertwinerKind::T_minus, {0, ground}}, {IntertwinerKind::T_minus, {1, t_first}}};
  return max_over(kernel, [&](const auto& entry) {
    const auto state = eigenspinor(op, entry.second.first, entry.second.second, c.grid);
    return relative_residual(apply_intertwiner(c.model, c.config.n, entry.first, state.spinor), state.spinor);
  });
}

double eigen_check(const Context& c) {
  const DiracOperator op(c.model, c.config.n);
  return max_over(dirac_spectrum(op, c.config.k_max), [&](const SpectrumEntry& e) {
    const auto state = eigenspinor(op, e.k, e.sign, c.grid);
    return dirac_eigen_residual(op, e.epsilon, state.spinor);
  });
}

int admissible_k_max(const ScenarioConfig& config, const Model& model) {
  const auto bound = model.k_max(config.n);
  return bound ? std::min(config.k_max, *bound) : config.k_max;
}

double ladder_overlap_check(const Context& c) {
  const int kmax = admissible_k_max(c.config, c.model);
  const auto pairs = solve_symmetric_spectrum(schrodinger_oracle(c.model, c.config.n, c.grid), kmax + 1);
  double worst = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    const auto psi = eigenfunction(c.model, c.config.n, k, c.grid);
    const double overlap = std::abs(inner_product(psi, pairs[static_cast<std::size_t>(k)].vector));
    worst = std::max(worst, 1.0 - overlap);
  }
  return worst;
}

double spectrum_check(const Context& c) {
  const DiracOperator op(c.model, c.config.n);
  const auto analytic = dirac_spectrum(op, c.config.k_max);
  const auto numeric = numeric_dirac_spectrum(op, c.config.k_max, c.grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    worst = std::max(worst, std::abs(analytic[i].epsilon - numeric[i].epsilon));
  }
  return worst;
}

double m0_of(const ScenarioConfig& config) { return config.m0.value_or(1.0); }

std::vector<Spinor4> bispinors(const Context& c) {
  std::vector<Spinor4> out;
  for (std::size_t i = 0; i + 1 < c.spinors.size(); i += 2) out.push_back(make_spinor(c.spinors[i], c.spinors[i + 1]));
  return out;
}

double massive_eigen_check(const Context& c) {
  const MassiveOperator op(DiracOperator(c.model, c.config.n), m0_of(c.config));
  double worst = 0.0;
  for (const auto& level : massive_spectrum(op, c.config.k_max)) {
    for (Sign s : {Sign::plus, Sign::minus}) {
      if (!level_exists(op.base(), level.k, s)) continue;
      const auto xi = massive_eigenstate(op, level.k, s, level.branch, c.grid);
      worst = std::max(worst, massive_eigen_residual(op, level.energy, xi));
    }
  }
  return worst;
}

double massive_intertwining_check(const Context& c) {
  const double m0 = m0_of(c.config);
  const auto xis = bispinors(c);
  double worst = 0.0;
  for (GlobalKind kind : {GlobalKind::calR, GlobalKind::calR_tilde, GlobalKind::calT, GlobalKind::calT_tilde}) {
    worst = std::max(worst, max_over(xis, [&](const Spinor4& xi) {
                       return global_intertwine_residual(c.model, c.config.n, m0, kind, xi);
                     }));
  }
  return worst;
}

Surface surface_of(const Model& m) { return m.family() == Family::trig_pt ? Surface::sphere : Surface::hyperboloid; }

double spinor_mode_of(const Model& m, int n) { return surface_of(m) == Surface::sphere ? n + 0.5 : n - 0.5; }

struct CheckSpec {
  double tolerance;
  std::function<bool(const ScenarioConfig&, const Model&)> applies;
  std::function<double(const Context&)> run;
  const char* requirement;
};

const std::map<std::string, CheckSpec>& registry() {
  static const std::map<std::string, CheckSpec> checks{
      {"annihilator_kernel",
       {1e-5, [](const ScenarioConfig& c, const Model& m) { return intertwiners_defined(m, c.n) && m.k_valid(c.n, 1); },
        kernel_check, "an excited level k = 1 and defined intertwiners"}},
      {"anti_intertwining",
       {1e-5, [](const ScenarioConfig& c, const Model& m) { return intertwiners_defined(m, c.n); },
        [](const Context& c) {
          return max_over(c.spinors, [&](const Spinor2& s) { return anti_intertwine_residual(c.model, c.config.n, s); });
        },
        "defined intertwiners"}},
      {"commutator",
       {1e-5, [](const ScenarioConfig& c, const Model& m) { return has_lower_neighbour(m, c.n); },
        [](const Context& c) {
          return max_over(c.spinors, [&](const Spinor2& s) {
            return std::max(commutator_residual(c.model, c.config.n, SymmetryProduct::S, s),
                            commutator_residual(c.model, c.config.n, SymmetryProduct::S_prime, s));
          });
        },
        "a hierarchy member below n"}},
      {"eigen_residual", {1e-4, [](const ScenarioConfig&, const Model&) { return true; }, eigen_check, ""}},
      {"factorization",
       {1e-5, [](const ScenarioConfig&, const Model&) { return true; },
        [](const Context& c) {
          return max_over(c.functions, [&](const GridFunction& f) { return factorization_residual(c.model, c.config.n, f); });
        },
        ""}},
      {"intertwining",
       {1e-5, [](const ScenarioConfig& c, const Model& m) { return intertwiners_defined(m, c.n); },
        [](const Context& c) {
          return max_over(c.spinors, [&](const Spinor2& s) { return intertwine_residual(c.model, c.config.n, s); });
        },
        "defined intertwiners"}},
      {"ladder_overlap", {1e-4, [](const ScenarioConfig&, const Model&) { return true; }, ladder_overlap_check, ""}},
      {"m_minus_identity",
       {1e-5, [](const ScenarioConfig&, const Model& m) { return increasing(m); },
        [](const Context& c) {
          return max_over(c.spinors, [&](const Spinor2& s) {
            return std::max(m_minus_identity_residual(c.model, c.config.n, SymmetryProduct::S, s),
                            m_minus_identity_residual(c.model, c.config.n, SymmetryProduct::S_prime, s));
          });
        },
        "the increasing kind"}},
      {"massive_eigen", {1e-4, [](const ScenarioConfig&, const Model& m) { return increasing(m); }, massive_eigen_check,
                         "the increasing kind"}},
      {"massive_intertwining", {1e-5, [](const ScenarioConfig&, const Model& m) { return increasing(m); },
                                massive_intertwining_check, "the increasing kind"}},
      {"pseudo_hermiticity",
       {1e-10, [](const ScenarioConfig&, const Model&) { return true; },
        [](const Context& c) { return pseudo_hermiticity_residual(DiracOperator(c.model, c.config.n), c.grid); }, ""}},
      {"reduction_scalar",
       {1e-5, [](const ScenarioConfig&, const Model&) { return true; },
        [](const Context& c) {
          const Surface s = surface_of(c.model);
          return max_over(c.functions, [&](const GridFunction& f) { return reduce_scalar(s, c.config.n, f); });
        },
        ""}},
      {"reduction_spinor",
       {1e-5,
        [](const ScenarioConfig& c, const Model& m) { return increasing(m) || has_lower_neighbour(m, c.n); },
        [](const Context& c) {
          const Surface s = surface_of(c.model);
          const double mode = spinor_mode_of(c.model, c.config.n);
          return max_over(c.spinors, [&](const Spinor2& psi) {
            return std::max(reduce_spinor(s, mode, psi), square_bookkeeping_residual(s, mode, psi));
          });
        },
        "a hierarchy member below n"}},
      {"scalar_intertwining",
       {1e-5, [](const ScenarioConfig& c, const Model& m) { return increasing(m) || has_lower_neighbour(m, c.n); },
        [](const Context& c) {
          return max_over(c.functions,
                          [&](const GridFunction& f) { return scalar_intertwine_residual(c.model, c.config.n, f); });
        },
        "a hierarchy member below n"}},
      {"shape_invariance",
       {1e-5, [](const ScenarioConfig& c, const Model& m) { return increasing(m) || has_lower_neighbour(m, c.n); },
        [](const Context& c) {
          return max_over(c.functions,
                          [&](const GridFunction& f) { return shape_invariance_residual(c.model, c.config.n, f); });
        },
        "a hierarchy member below n"}},
      {"spectrum_numeric", {1e-3, [](const ScenarioConfig&, const Model&) { return true; }, spectrum_check, ""}},
      {"square_relation",
       {1e-5, [](const ScenarioConfig& c, const Model& m) { return increasing(m) || has_lower_neighbour(m, c.n); },
        [](const Context& c) {
          const DiracOperator op(c.model, c.config.n);
          return max_over(c.spinors, [&](const Spinor2& s) { return dirac_square_residual(op, s); });
        },
        "a hierarchy member below n"}},
      {"symmetry_product",
       {1e-5, [](const ScenarioConfig& c, const Model& m) { return intertwiners_defined(m, c.n); },
        [](const Context& c) {
          return max_over(c.spinors, [&](const Spinor2& s) {
            return std::max(symmetry_product_residual(c.model, c.config.n, SymmetryProduct::S, s),
                            symmetry_product_residual(c.model, c.config.n, SymmetryProduct::S_prime, s));
          });
        },
        "defined intertwiners"}},
  };
  return checks;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

// ---------------------------------------------------------------------------
// Output

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* i = std::get_if<int>(&c)) return std::to_string(*i);
  return format_number(std::get<double>(c));
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  return out + "\"";
}

std::string json_number(double x) { return std::isfinite(x) ? format_number(x) : "null"; }

std::string json_cell(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return json_string(*s);
  if (const auto* i = std::get_if<int>(&c)) return std::to_string(*i);
  return json_number(std::get<double>(c));
}

void write_header(std::ostream& out, const std::string& command, const ScenarioConfig& config) {
  const Grid grid = config.make_grid();
  out << "{\n";
  out << "  \"schema_version\": 1,\n";
  out << "  \"command\": " << json_string(command) << ",\n";
  out << "  \"model\": " << json_string(config.model_id) << ",\n";
  out << "  \"n\": " << config.n << ",\n";
  out << "  \"k_max\": " << config.k_max << ",\n";
  if (config.m0) out << "  \"m0\": " << json_number(*config.m0) << ",\n";
  if (config.perturbation != 0.0) out << "  \"perturbation\": " << json_number(config.perturbation) << ",\n";
  out << "  \"seed\": " << config.seed << ",\n";
  out << "  \"grid\": {\"n_points\": " << grid.n_points() << ", \"x_min\": " << json_number(grid.x_min())
      << ", \"x_max\": " << json_number(grid.x_max()) << "},\n";
}

}  // namespace

// ---------------------------------------------------------------------------

Model ScenarioConfig::model() const {
  Model m = Model::from_id(model_id);
  return perturbation != 0.0 ? m.perturbed(perturbation) : m;
}

Grid ScenarioConfig::make_grid() const {
  const Grid base = Model::from_id(model_id).default_grid(grid.n_points.value_or(0));
  return Grid(grid.x_min.value_or(base.x_min()), grid.x_max.value_or(base.x_max()), base.n_points(), base.boundary());
}

ScenarioConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"model", "model_id", "n", "k_max", "m0", "grid", "checks", "output", "seed", "test_functions",
                     "perturbation"},
                 "");

  ScenarioConfig c;
  if (j.contains("model_id")) {
    c.model_id = get_field<std::string>(j, "model_id", "a string");
  } else if (j.contains("model")) {
    c.model_id = get_field<std::string>(j, "model", "a string");
  } else {
    throw ConfigError("config requires \"model_id\"");
  }
  if (c.model_id != "trig_pt" && c.model_id != "hyp_pt") {
    throw ConfigError("unknown model \"" + c.model_id + "\" (known: hyp_pt, trig_pt)");
  }
  if (!j.contains("n")) throw ConfigError("config requires \"n\"");
  c.n = get_field<int>(j, "n", "an integer");
  if (j.contains("k_max")) c.k_max = get_field<int>(j, "k_max", "an integer");
  if (c.k_max < 0) throw ConfigError("k_max must be non-negative");
  if (j.contains("m0")) c.m0 = get_field<double>(j, "m0", "a number");
  if (j.contains("seed")) c.seed = get_field<std::uint64_t>(j, "seed", "an unsigned 64-bit integer");
  if (j.contains("test_functions")) c.test_functions = get_field<int>(j, "test_functions", "an integer");
  if (c.test_functions < 1) throw ConfigError("test_functions must be at least 1");
  if (j.contains("perturbation")) c.perturbation = get_field<double>(j, "perturbation", "a number");

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (!g.is_object()) throw ConfigError("config field \"grid\" must be an object");
    reject_unknown(g, {"n_points", "x_min", "x_max"}, " in \"grid\"");
    if (g.contains("n_points")) c.grid.n_points = get_field<int>(g, "n_points", "an integer");
    if (g.contains("x_min")) c.grid.x_min = get_field<double>(g, "x_min", "a number");
    if (g.contains("x_max")) c.grid.x_max = get_field<double>(g, "x_max", "a number");
  }
  if (j.contains("checks")) c.checks = get_field<std::vector<std::string>>(j, "checks", "a list of strings");
  if (j.contains("output")) {
    const json& o = j.at("output");
    if (!o.is_object()) throw ConfigError("config field \"output\" must be an object");
    reject_unknown(o, {"path", "format"}, " in \"output\"");
    if (o.contains("path")) c.output_path = get_field<std::string>(o, "path", "a string");
    if (o.contains("format")) {
      const auto f = get_field<std::string>(o, "format", "a string");
      if (f == "json") {
        c.format = OutputFormat::json;
      } else if (f == "csv") {
        c.format = OutputFormat::csv;
      } else {
        throw ConfigError("unknown output format \"" + f + "\" (known: csv, json)");
      }
    }
  }

  // Semantic validation against the model.
  const Model model = Model::from_id(c.model_id);
  if (!model.n_valid(c.n)) {
    throw ConfigError("n = " + std::to_string(c.n) + " is outside the hierarchy of " + c.model_id + " (n >= " +
                      std::to_string(model.n_min()) + ")");
  }
  if (c.m0) {
    if (!increasing(model)) throw ConfigError("m0 requires a model of the increasing kind");
    if (!(*c.m0 >= 0.0) || !std::isfinite(*c.m0)) throw ConfigError("m0 must be finite and non-negative");
  }
  try {
    (void)c.make_grid();
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid grid: ") + e.what());
  }
  const auto& reg = registry();
  for (const auto& name : c.checks) {
    auto it = reg.find(name);
    if (it == reg.end()) throw ConfigError("unknown check \"" + name + "\" (known: " + join(known_checks()) + ")");
    if (!it->second.applies(c, model)) {
      throw ConfigError("check \"" + name + "\" needs " + it->second.requirement + ", not available for " +
                        c.model_id + " at n = " + std::to_string(c.n));
    }
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::vector<std::string> known_checks() {
  std::vector<std::string> out;
  for (const auto& [name, spec] : registry()) out.push_back(name);
  return out;
}

std::vector<std::string> default_checks(const ScenarioConfig& config) {
  const Model model = Model::from_id(config.model_id);
  std::vector<std::string> out;
  for (const auto& [name, spec] : registry()) {
    if (spec.applies(config, model)) out.push_back(name);
  }
  return out;
}

int VerificationReport::passed() const {
  return static_cast<int>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; }));
}

int VerificationReport::failed() const { return static_cast<int>(checks.size()) - passed(); }

VerificationReport run_verify(const ScenarioConfig& config) {
  const Model model = config.model();
  const Grid grid = config.make_grid();
  auto functions = gaussian_test_functions(model, grid, config.seed, config.test_functions);
  // Spinors draw from a second stream so that they do not repeat the scalar bumps.
  const auto pool = gaussian_test_functions(model, grid, config.seed ^ 0x9e3779b97f4a7c15ULL, 2 * config.test_functions);
  std::vector<Spinor2> spinors;
  for (int i = 0; i < config.test_functions; ++i) {
    const auto a = static_cast<std::size_t>(2 * i);
    spinors.push_back(make_spinor(pool[a], Complex(0.6, 0.8) * pool[a + 1]));
  }
  const Context context{config, model, grid, std::move(functions), std::move(spinors)};

  auto names = config.checks.empty() ? default_checks(config) : config.checks;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());

  VerificationReport report{config.model_id, config.n, config.seed, {}};
  for (const auto& name : names) {
    const auto& spec = registry().at(name);
    const auto start = std::chrono::steady_clock::now();
    double residual = spec.run(context);
    const auto stop = std::chrono::steady_clock::now();
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    report.checks.push_back({name, residual, spec.tolerance, residual < spec.tolerance,
                             std::chrono::duration<double, std::milli>(stop - start).count()});
  }
  return report;
}

Table run_spectrum(const ScenarioConfig& config) {
  const Model model = config.model();
  const Grid grid = config.make_grid();
  const DiracOperator op(model, config.n);
  const auto analytic = dirac_spectrum(op, config.k_max);
  const auto numeric = numeric_dirac_spectrum(op, config.k_max, grid);

  Table t{{"model", "n", "k", "sign", "epsilon_analytic", "epsilon_numeric", "abs_err"}, {}};
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const auto& a = analytic[i];
    const double num = numeric[i].epsilon;
    t.rows.push_back({config.model_id, a.n, a.k, std::string(1, sign_char(a.sign)), a.epsilon, num,
                      std::abs(a.epsilon - num)});
  }
  if (config.m0) {
    // The massive levels inherit |epsilon| from the 2x2 spectrum: E = +-sqrt(eps^2 + m0^2).
    const MassiveOperator mop(op, *config.m0);
    for (const auto& level : massive_spectrum(mop, config.k_max)) {
      double eps = 0.0;
      for (std::size_t i = 0; i < analytic.size(); ++i) {
        if (analytic[i].k == level.k) eps = numeric[i].epsilon;
      }
      const double s = level.branch == Branch::plus_energy ? 1.0 : -1.0;
      const double num = s * std::sqrt(eps * eps + *config.m0 * *config.m0);
      t.rows.push_back({config.model_id + "+massive", level.n, level.k, std::string(s > 0 ? "+" : "-"), level.energy,
                        num, std::abs(level.energy - num)});
    }
  }
  return t;
}

Table run_plotdata(const ScenarioConfig& config) {
  const Model model = config.model();
  const Grid grid = config.make_grid();
  const DiracOperator op(model, config.n);
  const int kmax = admissible_k_max(config, model);

  Table t{{"x"}, {}};
  std::vector<GridFunction> columns;
  for (int k = 0; k <= kmax; ++k) {
    t.columns.push_back("psi_n" + std::to_string(config.n) + "_k" + std::to_string(k));
    columns.push_back(eigenfunction(model, config.n, k, grid));
  }
  std::vector<bool> imaginary;
  for (const auto& e : dirac_spectrum(op, config.k_max)) {
    const auto state = eigenspinor(op, e.k, e.sign, grid);
    const std::string stem = "Psi_n" + std::to_string(e.n) + "_k" + std::to_string(e.k) + sign_char(e.sign);
    for (std::size_t c = 0; c < 2; ++c) {
      const std::string part = c == 0 ? "_upper" : "_lower";
      t.columns.push_back(stem + part + "_re");
      t.columns.push_back(stem + part + "_im");
      columns.push_back(state.spinor[c]);
      columns.push_back(state.spinor[c]);
    }
  }
  // Scalar columns are real; spinor columns alternate real and imaginary parts.
  const std::size_t scalar_count = static_cast<std::size_t>(kmax + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<Cell> row{grid.x(i)};
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const Complex v = columns[c][i];
      const bool im = c >= scalar_count && (c - scalar_count) % 2 == 1;
      row.emplace_back(im ? v.imag() : v.real());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(cell_text(row[i]));
    out << "\r\n";
  }
}

void write_json(std::ostream& out, const Table& table, const std::string& command, const ScenarioConfig& config) {
  write_header(out, command, config);
  out << "  \"columns\": [";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? ", " : "") << json_string(table.columns[i]);
  out << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < table.rows[r].size(); ++i) out << (i ? ", " : "") << json_cell(table.rows[r][i]);
    out << "]";
  }
  out << (table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

void write_csv(std::ostream& out, const VerificationReport& report, bool timings) {
  Table t{{"name", "residual", "tolerance", "pass"}, {}};
  if (timings) t.columns.push_back("wall_time_ms");
  for (const auto& c : report.checks) {
    std::vector<Cell> row{c.name, c.residual, c.tolerance, std::string(c.pass ? "true" : "false")};
    if (timings) row.emplace_back(c.wall_time_ms);
    t.rows.push_back(std::move(row));
  }
  write_csv(out, t);
}

void write_json(std::ostream& out, const VerificationReport& report, const ScenarioConfig& config, bool timings) {
  write_header(out, "verify", config);
  out << "  \"checks\": [";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const auto& c = report.checks[i];
    out << (i ? ",\n    {" : "\n    {") << "\"name\": " << json_string(c.name)
        << ", \"residual\": " << json_number(c.residual) << ", \"tolerance\": " << json_number(c.tolerance)
        << ", \"pass\": " << (c.pass ? "true" : "false");
    if (timings) out << ", \"wall_time_ms\": " << json_number(c.wall_time_ms);
    out << "}";
  }
  out << (report.checks.empty() ? "],\n" : "\n  ],\n");
  out << "  \"summary\": {\"total\": " << report.checks.size() << ", \"passed\": " << report.passed()
      << ", \"failed\": " << report.failed() << "}\n}\n";
}

}  // namespace facdirac
