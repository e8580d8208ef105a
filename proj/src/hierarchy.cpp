#include "facdirac/hierarchy.hpp"

#include <cmath>
#include <random>

namespace facdirac {

namespace {

double sign_of(const Model& model) { return model.kind() == HierarchyKind::increasing ? 1.0 : -1.0; }

// Index of the neighbour Hamiltonian reached by a^-_n.
int lowered_index(const Model& model, int n) { return model.kind() == HierarchyKind::increasing ? n + 1 : n - 1; }

double horner(const std::vector<double>& p, double t) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::vector<double> derivative(const std::vector<double>& p) {
  std::vector<double> d(p.size() > 1 ? p.size() - 1 : 1, 0.0);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
  return d;
}

// (1 - t^2) P'(t) - a t P(t)
std::vector<double> ladder_step(const std::vector<double>& p, double a) {
  const auto dp = derivative(p);
  std::vector<double> out(p.size() + 1, 0.0);
  for (std::size_t i = 0; i < dp.size(); ++i) {
    out[i] += dp[i];
    out[i + 2] -= dp[i];
  }
  for (std::size_t i = 0; i < p.size(); ++i) out[i + 1] -= a * p[i];
  return out;
}

}  // namespace

GridFunction apply_factor(const Model& model, int n, Factor dir, const GridFunction& f) {
  auto d = differentiate(f, 1);
  auto wf = f.times([&](double x) { return model.superpotential(n, x); });
  if (dir == Factor::lower) return wf + d;
  return wf - d;
}

GridFunction apply_schrodinger(const Model& model, int n, const GridFunction& f) {
  auto vf = f.times([&](double x) { return potential(model, n, x); });
  return vf - differentiate(f, 2);
}

double LadderFunction::operator()(double x) const {
  if (family == Family::trig_pt) return std::pow(std::sin(x), power) * horner(poly, std::cos(x));
  return std::pow(std::cosh(x), -power) * horner(poly, std::tanh(x));
}

LadderFunction LadderFunction::raised(int j) const {
  // trig: a^+_j sin^p P(c) = sin^{p-1} [(1-c^2) P' - (p+j+1/2) c P]
  // hyp:  a^+_j cosh^{-p} P(t) = cosh^{-p} [(p+j-1/2) t P - (1-t^2) P']
  if (family == Family::trig_pt) return {family, power - 1.0, ladder_step(poly, power + j + 0.5)};
  auto q = ladder_step(poly, power + j - 0.5);
  for (auto& c : q) c = -c;
  return {family, power, q};
}

LadderFunction ladder_function(const Model& model, int n, int k) {
  require_valid_nk(model, n, k);
  if (model.family() == Family::trig_pt) {
    if (model.kind() != HierarchyKind::increasing) throw Error("trig_pt ladder requires the increasing kind");
    LadderFunction f{Family::trig_pt, n + k + 0.5, {1.0}};
    for (int j = n + k - 1; j >= n; --j) f = f.raised(j);
    return f;
  }
  LadderFunction f{Family::hyp_pt, n - k - 0.5, {1.0}};
  for (int j = n - k + 1; j <= n; ++j) f = f.raised(j);
  return f;
}

GridFunction eigenfunction(const Model& model, int n, int k, const Grid& grid) {
  if (k == 0) return ground_state(model, n, grid);
  const auto f = ladder_function(model, n, k);
  return normalized(GridFunction::sample(grid, [&](double x) { return Complex(f(x)); }));
}

double scalar_energy(const Model& model, int n, int k) {
  require_valid_nk(model, n, k);
  if (model.kind() == HierarchyKind::increasing) return model.mu_squared(n + k);
  return -model.mu_squared(n - k);
}

double ladder_coefficient(const Model& model, int n, int k) {
  require_valid_nk(model, n, k);
  if (model.kind() == HierarchyKind::increasing) return std::sqrt(model.mu_squared(n + k) - model.mu_squared(n));
  return std::sqrt(model.mu_squared(n) - model.mu_squared(n - k));
}

double scalar_intertwine_residual(const Model& model, int n, const GridFunction& f) {
  const int m = lowered_index(model, n);
  const auto lhs = apply_factor(model, n, Factor::lower, apply_schrodinger(model, n, f));
  const auto rhs = apply_schrodinger(model, m, apply_factor(model, n, Factor::lower, f));
  return relative_residual(lhs - rhs, f);
}

double factorization_residual(const Model& model, int n, const GridFunction& f) {
  const auto lhs = apply_schrodinger(model, n, f);
  const auto rhs = apply_factor(model, n, Factor::raise, apply_factor(model, n, Factor::lower, f)) +
                   Complex(sign_of(model) * model.mu_squared(n)) * f;
  return relative_residual(lhs - rhs, f);
}

double shape_invariance_residual(const Model& model, int n, const GridFunction& f) {
  const auto lhs = apply_factor(model, n, Factor::lower, apply_factor(model, n, Factor::raise, f)) +
                   Complex(sign_of(model) * model.mu_squared(n)) * f;
  const auto rhs = apply_schrodinger(model, lowered_index(model, n), f);
  return relative_residual(lhs - rhs, f);
}

double eigen_residual(const Model& model, int n, double energy, const GridFunction& psi) {
  return relative_residual(apply_schrodinger(model, n, psi) - Complex(energy) * psi, psi);
}

SymmetricTridiagonal schrodinger_oracle(const Model& model, int n, const Grid& grid) {
  require_valid_n(model, n);
  if (model.family() == Family::trig_pt && model.perturbation() == 0.0 && grid.boundary() == Boundary::dirichlet) {
    const double p = n + 0.5;
    return discretize_ground_state_gauge(grid, [p](double x) { return std::pow(std::sin(x), p); },
                                         scalar_energy(model, n, 0));
  }
  return discretize_schrodinger(grid, [&](double x) { return potential(model, n, x); });
}

GridFunction gaussian_bump(const Grid& grid, double center, double width) {
  return GridFunction::sample(grid, [=](double x) {
    const double u = (x - center) / width;
    return Complex(std::exp(-0.5 * u * u));
  });
}

std::vector<GridFunction> gaussian_test_functions(const Model& model, const Grid& grid, std::uint64_t seed,
                                                  int count) {
  std::mt19937_64 rng(seed);
  const bool trig = model.family() == Family::trig_pt;
  std::uniform_real_distribution<double> center = trig ? std::uniform_real_distribution<double>(1.1, 2.04)
                                                       : std::uniform_real_distribution<double>(-3.0, 3.0);
  std::uniform_real_distribution<double> width = trig ? std::uniform_real_distribution<double>(0.2, 0.3)
                                                      : std::uniform_real_distribution<double>(0.5, 1.5);
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double c = center(rng);
    const double w = width(rng);
    out.push_back(gaussian_bump(grid, c, w));
  }
  return out;
}

}  // namespace facdirac
