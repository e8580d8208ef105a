#include "facdirac/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace facdirac {

Grid::Grid(double x_min, double x_max, int n_points, Boundary boundary)
    : x_min_(x_min), x_max_(x_max), n_points_(n_points), boundary_(boundary) {
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw Error("grid requires finite x_min < x_max");
  }
  if (n_points < kMinPoints) {
    throw Error("grid requires at least " + std::to_string(kMinPoints) + " points, got " +
                std::to_string(n_points));
  }
}

std::vector<double> Grid::nodes() const {
  std::vector<double> xs(size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = x(i);
  return xs;
}

std::pair<std::size_t, std::size_t> Grid::interior_range(double trim) const {
  const double length = x_max_ - x_min_;
  const double lo = x_min_ + trim * length;
  const double hi = x_max_ - trim * length;
  const double h = spacing();
  auto first = static_cast<std::size_t>(std::ceil((lo - x_min_) / h - 1e-9));
  auto last = static_cast<std::size_t>(std::floor((hi - x_min_) / h + 1e-9));
  first = std::max<std::size_t>(first, 1);
  last = std::min<std::size_t>(last, size() - 2);
  return {first, last};
}

GridFunction::GridFunction(const Grid& grid) : grid_(grid), values_(grid.size()) {}

GridFunction::GridFunction(const Grid& grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error("grid function length " + std::to_string(values_.size()) +
                " does not match grid size " + std::to_string(grid_.size()));
  }
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<Complex(double)>& f) {
  GridFunction out(grid);
  const std::size_t n = grid.size();
  const bool dirichlet = grid.boundary() == Boundary::dirichlet;
  for (std::size_t i = 0; i < n; ++i) {
    if (dirichlet && (i == 0 || i + 1 == n)) continue;
    out.values_[i] = f(grid.x(i));
  }
  return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(Complex scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

GridFunction GridFunction::times(const std::function<double(double)>& g) const {
  GridFunction out(*this);
  const std::size_t n = size();
  const bool dirichlet = grid_.boundary() == Boundary::dirichlet;
  for (std::size_t i = 0; i < n; ++i) {
    if (dirichlet && (i == 0 || i + 1 == n)) {
      out.values_[i] = 0.0;
      continue;
    }
    out.values_[i] *= g(grid_.x(i));
  }
  return out;
}

GridFunction GridFunction::conj() const {
  GridFunction out(*this);
  for (auto& v : out.values_) v = std::conj(v);
  return out;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator-(GridFunction a) { return a *= -1.0; }
GridFunction operator*(Complex s, GridFunction a) { return a *= s; }
GridFunction operator*(GridFunction a, Complex s) { return a *= s; }

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw Error("grid mismatch between operands");
}

Spinor2 make_spinor(GridFunction upper, GridFunction lower) {
  require_same_grid(upper.grid(), lower.grid());
  return Spinor2{{std::move(upper), std::move(lower)}};
}

Spinor4 make_spinor(const Spinor2& upper, const Spinor2& lower) {
  require_same_grid(upper.grid(), lower.grid());
  return Spinor4{{upper[0], upper[1], lower[0], lower[1]}};
}

Spinor2 upper_block(const Spinor4& s) { return Spinor2{{s[0], s[1]}}; }
Spinor2 lower_block(const Spinor4& s) { return Spinor2{{s[2], s[3]}}; }

// ---------------------------------------------------------------------------

namespace {

// Fourth-order one-sided stencils, left edge. Right edge mirrors these
// (first derivative changes sign).
constexpr std::array<double, 5> kD1Node0{-25.0, 48.0, -36.0, 16.0, -3.0};  // /12h
constexpr std::array<double, 5> kD1Node1{-3.0, -10.0, 18.0, -6.0, 1.0};    // /12h
constexpr std::array<double, 6> kD2Node0{45.0, -154.0, 214.0, -156.0, 61.0, -10.0};  // /12h^2
constexpr std::array<double, 6> kD2Node1{10.0, -15.0, -4.0, 14.0, -6.0, 1.0};        // /12h^2

Complex central(std::span<const Complex> v, std::ptrdiff_t i, int order, bool ghost_zero) {
  const auto n = static_cast<std::ptrdiff_t>(v.size());
  auto at = [&](std::ptrdiff_t j) -> Complex {
    if (j < 0 || j >= n) return 0.0;
    if (ghost_zero && (j == 0 || j == n - 1)) return 0.0;
    return v[static_cast<std::size_t>(j)];
  };
  if (order == 1) return (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / 12.0;
  return (-at(i - 2) + 16.0 * at(i - 1) - 30.0 * at(i) + 16.0 * at(i + 1) - at(i + 2)) / 12.0;
}

template <std::size_t W>
Complex one_sided(std::span<const Complex> v, std::size_t start, int dir,
                  const std::array<double, W>& w) {
  Complex acc = 0.0;
  for (std::size_t j = 0; j < W; ++j) {
    const auto idx = static_cast<std::ptrdiff_t>(start) + dir * static_cast<std::ptrdiff_t>(j);
    acc += w[j] * v[static_cast<std::size_t>(idx)];
  }
  return acc / 12.0;
}

}  // namespace

GridFunction differentiate(const GridFunction& f, int order) {
  if (order != 1 && order != 2) throw Error("differentiation order must be 1 or 2");
  const Grid& grid = f.grid();
  const std::size_t n = grid.size();
  if (n < 6) throw Error("insufficient stencil support");
  const double h = grid.spacing();
  const double scale = order == 1 ? 1.0 / h : 1.0 / (h * h);
  GridFunction out(grid);
  auto v = f.values();
  auto o = out.values();

  if (grid.boundary() == Boundary::dirichlet) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      o[i] = scale * central(v, static_cast<std::ptrdiff_t>(i), order, true);
    }
    return out;
  }

  for (std::size_t i = 2; i + 2 < n; ++i) {
    o[i] = scale * central(v, static_cast<std::ptrdiff_t>(i), order, false);
  }
  if (order == 1) {
    o[0] = scale * one_sided(v, 0, +1, kD1Node0);
    o[1] = scale * (one_sided(v, 0, +1, kD1Node1));
    o[n - 1] = -scale * one_sided(v, n - 1, -1, kD1Node0);
    o[n - 2] = -scale * one_sided(v, n - 1, -1, kD1Node1);
  } else {
    o[0] = scale * one_sided(v, 0, +1, kD2Node0);
    o[1] = scale * one_sided(v, 0, +1, kD2Node1);
    o[n - 1] = scale * one_sided(v, n - 1, -1, kD2Node0);
    o[n - 2] = scale * one_sided(v, n - 1, -1, kD2Node1);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double trapezoid_weight(std::size_t i, std::size_t first, std::size_t last) {
  return (i == first || i == last) ? 0.5 : 1.0;
}

Complex trapezoid_dot(const GridFunction& f, const GridFunction& g, std::size_t first,
                      std::size_t last) {
  Complex acc = 0.0;
  auto fv = f.values();
  auto gv = g.values();
  for (std::size_t i = first; i <= last; ++i) {
    acc += trapezoid_weight(i, first, last) * std::conj(fv[i]) * gv[i];
  }
  return acc * f.grid().spacing();
}

double interior_sq(const GridFunction& f) {
  const auto [first, last] = f.grid().interior_range();
  return trapezoid_dot(f, f, first, last).real();
}

}  // namespace

Complex inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f.grid(), g.grid());
  return trapezoid_dot(f, g, 0, f.size() - 1);
}

Complex inner_product(const Spinor2& f, const Spinor2& g, Weight weight) {
  require_same_grid(f.grid(), g.grid());
  const Complex upper = inner_product(f[0], g[0]);
  const Complex lower = inner_product(f[1], g[1]);
  return weight == Weight::definite ? upper + lower : upper - lower;
}

Complex inner_product(const Spinor4& f, const Spinor4& g) {
  require_same_grid(f.grid(), g.grid());
  Complex acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) acc += inner_product(f[i], g[i]);
  return acc;
}

Complex interior_inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f.grid(), g.grid());
  const auto [first, last] = f.grid().interior_range();
  return trapezoid_dot(f, g, first, last);
}

Complex interior_inner_product(const Spinor2& f, const Spinor2& g) {
  return interior_inner_product(f[0], g[0]) + interior_inner_product(f[1], g[1]);
}

double norm(const GridFunction& f) { return std::sqrt(inner_product(f, f).real()); }
double norm(const Spinor2& f) { return std::sqrt(inner_product(f, f).real()); }
double norm(const Spinor4& f) { return std::sqrt(inner_product(f, f).real()); }

double interior_norm(const GridFunction& f) { return std::sqrt(interior_sq(f)); }
double interior_norm(const Spinor2& f) { return std::sqrt(interior_sq(f[0]) + interior_sq(f[1])); }
double interior_norm(const Spinor4& f) {
  double acc = 0.0;
  for (const auto& c : f.c) acc += interior_sq(c);
  return std::sqrt(acc);
}

double integrate(const Grid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size()) throw Error("sample count does not match grid");
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    acc += trapezoid_weight(i, 0, samples.size() - 1) * samples[i];
  }
  return acc * grid.spacing();
}

namespace {
template <typename F>
F normalized_impl(const F& f) {
  const double nrm = norm(f);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw Error("cannot normalize a zero or non-finite function");
  return f * Complex(1.0 / nrm);
}
}  // namespace

GridFunction normalized(const GridFunction& f) { return normalized_impl(f); }
Spinor2 normalized(const Spinor2& f) { return normalized_impl(f); }
Spinor4 normalized(const Spinor4& f) { return normalized_impl(f); }

}  // namespace facdirac
