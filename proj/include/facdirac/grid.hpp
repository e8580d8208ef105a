#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "facdirac/error.hpp"

namespace facdirac {

using Complex = std::complex<double>;

enum class Boundary { dirichlet, decay_truncation };

/// Uniform 1D grid. Under `dirichlet` the two endpoint values are treated as
/// zero by every operator; under `decay_truncation` the box edge is a
/// truncation of an infinite line and one-sided stencils are used there.
class Grid {
 public:
  static constexpr int kMinPoints = 16;

  Grid(double x_min, double x_max, int n_points, Boundary boundary);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int n_points() const { return n_points_; }
  std::size_t size() const { return static_cast<std::size_t>(n_points_); }
  Boundary boundary() const { return boundary_; }
  double spacing() const { return (x_max_ - x_min_) / (n_points_ - 1); }
  double x(std::size_t i) const { return x_min_ + spacing() * static_cast<double>(i); }
  std::vector<double> nodes() const;

  /// Node index range [first, last] covering the central part of the domain
  /// after trimming `trim` of the length on each side.
  std::pair<std::size_t, std::size_t> interior_range(double trim = kInteriorTrim) const;

  static constexpr double kInteriorTrim = 0.05;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double x_min_;
  double x_max_;
  int n_points_;
  Boundary boundary_;
};

class GridFunction {
 public:
  explicit GridFunction(const Grid& grid);
  GridFunction(const Grid& grid, std::vector<Complex> values);

  /// Samples f at every node. Under dirichlet the endpoints are set to zero
  /// without evaluating f there (f may be singular at the boundary).
  static GridFunction sample(const Grid& grid, const std::function<Complex(double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(Complex scale);

  /// Pointwise product with a real function of x.
  GridFunction times(const std::function<double(double)>& g) const;
  GridFunction conj() const;

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a);
GridFunction operator*(Complex s, GridFunction a);
GridFunction operator*(GridFunction a, Complex s);

void require_same_grid(const Grid& a, const Grid& b);

/// K-component spinor on one shared grid.
template <std::size_t K>
struct Spinor {
  std::array<GridFunction, K> c;

  const Grid& grid() const { return c[0].grid(); }
  GridFunction& operator[](std::size_t i) { return c[i]; }
  const GridFunction& operator[](std::size_t i) const { return c[i]; }

  static Spinor zeros(const Grid& grid) {
    return [&]<std::size_t... I>(std::index_sequence<I...>) {
      return Spinor{{((void)I, GridFunction(grid))...}};
    }(std::make_index_sequence<K>{});
  }

  Spinor& operator+=(const Spinor& o) {
    for (std::size_t i = 0; i < K; ++i) c[i] += o.c[i];
    return *this;
  }
  Spinor& operator-=(const Spinor& o) {
    for (std::size_t i = 0; i < K; ++i) c[i] -= o.c[i];
    return *this;
  }
  Spinor& operator*=(Complex s) {
    for (auto& f : c) f *= s;
    return *this;
  }
  friend Spinor operator+(Spinor a, const Spinor& b) { return a += b; }
  friend Spinor operator-(Spinor a, const Spinor& b) { return a -= b; }
  friend Spinor operator*(Complex s, Spinor a) { return a *= s; }
  friend Spinor operator*(Spinor a, Complex s) { return a *= s; }
  friend Spinor operator-(Spinor a) { return a *= -1.0; }
};

using Spinor2 = Spinor<2>;
using Spinor4 = Spinor<4>;

Spinor2 make_spinor(GridFunction upper, GridFunction lower);
Spinor4 make_spinor(const Spinor2& upper, const Spinor2& lower);
Spinor2 upper_block(const Spinor4& s);
Spinor2 lower_block(const Spinor4& s);

// ---------------------------------------------------------------------------
// Differentiation

/// Fourth-order finite-difference derivative of order 1 or 2. Central
/// stencils in the interior; dirichlet uses ghost zeros beyond the endpoints
/// and returns zero at them, decay_truncation switches to one-sided
/// fourth-order stencils at the two nodes nearest each edge.
GridFunction differentiate(const GridFunction& f, int order);

// ---------------------------------------------------------------------------
// Inner products and norms (composite trapezoidal rule)

enum class Weight { definite, sigma3 };

Complex inner_product(const GridFunction& f, const GridFunction& g);
Complex inner_product(const Spinor2& f, const Spinor2& g, Weight weight = Weight::definite);
Complex inner_product(const Spinor4& f, const Spinor4& g);

double norm(const GridFunction& f);
double norm(const Spinor2& f);
double norm(const Spinor4& f);

/// Trapezoidal norm restricted to Grid::interior_range(). Residuals of
/// pointwise operator identities are measured with this norm.
double interior_norm(const GridFunction& f);
double interior_norm(const Spinor2& f);
double interior_norm(const Spinor4& f);

/// Trapezoidal inner product restricted to Grid::interior_range().
Complex interior_inner_product(const GridFunction& f, const GridFunction& g);
Complex interior_inner_product(const Spinor2& f, const Spinor2& g);

/// Interior relative residual: interior_norm(diff) / interior_norm(reference).
template <typename F>
double relative_residual(const F& diff, const F& reference) {
  const double denom = interior_norm(reference);
  if (denom == 0.0) throw Error("relative residual against a zero reference");
  return interior_norm(diff) / denom;
}

/// Trapezoidal integral of real samples on the grid.
double integrate(const Grid& grid, std::span<const double> samples);

GridFunction normalized(const GridFunction& f);
Spinor2 normalized(const Spinor2& f);
Spinor4 normalized(const Spinor4& f);

}  // namespace facdirac
