#include "facdirac/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace facdirac {

double SymmetricTridiagonal::frobenius_norm() const {
  double acc = 0.0;
  for (double d : diagonal) acc += d * d;
  for (double e : off_diagonal) acc += 2.0 * e * e;
  return std::sqrt(acc);
}

std::vector<double> SymmetricTridiagonal::apply(const std::vector<double>& v) const {
  const std::size_t n = dimension();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diagonal[i] * v[i];
    if (i > 0) acc += off_diagonal[i - 1] * v[i - 1];
    if (i + 1 < n) acc += off_diagonal[i] * v[i + 1];
    out[i] = acc;
  }
  return out;
}

SymmetricTridiagonal discretize_schrodinger(const Grid& grid,
                                            const std::function<double(double)>& potential) {
  const std::size_t n = grid.size() - 2;
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  SymmetricTridiagonal op{grid, std::vector<double>(n), std::vector<double>(n - 1, -inv_h2)};
  for (std::size_t i = 0; i < n; ++i) op.diagonal[i] = 2.0 * inv_h2 + potential(grid.x(i + 1));
  return op;
}

SymmetricTridiagonal discretize_ground_state_gauge(const Grid& grid, const std::function<double(double)>& g,
                                                   double e0) {
  const std::size_t n = grid.size() - 2;
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> p(n + 1);  // g^2 at midpoints between interior nodes
  std::vector<double> w(n);
  for (std::size_t i = 0; i <= n; ++i) {
    const double gm = g(grid.x(i) + 0.5 * h);
    p[i] = gm * gm;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double gi = g(grid.x(i + 1));
    if (!(gi > 0.0)) throw Error("gauge function must be positive on interior nodes");
    w[i] = gi * gi;
  }
  // Zero flux through the outermost half-cells.
  p.front() = 0.0;
  p.back() = 0.0;
  SymmetricTridiagonal op{grid, std::vector<double>(n), std::vector<double>(n - 1)};
  for (std::size_t i = 0; i < n; ++i) {
    op.diagonal[i] = (p[i] + p[i + 1]) * inv_h2 / w[i] + e0;
    if (i + 1 < n) op.off_diagonal[i] = -p[i + 1] * inv_h2 / std::sqrt(w[i] * w[i + 1]);
  }
  return op;
}

SymmetricTridiagonal discretize_potential(const Grid& grid,
                                          const std::function<double(double)>& potential) {
  const std::size_t n = grid.size() - 2;
  SymmetricTridiagonal op{grid, std::vector<double>(n), std::vector<double>(n - 1, 0.0)};
  for (std::size_t i = 0; i < n; ++i) op.diagonal[i] = potential(grid.x(i + 1));
  return op;
}

int count_eigenvalues_below(const SymmetricTridiagonal& op, double x) {
  const auto& d = op.diagonal;
  const auto& e = op.off_diagonal;
  constexpr double kTiny = 1e-300;
  int count = 0;
  double q = d[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (std::abs(q) < kTiny) q = kTiny;
    q = (d[i] - x) - e[i - 1] * e[i - 1] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

namespace {

std::pair<double, double> gershgorin(const SymmetricTridiagonal& op) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = op.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(op.off_diagonal[i - 1]);
    if (i + 1 < n) r += std::abs(op.off_diagonal[i]);
    lo = std::min(lo, op.diagonal[i] - r);
    hi = std::max(hi, op.diagonal[i] + r);
  }
  return {lo, hi};
}

// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double bisect_eigenvalue(const SymmetricTridiagonal& op, int k, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_eigenvalues_below(op, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Solves (T - shift) y = b for tridiagonal T with partial pivoting.
std::vector<double> shifted_solve(const SymmetricTridiagonal& op, double shift,
                                  std::vector<double> b) {
  const std::size_t n = op.dimension();
  std::vector<double> dl(op.off_diagonal), d(op.diagonal), du(op.off_diagonal), du2(n, 0.0);
  std::vector<char> swapped(n, 0);
  for (auto& v : d) v -= shift;
  const double eps = std::numeric_limits<double>::epsilon() * std::max(1.0, op.frobenius_norm());

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = eps;
      const double f = dl[i] / d[i];
      dl[i] = f;
      d[i + 1] -= f * du[i];
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = f;
      const double tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - f * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = eps;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (swapped[i]) {
      std::swap(b[i], b[i + 1]);
    }
    b[i + 1] -= dl[i] * b[i];
  }
  b[n - 1] /= d[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
  for (std::size_t ii = n - 2; ii-- > 0;) {
    b[ii] = (b[ii] - du[ii] * b[ii + 1] - du2[ii] * b[ii + 2]) / d[ii];
  }
  return b;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void scale_to_unit(std::vector<double>& v) {
  const double nrm = std::sqrt(dot(v, v));
  for (auto& x : v) x /= nrm;
}

}  // namespace

std::vector<EigenPair> solve_symmetric_spectrum(const SymmetricTridiagonal& op, int count) {
  const auto n = static_cast<int>(op.dimension());
  if (count < 0) throw Error("eigenpair count must be non-negative");
  if (count > op.grid.n_points() || count > n) {
    throw Error("requested " + std::to_string(count) + " eigenpairs from an operator of dimension " +
                std::to_string(n));
  }
  const auto [glo, ghi] = gershgorin(op);
  const double anorm = op.frobenius_norm();
  const double span = std::max(ghi - glo, 1.0);
  const double lo = glo - 1e-3 * span;
  const double hi = ghi + 1e-3 * span;

  std::vector<EigenPair> pairs;
  std::vector<std::vector<double>> found;
  pairs.reserve(static_cast<std::size_t>(count));

  for (int k = 0; k < count; ++k) {
    const double lambda = bisect_eigenvalue(op, k, lo, hi);

    // Deterministic, non-symmetric start vector.
    std::vector<double> v(op.dimension());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
    scale_to_unit(v);

    const double shift = lambda + 1e-14 * std::max(std::abs(lambda), 1.0);
    for (int it = 0; it < 4; ++it) {
      v = shifted_solve(op, shift, v);
      // Exact eigenvectors are mutually orthogonal; this also separates
      // degenerate pairs.
      for (const auto& prev : found) {
        const double c = dot(prev, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * prev[i];
      }
      scale_to_unit(v);
    }

    const auto av = op.apply(v);
    double r2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) r2 += (av[i] - lambda * v[i]) * (av[i] - lambda * v[i]);

    // Sign convention: the largest-magnitude entry is positive.
    const auto peak = std::max_element(v.begin(), v.end(),
                                       [](double a, double b) { return std::abs(a) < std::abs(b); });
    if (*peak < 0.0) {
      for (auto& x : v) x = -x;
    }

    GridFunction vec(op.grid);
    for (std::size_t i = 0; i < v.size(); ++i) vec[i + 1] = v[i];
    pairs.push_back({lambda, normalized(vec), std::sqrt(r2) / std::max(anorm, 1e-300)});
    found.push_back(std::move(v));
  }
  return pairs;
}

std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a,
                                       std::vector<std::vector<double>>* vectors) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw Error("jacobi eigensolver needs a square matrix");
  }
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p];
          const double vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i][i] < a[j][j]; });
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a[order[i]][order[i]];
  if (vectors != nullptr) {
    vectors->assign(n, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) (*vectors)[r][c] = v[r][order[c]];
  }
  return values;
}

}  // namespace facdirac
