#include "facdirac/dirac2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "facdirac/eigensolver.hpp"
#include "facdirac/hierarchy.hpp"

namespace facdirac {

namespace {

constexpr Complex kI{0.0, 1.0};

bool increasing(const Model& m) { return m.kind() == HierarchyKind::increasing; }

GridFunction lower_op(const Model& m, int n, const GridFunction& f) { return apply_factor(m, n, Factor::lower, f); }
GridFunction raise_op(const Model& m, int n, const GridFunction& f) { return apply_factor(m, n, Factor::raise, f); }

Spinor2 h_apply(const Model& m, int n, const Spinor2& psi) { return dirac_apply(DiracOperator(m, n), psi); }

// (h - a)(h - b) psi
Spinor2 quadratic(const Model& m, int n, double a, double b, const Spinor2& psi) {
  auto t = h_apply(m, n, psi) - Complex(b) * psi;
  return h_apply(m, n, t) - Complex(a) * t;
}

}  // namespace

DiracOperator::DiracOperator(Model model, int n) : model_(std::move(model)), n_(n) { require_valid_n(model_, n_); }

Spinor2 dirac_apply(const DiracOperator& op, const Spinor2& psi) {
  const Model& m = op.model();
  const int n = op.n();
  const Complex mu = op.mu();
  if (increasing(m)) {
    return make_spinor(mu * psi[0] + kI * raise_op(m, n, psi[1]), -kI * lower_op(m, n, psi[0]) - mu * psi[1]);
  }
  return make_spinor(mu * psi[0] + kI * lower_op(m, n, psi[1]), kI * raise_op(m, n, psi[0]) - mu * psi[1]);
}

double dirac_square_residual(const DiracOperator& op, const Spinor2& psi) {
  const Model& m = op.model();
  const int n = op.n();
  const auto hh = dirac_apply(op, dirac_apply(op, psi));
  if (increasing(m)) {
    const auto ref = make_spinor(apply_schrodinger(m, n, psi[0]), apply_schrodinger(m, n + 1, psi[1]));
    return relative_residual(hh - ref, psi);
  }
  const auto ref = make_spinor(apply_schrodinger(m, n - 1, psi[0]), apply_schrodinger(m, n, psi[1]));
  return relative_residual(hh + ref, psi);
}

double dirac_eigen_residual(const DiracOperator& op, double epsilon, const Spinor2& psi) {
  return relative_residual(dirac_apply(op, psi) - Complex(epsilon) * psi, psi);
}

bool level_exists(const DiracOperator& op, int k, Sign sign) {
  const Model& m = op.model();
  if (!m.k_valid(op.n(), k)) return false;
  if (k > 0) return true;
  return increasing(m) ? sign == Sign::plus : sign == Sign::minus;
}

SpectralLabels spectral_labels(const Model& model, int n, int k, Sign sign) {
  require_valid_nk(model, n, k);
  if (increasing(model)) {
    const double l = n + k;
    return {l, sign == Sign::plus ? l + 0.5 : l - 0.5};
  }
  const double lambda = n - k;
  return {lambda, sign == Sign::minus ? lambda + 0.5 : lambda - 0.5};
}

double dirac_energy(const DiracOperator& op, int k, Sign sign) {
  const Model& m = op.model();
  require_valid_nk(m, op.n(), k);
  const int idx = increasing(m) ? op.n() + k : op.n() - k;
  return sign_value(sign) * m.mu(idx);
}

DiracEigenstate eigenspinor(const DiracOperator& op, int k, Sign sign, const Grid& grid) {
  const Model& m = op.model();
  const int n = op.n();
  require_valid_nk(m, n, k);
  if (!level_exists(op, k, sign)) {
    throw Error(std::string("state absent from spectrum: k=") + std::to_string(k) + " sign " + sign_char(sign) +
                " of " + m.id() + " n=" + std::to_string(n));
  }
  const double eps = dirac_energy(op, k, sign);
  SpectrumEntry entry{n, k, sign, eps, Provenance::analytic, spectral_labels(m, n, k, sign)};
  const GridFunction zero(grid);

  if (k == 0) {
    const auto psi0 = eigenfunction(m, n, 0, grid);
    if (increasing(m)) return {entry, make_spinor(psi0, zero), 1.0, 0.0};
    return {entry, make_spinor(zero, psi0), 0.0, 1.0};
  }

  const double big = std::abs(eps);
  const double mu = m.mu(n);
  if (increasing(m)) {
    const double a = sign == Sign::plus ? std::sqrt(big + mu) : std::sqrt(big - mu);
    const double b = sign == Sign::plus ? std::sqrt(big - mu) : std::sqrt(big + mu);
    const Complex phase = sign == Sign::plus ? -kI : kI;
    auto spinor = make_spinor(Complex(a) * eigenfunction(m, n, k, grid),
                              phase * b * eigenfunction(m, n + 1, k - 1, grid));
    return {entry, normalized(spinor), a, b};
  }
  const double a = sign == Sign::plus ? std::sqrt(mu + big) : std::sqrt(mu - big);
  const double b = sign == Sign::plus ? std::sqrt(mu - big) : std::sqrt(mu + big);
  auto spinor = make_spinor(Complex(a) * eigenfunction(m, n - 1, k - 1, grid), kI * b * eigenfunction(m, n, k, grid));
  return {entry, normalized(spinor), a, b};
}

std::vector<SpectrumEntry> dirac_spectrum(const DiracOperator& op, int k_max) {
  const Model& m = op.model();
  if (k_max < 0) throw Error("k_max must be non-negative");
  if (!m.k_valid(op.n(), k_max)) {
    throw Error("k_max=" + std::to_string(k_max) + " is outside discrete spectrum of " + m.id() +
                " n=" + std::to_string(op.n()));
  }
  std::vector<SpectrumEntry> out;
  for (int k = 0; k <= k_max; ++k) {
    for (Sign s : {Sign::plus, Sign::minus}) {
      if (!level_exists(op, k, s)) continue;
      out.push_back({op.n(), k, s, dirac_energy(op, k, s), Provenance::analytic, spectral_labels(m, op.n(), k, s)});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.epsilon < b.epsilon; });
  return out;
}

std::vector<SpectrumEntry> numeric_dirac_spectrum(const DiracOperator& op, int k_max, const Grid& grid) {
  const Model& m = op.model();
  const int n = op.n();
  auto analytic = dirac_spectrum(op, k_max);

  // Blocks of h^2: (H_n, H_{n+1}) increasing, -(H_{n-1}, H_n) decreasing.
  // `main` holds the block that carries psi^k, `side` the one with psi^{k-1}.
  const int main_index = n;
  const int side_index = increasing(m) ? n + 1 : n - 1;
  auto block = [&](int idx, int count) {
    if (count <= 0) return std::vector<EigenPair>{};
    return solve_symmetric_spectrum(schrodinger_oracle(m, idx, grid), count);
  };
  const auto main_pairs = block(main_index, k_max + 1);
  const auto side_pairs = block(side_index, k_max);
  const double mu = m.mu(n);
  const GridFunction zero(grid);

  for (auto& e : analytic) {
    const double lambda = main_pairs[static_cast<std::size_t>(e.k)].value;
    const double magnitude = std::sqrt(std::abs(lambda));
    const auto& u = main_pairs[static_cast<std::size_t>(e.k)].vector;
    Spinor2 candidate = increasing(m) ? make_spinor(u, zero) : make_spinor(zero, u);
    if (e.k > 0) {
      // Oracle eigenvectors carry arbitrary signs; fix the relative one by the
      // ladder phase a^-_n u = +c v, then use this entry's coefficients.
      GridFunction v = side_pairs[static_cast<std::size_t>(e.k - 1)].vector;
      if (inner_product(v, lower_op(m, n, u)).real() < 0.0) v *= -1.0;
      const double root_sum = std::sqrt(magnitude + mu);
      const double root_diff = std::sqrt(std::abs(magnitude - mu));
      const double a = e.sign == Sign::plus ? root_sum : root_diff;
      const double b = e.sign == Sign::plus ? root_diff : root_sum;
      candidate = increasing(m) ? make_spinor(Complex(a) * u, -kI * (sign_value(e.sign) * b) * v)
                                : make_spinor(Complex(a) * v, kI * b * u);
    }
    // Rayleigh quotient in the product that makes h self-adjoint.
    const Weight w = increasing(m) ? Weight::definite : Weight::sigma3;
    e.epsilon = (inner_product(candidate, dirac_apply(op, candidate), w) / inner_product(candidate, candidate, w)).real();
    e.provenance = Provenance::numeric;
  }
  return analytic;
}

// ---------------------------------------------------------------------------

int intertwined_index(const Model& model, int n) { return increasing(model) ? n + 1 : n - 1; }

Spinor2 apply_intertwiner(const Model& m, int n, IntertwinerKind kind, const Spinor2& psi) {
  require_valid_n(m, n);
  if (increasing(m)) {
    require_valid_n(m, n + 1);
    const double dm = m.mu(n + 1) - m.mu(n);
    const double sm = m.mu(n + 1) + m.mu(n);
    switch (kind) {
      case IntertwinerKind::R_minus:
        return make_spinor(lower_op(m, n, psi[0]) + kI * dm * psi[1], lower_op(m, n + 1, psi[1]));
      case IntertwinerKind::T_minus:
        return make_spinor(lower_op(m, n, psi[0]) - kI * sm * psi[1], -lower_op(m, n + 1, psi[1]));
      case IntertwinerKind::R_plus:
        return make_spinor(raise_op(m, n, psi[0]), -kI * dm * psi[0] + raise_op(m, n + 1, psi[1]));
      case IntertwinerKind::T_plus:
        return make_spinor(raise_op(m, n, psi[0]), kI * sm * psi[0] - raise_op(m, n + 1, psi[1]));
    }
  }
  if (!m.n_valid(n - 1)) {
    throw Error("hierarchy index " + std::to_string(n - 1) + " below the range of " + m.id() +
                " is needed by the intertwiners of n=" + std::to_string(n));
  }
  const double dm = m.mu(n - 1) - m.mu(n);
  const double sm = m.mu(n - 1) + m.mu(n);
  switch (kind) {
    case IntertwinerKind::R_minus:
      return make_spinor(lower_op(m, n - 1, psi[0]), kI * dm * psi[0] + lower_op(m, n, psi[1]));
    case IntertwinerKind::T_minus:
      return make_spinor(lower_op(m, n - 1, psi[0]), kI * sm * psi[0] - lower_op(m, n, psi[1]));
    case IntertwinerKind::R_plus:
      return make_spinor(raise_op(m, n - 1, psi[0]) + kI * dm * psi[1], raise_op(m, n, psi[1]));
    case IntertwinerKind::T_plus:
      return make_spinor(raise_op(m, n - 1, psi[0]) + kI * sm * psi[1], -raise_op(m, n, psi[1]));
  }
  throw Error("unknown intertwiner kind");
}

double intertwine_residual(const Model& m, int n, const Spinor2& psi) {
  const int p = intertwined_index(m, n);
  const auto lhs = apply_intertwiner(m, n, IntertwinerKind::R_minus, h_apply(m, n, psi));
  const auto rhs = h_apply(m, p, apply_intertwiner(m, n, IntertwinerKind::R_minus, psi));
  return relative_residual(lhs - rhs, psi);
}

double anti_intertwine_residual(const Model& m, int n, const Spinor2& psi) {
  const int p = intertwined_index(m, n);
  const auto lhs = apply_intertwiner(m, n, IntertwinerKind::T_minus, h_apply(m, n, psi));
  const auto rhs = h_apply(m, p, apply_intertwiner(m, n, IntertwinerKind::T_minus, psi));
  return relative_residual(lhs + rhs, psi);
}

double symmetry_product_residual(const Model& m, int n, SymmetryProduct which, const Spinor2& psi) {
  const bool r = which == SymmetryProduct::S;
  const auto down = apply_intertwiner(m, n, r ? IntertwinerKind::R_minus : IntertwinerKind::T_minus, psi);
  // The raising operator that maps h_p back to h_n is labelled by n itself.
  const auto product = apply_intertwiner(m, n, r ? IntertwinerKind::R_plus : IntertwinerKind::T_plus, down);
  Spinor2 expected = Spinor2::zeros(psi.grid());
  const double mu = m.mu(n);
  if (increasing(m)) {
    const double mu1 = m.mu(n + 1);
    expected = r ? quadratic(m, n, mu, -mu1, psi) : quadratic(m, n, mu, mu1, psi);
  } else {
    const double mu1 = m.mu(n - 1);
    expected = r ? quadratic(m, n, -mu, mu1, psi) : quadratic(m, n, -mu, -mu1, psi);
    expected *= -1.0;
  }
  return relative_residual(product - expected, psi);
}

Spinor2 symmetry_commutator(const Model& m, int n, SymmetryProduct which, const Spinor2& psi) {
  const bool r = which == SymmetryProduct::S;
  const auto minus = r ? IntertwinerKind::R_minus : IntertwinerKind::T_minus;
  const auto plus = r ? IntertwinerKind::R_plus : IntertwinerKind::T_plus;
  // Neighbour p whose intertwiner lands on h_n.
  const int p = increasing(m) ? n - 1 : n + 1;
  require_valid_n(m, p);
  const auto first = apply_intertwiner(m, n, plus, apply_intertwiner(m, n, minus, psi));
  const auto second = apply_intertwiner(m, p, minus, apply_intertwiner(m, p, plus, psi));
  return first - second;
}

double commutator_residual(const Model& m, int n, SymmetryProduct which, const Spinor2& psi) {
  const double mp = m.mu(n + 1);
  const double mn = m.mu(n);
  const double mm = m.mu(n - 1);
  const auto h = h_apply(m, n, psi);
  Spinor2 expected = which == SymmetryProduct::S
                         ? Complex(mp - 2.0 * mn + mm) * h + Complex(mn * (mm - mp)) * psi
                         : Complex(-(mp + 2.0 * mn + mm)) * h + Complex(mn * (mp - mm)) * psi;
  return relative_residual(symmetry_commutator(m, n, which, psi) - expected, psi);
}

Model shift_to_massless(const Model& model, int n0) { return model.shifted(n0); }

// ---------------------------------------------------------------------------

namespace {

using SparseMatrix = std::map<std::pair<std::size_t, std::size_t>, Complex>;

SparseMatrix discretize_dirac(const DiracOperator& op, const Grid& grid) {
  const Model& m = op.model();
  const int n = op.n();
  const std::size_t dim = grid.size() - 2;
  const double h = grid.spacing();
  static constexpr double kStencil[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  SparseMatrix a;
  auto add = [&](std::size_t r, std::size_t c, Complex v) {
    if (v != Complex(0.0)) a[{r, c}] += v;
  };
  const double mu = op.mu();
  // Block (row component, column component) filled with s * (d * D + W).
  auto factor_block = [&](std::size_t rc, std::size_t cc, Complex s, double d, int idx) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double x = grid.x(i + 1);
      add(rc * dim + i, cc * dim + i, s * m.superpotential(idx, x));
      for (int o = -2; o <= 2; ++o) {
        const auto j = static_cast<std::ptrdiff_t>(i) + o;
        if (o == 0 || j < 0 || j >= static_cast<std::ptrdiff_t>(dim)) continue;
        add(rc * dim + i, cc * dim + static_cast<std::size_t>(j), s * d * kStencil[o + 2] / (12.0 * h));
      }
    }
  };
  for (std::size_t i = 0; i < dim; ++i) {
    add(i, i, mu);
    add(dim + i, dim + i, -mu);
  }
  if (increasing(m)) {
    factor_block(0, 1, kI, -1.0, n);   // i a^+_n
    factor_block(1, 0, -kI, 1.0, n);   // -i a^-_n
  } else {
    factor_block(0, 1, kI, 1.0, n);    // i a^-_n
    factor_block(1, 0, kI, -1.0, n);   // i a^+_n
  }
  return a;
}

}  // namespace

double hermiticity_residual(const DiracOperator& op, const Grid& grid, Weight weight) {
  const auto a = discretize_dirac(op, grid);
  const std::size_t dim = grid.size() - 2;
  auto w = [&](std::size_t r) { return (weight == Weight::sigma3 && r >= dim) ? -1.0 : 1.0; };
  auto lookup = [&](std::size_t r, std::size_t c) {
    const auto it = a.find({r, c});
    return it == a.end() ? Complex(0.0) : it->second;
  };
  double diff2 = 0.0;
  double norm2 = 0.0;
  for (const auto& [rc, v] : a) {
    const auto [r, c] = rc;
    norm2 += std::norm(v);
    diff2 += std::norm(v - w(r) * w(c) * std::conj(lookup(c, r)));
    if (a.find({c, r}) == a.end()) diff2 += std::norm(v);
  }
  return std::sqrt(diff2 / norm2);
}

double pseudo_hermiticity_residual(const DiracOperator& op, const Grid& grid) {
  return hermiticity_residual(op, grid, increasing(op.model()) ? Weight::definite : Weight::sigma3);
}

}  // namespace facdirac
