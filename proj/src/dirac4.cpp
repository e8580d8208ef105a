#include "facdirac/dirac4.hpp"

#include <algorithm>
#include <cmath>

#include "facdirac/eigensolver.hpp"

namespace facdirac {

namespace {
constexpr Complex kI{0.0, 1.0};
}

MassiveOperator::MassiveOperator(DiracOperator base, double m0) : base_(std::move(base)), m0_(m0) {
  if (base_.model().kind() != HierarchyKind::increasing) {
    throw Error("the massive extension is defined for the increasing hierarchy only");
  }
  if (!(m0_ >= 0.0) || !std::isfinite(m0_)) throw Error("mass m0 must be finite and non-negative");
}

Spinor4 massive_apply(const MassiveOperator& op, const Spinor4& xi) {
  const auto up = upper_block(xi);
  const auto lo = lower_block(xi);
  const Complex m0 = op.m0();
  return make_spinor(m0 * up + dirac_apply(op.base(), lo), dirac_apply(op.base(), up) - m0 * lo);
}

double massive_eigen_residual(const MassiveOperator& op, double energy, const Spinor4& xi) {
  return relative_residual(massive_apply(op, xi) - Complex(energy) * xi, xi);
}

double massive_energy(const MassiveOperator& op, int k, Branch branch) {
  const double mu = std::abs(dirac_energy(op.base(), k, Sign::plus));
  const double e = std::hypot(mu, op.m0());
  return branch == Branch::plus_energy ? e : -e;
}

std::vector<MassiveLevel> massive_spectrum(const MassiveOperator& op, int k_max) {
  if (k_max < 0) throw Error("k_max must be non-negative");
  std::vector<MassiveLevel> out;
  for (int k = 0; k <= k_max; ++k) {
    const int deg = (level_exists(op.base(), k, Sign::plus) ? 1 : 0) + (level_exists(op.base(), k, Sign::minus) ? 1 : 0);
    for (Branch b : {Branch::plus_energy, Branch::minus_energy}) out.push_back({op.n(), k, b, massive_energy(op, k, b), deg});
  }
  std::stable_sort(out.begin(), out.end(), [](const MassiveLevel& a, const MassiveLevel& b) { return a.energy < b.energy; });
  return out;
}

double massive_coefficient(const MassiveOperator& op, int k, Sign s) {
  const double eps = dirac_energy(op.base(), k, s);
  return eps / (massive_energy(op, k, Branch::plus_energy) + op.m0());
}

Spinor4 massive_eigenstate(const MassiveOperator& op, int k, Sign s, Branch branch, const Grid& grid) {
  const auto psi = eigenspinor(op.base(), k, s, grid).spinor;
  const Complex c = massive_coefficient(op, k, s);
  if (branch == Branch::plus_energy) return normalized(make_spinor(psi, c * psi));
  return normalized(make_spinor(-c * psi, psi));
}

Spinor2 apply_m_minus(const Spinor2& psi) { return make_spinor(-2.0 * kI * psi[1], GridFunction(psi.grid())); }

Spinor4 apply_global(const Model& model, int n, double m0, GlobalKind kind, const Spinor4& xi) {
  const auto up = upper_block(xi);
  const auto lo = lower_block(xi);
  auto r = [&](const Spinor2& s) { return apply_intertwiner(model, n, IntertwinerKind::R_minus, s); };
  auto t = [&](const Spinor2& s) { return apply_intertwiner(model, n, IntertwinerKind::T_minus, s); };
  const Complex m = m0;
  switch (kind) {
    case GlobalKind::calR:
      return make_spinor(r(up), r(lo));
    case GlobalKind::calR_tilde:
      return make_spinor(-m * apply_m_minus(up) + r(lo), r(up) + m * apply_m_minus(lo));
    case GlobalKind::calT:
      return make_spinor(-t(up), t(lo));
    case GlobalKind::calT_tilde:
      return make_spinor(m * apply_m_minus(up) - t(lo), t(up) + m * apply_m_minus(lo));
  }
  throw Error("unknown global intertwiner kind");
}

double global_intertwine_residual(const Model& model, int n, double m0, GlobalKind kind, const Spinor4& xi) {
  const MassiveOperator here(DiracOperator(model, n), m0);
  const MassiveOperator next(DiracOperator(model, n + 1), m0);
  const auto lhs = apply_global(model, n, m0, kind, massive_apply(here, xi));
  const auto rhs = massive_apply(next, apply_global(model, n, m0, kind, xi));
  return relative_residual(lhs - rhs, xi);
}

double m_minus_identity_residual(const Model& model, int n, SymmetryProduct which, const Spinor2& psi) {
  if (model.kind() != HierarchyKind::increasing) throw Error("M^- identities hold for the increasing hierarchy");
  const DiracOperator h(model, n);
  const DiracOperator h1(model, n + 1);
  const auto a = apply_m_minus(dirac_apply(h, psi));
  const auto b = dirac_apply(h1, apply_m_minus(psi));
  if (which == SymmetryProduct::S) {
    const auto r = apply_intertwiner(model, n, IntertwinerKind::R_minus, psi);
    return relative_residual(a + b + Complex(2.0) * r, psi);
  }
  const auto t = apply_intertwiner(model, n, IntertwinerKind::T_minus, psi);
  return relative_residual(a - b + Complex(2.0) * t, psi);
}

GramRank global_gram_rank(const Model& model, int n, double m0, const Spinor4& xi, double threshold) {
  std::vector<Spinor4> images;
  for (GlobalKind k : {GlobalKind::calR, GlobalKind::calR_tilde, GlobalKind::calT, GlobalKind::calT_tilde})
    images.push_back(apply_global(model, n, m0, k, xi));
  // Complex Hermitian Gram matrix as a real symmetric one of twice the size;
  // every eigenvalue then appears twice.
  constexpr std::size_t kN = 4;
  std::vector<std::vector<double>> g(2 * kN, std::vector<double>(2 * kN));
  for (std::size_t i = 0; i < kN; ++i) {
    for (std::size_t j = 0; j < kN; ++j) {
      const Complex v = inner_product(images[i], images[j]);
      g[i][j] = v.real();
      g[i + kN][j + kN] = v.real();
      g[i][j + kN] = -v.imag();
      g[i + kN][j] = v.imag();
    }
  }
  auto ev = jacobi_eigenvalues(g);
  GramRank out;
  for (std::size_t i = 0; i < 2 * kN; i += 2) out.singular_values.push_back(std::sqrt(std::max(ev[i], 0.0)));
  std::sort(out.singular_values.rbegin(), out.singular_values.rend());
  out.rank = 0;
  for (double s : out.singular_values) out.rank += s > threshold * out.singular_values.front() ? 1 : 0;
  return out;
}

}  // namespace facdirac
