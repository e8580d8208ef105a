// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "facdirac/dirac2.hpp"
#include "facdirac/dirac4.hpp"
#include "facdirac/eigensolver.hpp"
#include "facdirac/geometry.hpp"
#include "facdirac/hierarchy.hpp"

using namespace facdirac;

namespace {

const Model kTrig = Model::trig_pt();
const Model kHyp = Model::hyp_pt();
constexpr std::uint64_t kSeed = 20240917;
constexpr int kTestCount = 20;

struct Outcome {
  bool pass;
  std::string detail;
};

// Tracks the worst value of a quantity against a bound.
struct Worst {
  double value;
  bool upper;  // true: value must stay below bound; false: above
  double bound;

  static Worst below(double bound) { return {0.0, true, bound}; }
  static Worst above(double bound) { return {INFINITY, false, bound}; }
  void add(double x) {
    if (std::isnan(x)) {
      value = NAN;
    } else if (!std::isnan(value)) {
      value = upper ? std::max(value, x) : std::min(value, x);
    }
  }
  bool ok() const { return upper ? value < bound : value > bound; }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<Spinor2> test_spinors(const Model& m, const Grid& g, std::uint64_t seed) {
  const auto fs = gaussian_test_functions(m, g, seed, 2 * kTestCount);
  std::vector<Spinor2> out;
  for (int i = 0; i < kTestCount; ++i) out.push_back(make_spinor(fs[2 * i], Complex(0.3, -0.7) * fs[2 * i + 1]));
  return out;
}

std::vector<Spinor4> test_bispinors(const Grid& g, std::uint64_t seed) {
  const auto fs = gaussian_test_functions(kTrig, g, seed, 4 * kTestCount);
  std::vector<Spinor4> out;
  for (int i = 0; i < kTestCount; ++i) {
    out.push_back(make_spinor(make_spinor(fs[4 * i], Complex(0.2, 0.9) * fs[4 * i + 1]),
                              make_spinor(Complex(-0.6, 0.4) * fs[4 * i + 2], Complex(0.5, -0.5) * fs[4 * i + 3])));
  }
  return out;
}

struct Family2 {
  const Model& model;
  std::vector<int> ns;
};

std::vector<Family2> dirac_families() { return {{kTrig, {0, 1, 2}}, {kHyp, {2, 3, 4}}}; }

int level_k_max(const Model& m, int n) { return m.kind() == HierarchyKind::increasing ? 4 : n - 1; }

// ---------------------------------------------------------------------------

Outcome scalar_trig_spectrum() {
  const Grid g(0.0, M_PI, 2001, Boundary::dirichlet);
  const auto pairs = solve_symmetric_spectrum(discretize_schrodinger(g, [](double x) { return potential(kTrig, 1, x); }), 4);
  Worst rel = Worst::below(1e-3);
  for (int k = 0; k < 4; ++k) {
    const double exact = (k + 1.5) * (k + 1.5);
    rel.add(std::abs(pairs[static_cast<std::size_t>(k)].value - exact) / exact);
  }
  return {rel.ok(), "max relative error " + fmt("%.3g", rel.value)};
}

Outcome scalar_hyp_spectrum() {
  const Grid g(-20.0, 20.0, 4001, Boundary::decay_truncation);
  const auto op = schrodinger_oracle(kHyp, 3, g);
  const int bound = count_eigenvalues_below(op, 0.0);
  const auto pairs = solve_symmetric_spectrum(op, 3);
  const double exact[3] = {-6.25, -2.25, -0.25};
  Worst err = Worst::below(1e-3);
  for (int k = 0; k < 3; ++k) err.add(std::abs(pairs[static_cast<std::size_t>(k)].value - exact[k]));
  return {err.ok() && bound == 3,
          std::to_string(bound) + " bound states, max abs error " + fmt("%.3g", err.value)};
}

Outcome dirac_spectra() {
  Worst res = Worst::below(1e-4);
  int states = 0;
  for (const auto& fam : dirac_families()) {
    const Grid g = fam.model.default_grid();
    for (int n : fam.ns) {
      const DiracOperator op(fam.model, n);
      for (const auto& e : dirac_spectrum(op, level_k_max(fam.model, n))) {
        const double expected = sign_value(e.sign) * (fam.model.kind() == HierarchyKind::increasing
                                                          ? fam.model.mu(n + e.k)
                                                          : fam.model.mu(n - e.k));
        const auto st = eigenspinor(op, e.k, e.sign, g);
        res.add(e.epsilon == expected ? dirac_eigen_residual(op, expected, st.spinor) : INFINITY);
        ++states;
      }
    }
  }
  return {res.ok(), std::to_string(states) + " eigenspinors, max residual " + fmt("%.3g", res.value)};
}

Outcome intertwining() {
  Worst r = Worst::below(1e-5);
  Worst t = Worst::below(1e-5);
  for (const auto& fam : dirac_families()) {
    const Grid g = fam.model.default_grid();
    for (int n : fam.ns) {
      for (const auto& s : test_spinors(fam.model, g, kSeed + static_cast<std::uint64_t>(n))) {
        r.add(intertwine_residual(fam.model, n, s));
        t.add(anti_intertwine_residual(fam.model, n, s));
      }
    }
  }
  return {r.ok() && t.ok(), "max R residual " + fmt("%.3g", r.value) + ", max T residual " + fmt("%.3g", t.value)};
}

Outcome annihilator_kernels() {
  Worst kernel = Worst::below(1e-5);
  Worst image = Worst::above(1e-3);
  for (const auto& fam : dirac_families()) {
    const Grid g = fam.model.default_grid();
    const bool inc = fam.model.kind() == HierarchyKind::increasing;
    for (int n : fam.ns) {
      const DiracOperator op(fam.model, n);
      for (const auto& e : dirac_spectrum(op, level_k_max(fam.model, n))) {
        const auto st = eigenspinor(op, e.k, e.sign, g);
        const Sign r_first = inc ? Sign::minus : Sign::plus;
        const Sign t_first = inc ? Sign::plus : Sign::minus;
        const bool r_kernel = e.k == 0 || (e.k == 1 && e.sign == r_first);
        const bool t_kernel = e.k == 0 || (e.k == 1 && e.sign == t_first);
        const double rn = interior_norm(apply_intertwiner(fam.model, n, IntertwinerKind::R_minus, st.spinor));
        const double tn = interior_norm(apply_intertwiner(fam.model, n, IntertwinerKind::T_minus, st.spinor));
        (r_kernel ? kernel : image).add(rn);
        (t_kernel ? kernel : image).add(tn);
      }
    }
  }
  return {kernel.ok() && image.ok(),
          "max kernel norm " + fmt("%.3g", kernel.value) + ", min image norm " + fmt("%.3g", image.value)};
}

Outcome symmetry_products() {
  Worst prod = Worst::below(1e-5);
  Worst comm = Worst::below(1e-5);
  for (const auto& fam : dirac_families()) {
    const Grid g = fam.model.default_grid();
    for (int n : fam.ns) {
      for (const auto& s : test_spinors(fam.model, g, kSeed + 100 + static_cast<std::uint64_t>(n))) {
        prod.add(symmetry_product_residual(fam.model, n, SymmetryProduct::S, s));
        prod.add(symmetry_product_residual(fam.model, n, SymmetryProduct::S_prime, s));
      }
    }
  }
  const Grid g = kTrig.default_grid();
  for (const auto& s : test_spinors(kTrig, g, kSeed + 200)) {
    comm.add(relative_residual(symmetry_commutator(kTrig, 1, SymmetryProduct::S, s) + Complex(3.0) * s, s));
  }
  return {prod.ok() && comm.ok(),
          "max product residual " + fmt("%.3g", prod.value) + ", commutator vs -3 Id " + fmt("%.3g", comm.value)};
}

Outcome pseudo_hermiticity() {
  Worst pseudo = Worst::below(1e-10);
  Worst plain = Worst::above(0.1);
  const Grid g = kHyp.default_grid();
  for (int n : {2, 3, 4}) {
    const DiracOperator op(kHyp, n);
    pseudo.add(hermiticity_residual(op, g, Weight::sigma3));
    plain.add(hermiticity_residual(op, g, Weight::definite));
  }
  return {pseudo.ok() && plain.ok(),
          "sigma_3 residual " + fmt("%.3g", pseudo.value) + ", plain residual " + fmt("%.3g", plain.value)};
}

Outcome massive() {
  const Grid g = kTrig.default_grid();
  Worst eig = Worst::below(1e-4);
  Worst glob = Worst::below(1e-5);
  Worst mminus = Worst::below(1e-5);
  int min_rank = 4;
  const auto xis = test_bispinors(g, kSeed + 300);
  for (double m0 : {0.0, 0.75, 1.0}) {
    for (int n = 0; n <= 2; ++n) {
      const MassiveOperator op(DiracOperator(kTrig, n), m0);
      for (const auto& level : massive_spectrum(op, 4)) {
        const double expected = (level.branch == Branch::plus_energy ? 1.0 : -1.0) *
                                std::sqrt(kTrig.mu_squared(n + level.k) + m0 * m0);
        for (Sign s : {Sign::plus, Sign::minus}) {
          if (!level_exists(op.base(), level.k, s)) continue;
          const auto xi = massive_eigenstate(op, level.k, s, level.branch, g);
          eig.add(std::abs(level.energy - expected) < 1e-12 ? massive_eigen_residual(op, expected, xi) : INFINITY);
        }
      }
      for (const auto& xi : xis) {
        for (GlobalKind k : {GlobalKind::calR, GlobalKind::calR_tilde, GlobalKind::calT, GlobalKind::calT_tilde}) {
          glob.add(global_intertwine_residual(kTrig, n, m0, k, xi));
        }
      }
      min_rank = std::min(min_rank, global_gram_rank(kTrig, n, m0, xis.front()).rank);
    }
  }
  for (int n = 0; n <= 2; ++n) {
    for (const auto& xi : xis) {
      mminus.add(m_minus_identity_residual(kTrig, n, SymmetryProduct::S, upper_block(xi)));
      mminus.add(m_minus_identity_residual(kTrig, n, SymmetryProduct::S_prime, upper_block(xi)));
    }
  }
  return {eig.ok() && glob.ok() && mminus.ok() && min_rank == 4,
          "eigen " + fmt("%.3g", eig.value) + ", global " + fmt("%.3g", glob.value) + ", M^- " +
              fmt("%.3g", mminus.value) + ", Gram rank " + std::to_string(min_rank)};
}

Outcome massless_shift() {
  const Model shifted = shift_to_massless(kTrig, 1);
  const Grid g = shifted.default_grid();
  const DiracOperator op(shifted, 1);
  const auto numeric = numeric_dirac_spectrum(op, 1, g);
  double ground = INFINITY;
  Worst excited = Worst::below(1e-4);
  for (const auto& e : numeric) {
    if (e.k == 0) ground = std::abs(e.epsilon);
    if (e.k == 1) excited.add(std::abs(e.epsilon - 2.0 * sign_value(e.sign)));
  }
  // The analytic eigenspinors must agree with those values as well.
  Worst res = Worst::below(1e-4);
  const auto g0 = eigenspinor(op, 0, Sign::plus, g);
  const double kernel = relative_residual(dirac_apply(op, g0.spinor), g0.spinor);
  for (Sign s : {Sign::plus, Sign::minus}) {
    const auto st = eigenspinor(op, 1, s, g);
    res.add(dirac_eigen_residual(op, 2.0 * sign_value(s), st.spinor));
  }
  const bool ok = numeric.size() == 3 && ground < 1e-6 && excited.ok() && res.ok() && kernel < 1e-6;
  return {ok, "|eps 0+| " + fmt("%.3g", ground) + ", eps 1+- deviation " + fmt("%.3g", excited.value) +
                  ", eigen residuals " + fmt("%.3g", std::max(res.value, kernel))};
}

Outcome geometric_reduction() {
  Worst red = Worst::below(1e-5);
  Worst sq = Worst::below(1e-5);
  for (Surface s : {Surface::sphere, Surface::hyperboloid}) {
    const Model model = surface_model(s);
    const Grid g = model.default_grid();
    for (double m : {1.5, 2.5}) {
      const int n = spinor_mode_index(s, m);
      for (const auto& f : gaussian_test_functions(model, g, kSeed + 400 + static_cast<std::uint64_t>(n), kTestCount)) {
        red.add(reduce_scalar(s, n, f));
      }
      for (const auto& psi : test_spinors(model, g, kSeed + 500 + static_cast<std::uint64_t>(n))) {
        red.add(reduce_spinor(s, m, psi));
        sq.add(square_bookkeeping_residual(s, m, psi));
      }
    }
  }
  return {red.ok() && sq.ok(),
          "max reduction residual " + fmt("%.3g", red.value) + ", square bookkeeping " + fmt("%.3g", sq.value)};
}

Outcome ladder_vs_oracle() {
  Worst ov = Worst::above(0.9999);
  int pairs_checked = 0;
  for (const Model* m : {&kTrig, &kHyp}) {
    const Grid g = m->default_grid();
    const bool trig = m->family() == Family::trig_pt;
    const int n_lo = m->n_min();
    const int n_hi = trig ? 2 : 4;
    for (int n = n_lo; n <= n_hi; ++n) {
      const int count = trig ? 4 : n;  // k <= 3, or every bound state k <= n - 1
      const auto pairs = solve_symmetric_spectrum(schrodinger_oracle(*m, n, g), count);
      for (int k = 0; k < count; ++k) {
        ov.add(std::abs(inner_product(eigenfunction(*m, n, k, g), pairs[static_cast<std::size_t>(k)].vector)));
        ++pairs_checked;
      }
    }
  }
  return {ov.ok(), std::to_string(pairs_checked) + " states, min overlap " + fmt("%.10f", ov.value)};
}

Outcome orthogonality_dominance() {
  Worst orth = Worst::below(1e-6);
  int violations = 0;
  int states = 0;
  for (const auto& fam : dirac_families()) {
    const Grid g = fam.model.default_grid();
    const bool inc = fam.model.kind() == HierarchyKind::increasing;
    const Weight w = inc ? Weight::definite : Weight::sigma3;
    for (int n : fam.ns) {
      const DiracOperator op(fam.model, n);
      for (const auto& e : dirac_spectrum(op, level_k_max(fam.model, n))) {
        const auto st = eigenspinor(op, e.k, e.sign, g);
        const double up = norm(st.spinor[0]);
        const double down = norm(st.spinor[1]);
        const bool dominant = e.sign == Sign::plus ? up > down : down > up;
        if (!dominant) ++violations;
        ++states;
        if (e.sign == Sign::plus && e.k > 0) {
          const auto other = eigenspinor(op, e.k, Sign::minus, g);
          orth.add(std::abs(inner_product(st.spinor, other.spinor, w)));
        }
      }
    }
  }
  return {orth.ok() && violations == 0, "max cross-sign product " + fmt("%.3g", orth.value) + ", dominance " +
                                            std::to_string(states - violations) + "/" + std::to_string(states)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"scalar trig spectrum", scalar_trig_spectrum},
      {"scalar hyperbolic spectrum", scalar_hyp_spectrum},
      {"Dirac 2x2 spectra", dirac_spectra},
      {"intertwining and anti-intertwining", intertwining},
      {"annihilator kernels", annihilator_kernels},
      {"symmetry products", symmetry_products},
      {"pseudo-Hermiticity", pseudo_hermiticity},
      {"massive 4x4", massive},
      {"massless shift", massless_shift},
      {"geometric reduction", geometric_reduction},
      {"ladder vs oracle", ladder_vs_oracle},
      {"orthogonality and dominance", orthogonality_dominance},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
