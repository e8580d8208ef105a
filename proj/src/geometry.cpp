#include "facdirac/geometry.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "facdirac/hierarchy.hpp"

namespace facdirac {

namespace {

constexpr Complex kI{0.0, 1.0};

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

bool on_sphere(Surface s) { return s == Surface::sphere; }

// cot theta or tanh chi: the coefficient of d_phi in L_x, L_y.
double connection(Surface s, double x) { return on_sphere(s) ? std::cos(x) / std::sin(x) : std::tanh(x); }

// sqrt(sin theta) or sqrt(cosh chi).
double measure_root(Surface s, double x) { return on_sphere(s) ? std::sqrt(std::sin(x)) : std::sqrt(std::cosh(x)); }

void accumulate(ModeField& out, int q, const GridFunction& f) {
  auto it = out.find(q);
  if (it == out.end()) {
    out.emplace(q, f);
  } else {
    it->second += f;
  }
}

ModeField add(ModeField a, const ModeField& b) {
  for (const auto& [q, f] : b) accumulate(a, q, f);
  return a;
}

ModeField scale(Complex s, ModeField a) {
  for (auto& [q, f] : a) f *= s;
  return a;
}

// L_+ (f e^{iq phi}) = e^{i(q+1) phi} (f' - q c f)
// L_- (f e^{iq phi}) = e^{i(q-1) phi} (-f' - q c f)
ModeField raise_mode(Surface s, const ModeField& in, int dir) {
  ModeField out;
  for (const auto& [q, f] : in) {
    const auto cf = f.times([s](double x) { return connection(s, x); });
    accumulate(out, q + dir, Complex(dir) * differentiate(f, 1) - Complex(q) * cf);
  }
  return out;
}

ModeField apply_lz(const ModeField& in) {
  ModeField out;
  for (const auto& [q, f] : in) out.emplace(q, Complex(q) * f);
  return out;
}

SpinorField apply_matrix(const Matrix2& m, const SpinorField& psi) {
  SpinorField out;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      if (m[a][b] != 0.0) out[a] = add(std::move(out[a]), scale(m[a][b], psi[b]));
    }
  }
  return out;
}

SpinorField apply_each(const SpinorField& psi, const std::function<ModeField(const ModeField&)>& op) {
  return SpinorField{op(psi[0]), op(psi[1])};
}

SpinorField add(SpinorField a, const SpinorField& b) {
  return SpinorField{add(std::move(a[0]), b[0]), add(std::move(a[1]), b[1])};
}

SpinorField scale(Complex s, SpinorField a) { return SpinorField{scale(s, std::move(a[0])), scale(s, std::move(a[1]))}; }

// Pauli matrices and the spin generators of each surface.
const Matrix2 kSigmaX{{{0.0, 1.0}, {1.0, 0.0}}};
const Matrix2 kSigmaY{{{0.0, -kI}, {kI, 0.0}}};
const Matrix2 kSigmaZ{{{1.0, 0.0}, {0.0, -1.0}}};
const Matrix2 kSigmaRaise{{{0.0, 1.0}, {0.0, 0.0}}};
const Matrix2 kSigmaLower{{{0.0, 0.0}, {1.0, 0.0}}};

Matrix2 times(Complex s, Matrix2 m) {
  for (auto& row : m)
    for (auto& v : row) v *= s;
  return m;
}

// S_+- = sigma_+- (sphere) or i sigma_+- (hyperboloid).
Matrix2 spin_ladder(Surface s, int dir) {
  const Matrix2& m = dir > 0 ? kSigmaRaise : kSigmaLower;
  return on_sphere(s) ? m : times(kI, m);
}

int upper_mode(double m) { return static_cast<int>(std::lround(m - 0.5)); }

void require_half_integer(double m) {
  if (!std::isfinite(m) || std::abs((m - 0.5) - std::round(m - 0.5)) > 1e-12) {
    throw Error("spinor mode m must be a half-integer, got " + std::to_string(m));
  }
}

Complex lower_gauge(Surface s) { return on_sphere(s) ? kI : Complex(1.0); }

// h~ + 1/2 (sphere) or h - 1/2 (hyperboloid).
SpinorField shifted_spin_orbit(Surface s, const SpinorField& psi) {
  return add(spin_orbit(s, psi), scale(on_sphere(s) ? 0.5 : -0.5, psi));
}

Spinor2 reduced_profile(Surface s, double m, const SpinorField& f) { return spinor_profile(s, m, f); }

DiracOperator reduced_operator(Surface s, double m) { return DiracOperator(surface_model(s), spinor_mode_index(s, m)); }

ScalarFit fit(const GridFunction& a, const GridFunction& b, const GridFunction& input) {
  const Complex c = interior_inner_product(b, a) / interior_inner_product(b, b);
  return {relative_residual(a - c * b, input), c};
}

ScalarFit fit(const Spinor2& a, const Spinor2& b, const Spinor2& input) {
  const Complex c = interior_inner_product(b, a) / interior_inner_product(b, b);
  return {relative_residual(a - c * b, input), c};
}

}  // namespace

Model surface_model(Surface surface) { return on_sphere(surface) ? Model::trig_pt() : Model::hyp_pt(); }

ModeField apply_orbital(Surface surface, Axis axis, const ModeField& f) {
  switch (axis) {
    case Axis::x:
      return scale(0.5, add(raise_mode(surface, f, +1), raise_mode(surface, f, -1)));
    case Axis::y:
      return scale(-0.5 * kI, add(raise_mode(surface, f, +1), scale(-1.0, raise_mode(surface, f, -1))));
    case Axis::z:
      return apply_lz(f);
  }
  throw Error("unknown axis");
}

ModeField orbital_casimir(Surface surface, const ModeField& f) {
  auto square = [&](Axis a) { return apply_orbital(surface, a, apply_orbital(surface, a, f)); };
  const double z_sign = on_sphere(surface) ? 1.0 : -1.0;
  return add(add(square(Axis::x), square(Axis::y)), scale(z_sign, square(Axis::z)));
}

SpinorField spin_orbit(Surface surface, const SpinorField& psi) {
  const bool sphere = on_sphere(surface);
  const std::array<Matrix2, 3> spin{sphere ? kSigmaX : times(kI, kSigmaX), sphere ? kSigmaY : times(kI, kSigmaY),
                                    sphere ? kSigmaZ : times(-1.0, kSigmaZ)};
  const std::array<Axis, 3> axes{Axis::x, Axis::y, Axis::z};
  SpinorField out;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto l_psi = apply_each(psi, [&](const ModeField& f) { return apply_orbital(surface, axes[k], f); });
    out = add(std::move(out), apply_matrix(spin[k], l_psi));
  }
  return out;
}

ModeField scalar_mode(Surface surface, int q, const GridFunction& f) {
  return ModeField{{q, f.times([surface](double x) { return 1.0 / measure_root(surface, x); })}};
}

GridFunction scalar_profile(Surface surface, int q, const ModeField& f) {
  auto it = f.find(q);
  if (it == f.end()) {
    if (f.empty()) throw Error("empty mode field");
    return GridFunction(f.begin()->second.grid());
  }
  return it->second.times([surface](double x) { return measure_root(surface, x); });
}

int spinor_mode_index(Surface surface, double m) {
  require_half_integer(m);
  const int n = on_sphere(surface) ? upper_mode(m) : upper_mode(m) + 1;
  require_valid_n(surface_model(surface), n);
  return n;
}

SpinorField spinor_mode(Surface surface, double m, const Spinor2& psi) {
  require_half_integer(m);
  const int q = upper_mode(m);
  auto lower = scalar_mode(surface, q + 1, psi[1]);
  return SpinorField{scalar_mode(surface, q, psi[0]), scale(lower_gauge(surface), std::move(lower))};
}

Spinor2 spinor_profile(Surface surface, double m, const SpinorField& f) {
  require_half_integer(m);
  const int q = upper_mode(m);
  // An empty component still needs a grid; borrow it from the other one.
  if (f[0].empty() && f[1].empty()) throw Error("empty spinor field");
  const Grid& grid = !f[0].empty() ? f[0].begin()->second.grid() : f[1].begin()->second.grid();
  auto pick = [&](const ModeField& c, int mode) {
    auto it = c.find(mode);
    return it == c.end() ? GridFunction(grid)
                         : it->second.times([surface](double x) { return measure_root(surface, x); });
  };
  return make_spinor(pick(f[0], q), std::conj(lower_gauge(surface)) * pick(f[1], q + 1));
}

double reduce_scalar(Surface surface, int n, const GridFunction& f) {
  const Model model = surface_model(surface);
  require_valid_n(model, n);
  const double quarter = on_sphere(surface) ? 0.25 : -0.25;
  const auto lhs = scalar_profile(surface, n, orbital_casimir(surface, scalar_mode(surface, n, f))) + quarter * f;
  return relative_residual(lhs - apply_schrodinger(model, n, f), f);
}

double reduce_spinor(Surface surface, double m, const Spinor2& psi) {
  const auto op = reduced_operator(surface, m);
  const auto lhs = reduced_profile(surface, m, shifted_spin_orbit(surface, spinor_mode(surface, m, psi)));
  const auto h = dirac_apply(op, psi);
  return relative_residual(on_sphere(surface) ? lhs - h : lhs + h, psi);
}

double square_bookkeeping_residual(Surface surface, double m, const Spinor2& psi) {
  const auto op = reduced_operator(surface, m);
  const Model& model = op.model();
  const int n = op.n();
  const auto mode = spinor_mode(surface, m, psi);
  const auto lhs = reduced_profile(surface, m, shifted_spin_orbit(surface, shifted_spin_orbit(surface, mode)));
  if (on_sphere(surface)) {
    const auto rhs = make_spinor(apply_schrodinger(model, n, psi[0]), apply_schrodinger(model, n + 1, psi[1]));
    return relative_residual(lhs - rhs, psi);
  }
  const auto rhs = make_spinor(apply_schrodinger(model, n - 1, psi[0]), apply_schrodinger(model, n, psi[1]));
  return relative_residual(lhs + rhs, psi);
}

ScalarFit reduced_symmetry_match(Surface surface, double m, Generator g, const Spinor2& psi) {
  const bool j_generator = g == Generator::Jplus || g == Generator::Jminus;
  if (j_generator != on_sphere(surface)) {
    throw Error(on_sphere(surface) ? "the sphere generators are Jplus and Jminus"
                                   : "the hyperboloid generators are Kplus and Kminus");
  }
  const auto op = reduced_operator(surface, m);
  const Model& model = op.model();
  const int n = op.n();
  const int dir = (g == Generator::Jplus || g == Generator::Kplus) ? +1 : -1;

  const auto mode = spinor_mode(surface, m, psi);
  const auto orbital = apply_each(mode, [&](const ModeField& f) { return raise_mode(surface, f, dir); });
  const auto moved = add(orbital, apply_matrix(spin_ladder(surface, dir), mode));
  const auto lhs = reduced_profile(surface, m + dir, moved);

  Spinor2 rhs = Spinor2::zeros(psi.grid());
  if (on_sphere(surface)) {
    rhs = dir > 0 ? apply_intertwiner(model, n, IntertwinerKind::R_minus, psi)
                  : apply_intertwiner(model, n - 1, IntertwinerKind::R_plus, psi);
  } else {
    rhs = dir > 0 ? apply_intertwiner(model, n + 1, IntertwinerKind::R_plus, psi)
                  : apply_intertwiner(model, n, IntertwinerKind::R_minus, psi);
  }
  return fit(lhs, rhs, psi);
}

ScalarFit reduced_ladder_match(Surface surface, int n, Ladder l, const GridFunction& f) {
  const Model model = surface_model(surface);
  require_valid_n(model, n);
  const int dir = l == Ladder::Lplus ? +1 : -1;
  int q = n;
  Factor factor = Factor::lower;
  if (on_sphere(surface)) {
    if (dir < 0) {
      q = n + 1;
      factor = Factor::raise;
    }
  } else if (dir > 0) {
    q = n - 1;
    factor = Factor::raise;
  }
  const auto lhs = scalar_profile(surface, q + dir, raise_mode(surface, scalar_mode(surface, q, f), dir));
  return fit(lhs, apply_factor(model, n, factor, f), f);
}

SpinorField apply_antisymmetry(Surface surface, const SpinorField& psi) {
  const Matrix2 s3 = times(0.5, kSigmaZ);
  const auto l_plus = apply_each(psi, [&](const ModeField& f) { return raise_mode(surface, f, +1); });
  const auto first = apply_matrix(s3, l_plus);
  const auto second = apply_each(apply_matrix(spin_ladder(surface, +1), psi), apply_lz);
  return add(first, scale(-1.0, second));
}

double reduced_antisymmetry_residual(Surface surface, double m, const Spinor2& psi) {
  reduced_operator(surface, m);
  const auto mode = spinor_mode(surface, m, psi);
  const auto a = apply_antisymmetry(surface, shifted_spin_orbit(surface, mode));
  const auto b = shifted_spin_orbit(surface, apply_antisymmetry(surface, mode));
  return relative_residual(reduced_profile(surface, m + 1, add(a, b)), psi);
}

ScalarFit reduced_antisymmetry_match(Surface surface, double m, const Spinor2& psi) {
  const auto op = reduced_operator(surface, m);
  const int n = op.n();
  const auto lhs = reduced_profile(surface, m + 1, apply_antisymmetry(surface, spinor_mode(surface, m, psi)));
  const auto rhs = on_sphere(surface) ? apply_intertwiner(op.model(), n, IntertwinerKind::T_minus, psi)
                                      : apply_intertwiner(op.model(), n + 1, IntertwinerKind::T_plus, psi);
  return fit(lhs, rhs, psi);
}

SpectralLabels casimir_labels(Surface surface, int n, int k, Sign sign) {
  return spectral_labels(surface_model(surface), n, k, sign);
}

double casimir_residual(Surface surface, int n, int k, Sign sign, const Grid& grid) {
  const DiracOperator op(surface_model(surface), n);
  const auto state = eigenspinor(op, k, sign, grid);
  const auto labels = casimir_labels(surface, n, k, sign);
  const double quarter = on_sphere(surface) ? 0.25 : -0.25;
  const double expected = on_sphere(surface) ? (labels.orbital + 0.5) * (labels.orbital + 0.5)
                                             : -(labels.orbital - 0.5) * (labels.orbital - 0.5);
  // The spinor mode whose components sit at these two frequencies.
  const double m = on_sphere(surface) ? n + 0.5 : n - 0.5;
  const auto mode = spinor_mode(surface, m, state.spinor);
  const SpinorField c{orbital_casimir(surface, mode[0]), orbital_casimir(surface, mode[1])};
  const auto lhs = spinor_profile(surface, m, c) + Complex(quarter) * state.spinor;
  return relative_residual(lhs - Complex(expected) * state.spinor, state.spinor);
}

}  // namespace facdirac
