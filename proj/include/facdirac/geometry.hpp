#pragma once

#include <array>
#include <map>

#include "facdirac/dirac2.hpp"

namespace facdirac {

/// The two surfaces behind the hierarchies: the sphere S^2 (angle theta in
/// (0, pi), trig_pt) and the one-sheet hyperboloid (chi on the real line,
/// hyp_pt). Fields are separated in the azimuthal angle phi, which is
/// treated analytically.
enum class Surface { sphere, hyperboloid };

Model surface_model(Surface surface);

/// Field on the surface as a finite Fourier sum over phi:
/// sum_q profile_q(x) e^{i q phi}.
using ModeField = std::map<int, GridFunction>;
using SpinorField = std::array<ModeField, 2>;

/// Cartesian orbital generators acting on a mode field.
///   sphere:      L_x = i(sin phi d_theta + cos phi cot theta d_phi)
///                L_y = i(-cos phi d_theta + sin phi cot theta d_phi)
///   hyperboloid: L_x = i(sin phi d_chi + tanh chi cos phi d_phi)
///                L_y = i(-cos phi d_chi + tanh chi sin phi d_phi)
///   both:        L_z = -i d_phi
enum class Axis { x, y, z };
ModeField apply_orbital(Surface surface, Axis axis, const ModeField& f);

/// L_x^2 + L_y^2 + L_z^2 (sphere) or L_x^2 + L_y^2 - L_z^2 (hyperboloid).
ModeField orbital_casimir(Surface surface, const ModeField& f);

/// Spin-orbit operator: sum_k sigma_k L_k on the sphere, and
/// 2 (L_x S_x + L_y S_y - L_z S_z) with S = (i sigma_x/2, i sigma_y/2,
/// sigma_z/2) on the hyperboloid.
SpinorField spin_orbit(Surface surface, const SpinorField& psi);

// Reduction of 1D profiles to a single azimuthal mode and back. Profiles
// are divided by sqrt(sin theta) or sqrt(cosh chi) (the measure factor that
// removes first-derivative terms) on the way up and multiplied on the way
// down.

ModeField scalar_mode(Surface surface, int q, const GridFunction& f);
GridFunction scalar_profile(Surface surface, int q, const ModeField& f);

/// Hierarchy index n of the spinor mode m (half-integer): n = m - 1/2 on
/// the sphere, n = m + 1/2 on the hyperboloid.
int spinor_mode_index(Surface surface, double m);

/// Mode ansatz with components e^{i(m-1/2)phi} and e^{i(m+1/2)phi}. On the
/// sphere the lower component is multiplied by i, the gauge in which the
/// reduced operator coincides with h_n.
SpinorField spinor_mode(Surface surface, double m, const Spinor2& psi);
Spinor2 spinor_profile(Surface surface, double m, const SpinorField& f);

/// Deviation of (Casimir +- 1/4) on f e^{i n phi} from H_n f
/// (+1/4 sphere, -1/4 hyperboloid).
double reduce_scalar(Surface surface, int n, const GridFunction& f);

/// Deviation of the spin-orbit operator on mode m from the reduced
/// Hamiltonian: h~ + 1/2 = h_n (sphere), h - 1/2 = -h_n (hyperboloid).
double reduce_spinor(Surface surface, double m, const Spinor2& psi);

/// (h~ + 1/2)^2 = diag(H_n, H_{n+1}) on the sphere and
/// (h - 1/2)^2 = -diag(H_{n-1}, H_n) on the hyperboloid, evaluated on the
/// mode ansatz.
double square_bookkeeping_residual(Surface surface, double m, const Spinor2& psi);

struct ScalarFit {
  double residual;  // interior_norm(A - c B) / interior_norm(input)
  Complex scalar;   // least-squares c
};

/// Group generator J_+- = L_+- + S_+- (sphere) or K_+- (hyperboloid) on
/// mode m, compared with the matching 2x2 intertwiner:
///   sphere      J_+ ~ R^-_n,      J_- ~ R^+_{n-1}
///   hyperboloid K_- ~ R^-_n,      K_+ ~ R^+_{n+1}
enum class Generator { Jplus, Jminus, Kplus, Kminus };
ScalarFit reduced_symmetry_match(Surface surface, double m, Generator g, const Spinor2& psi);

/// Scalar ladders L_+- on a single mode against the factor operators:
///   sphere      L_+ at q = n ~ a^-_n,    L_- at q = n+1 ~ a^+_n
///   hyperboloid L_+ at q = n-1 ~ a^+_n,  L_- at q = n ~ a^-_n
enum class Ladder { Lplus, Lminus };
ScalarFit reduced_ladder_match(Surface surface, int n, Ladder l, const GridFunction& f);

/// Anti-symmetry T^+ = L_+ S_3 - L_3 S_+ on mode m.
SpinorField apply_antisymmetry(Surface surface, const SpinorField& psi);

/// T^+ (h + c) + (h + c) T^+ on the mode ansatz, c = 1/2 (sphere) or -1/2
/// (hyperboloid), relative to the input.
double reduced_antisymmetry_residual(Surface surface, double m, const Spinor2& psi);

/// T^+ on mode m compared with the 2x2 anti-intertwiner it reduces to:
/// T^-_n on the sphere, T^+_{n+1} on the hyperboloid.
ScalarFit reduced_antisymmetry_match(Surface surface, double m, const Spinor2& psi);

/// (l, j) on the sphere, (lambda, nu) on the hyperboloid.
SpectralLabels casimir_labels(Surface surface, int n, int k, Sign sign);

/// Orbital Casimir +- 1/4 on the components of the eigenspinor
/// Psi_n^{k,sign} against (l + 1/2)^2 (sphere) or -(lambda - 1/2)^2
/// (hyperboloid).
double casimir_residual(Surface surface, int n, int k, Sign sign, const Grid& grid);

}  // namespace facdirac
