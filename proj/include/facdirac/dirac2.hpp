#pragma once

#include <string>
#include <vector>

#include "facdirac/grid.hpp"
#include "facdirac/models.hpp"

namespace facdirac {

enum class Sign { plus = 1, minus = -1 };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

enum class Provenance { analytic, numeric };

/// Angular-momentum labels attached to a spectral entry. For the increasing
/// kind `orbital` is l = n + k and `total` is j = l +- 1/2; for the
/// decreasing kind `orbital` is lambda = n - k and `total` is nu.
struct SpectralLabels {
  double orbital;
  double total;
};

struct SpectrumEntry {
  int n;
  int k;
  Sign sign;
  double epsilon;
  Provenance provenance = Provenance::analytic;
  SpectralLabels labels{};
};

/// 2x2 first-order Dirac-like operator of hierarchy member n.
///   increasing: h_n = [[mu_n, i a^+_n], [-i a^-_n, -mu_n]],  h^2 = diag(H_n, H_{n+1})
///   decreasing: h_n = [[mu_n, i a^-_n], [i a^+_n, -mu_n]],   h^2 = -diag(H_{n-1}, H_n)
/// A massless variant is obtained by constructing it from a shifted model.
class DiracOperator {
 public:
  DiracOperator(Model model, int n);

  const Model& model() const { return model_; }
  int n() const { return n_; }
  double mu() const { return model_.mu(n_); }

 private:
  Model model_;
  int n_;
};

Spinor2 dirac_apply(const DiracOperator& op, const Spinor2& psi);

/// Interior relative norm of h^2 psi - diag(H_n, H_{n+1}) psi (increasing) or
/// h^2 psi + diag(H_{n-1}, H_n) psi (decreasing).
double dirac_square_residual(const DiracOperator& op, const Spinor2& psi);

/// Interior relative norm of h psi - epsilon psi.
double dirac_eigen_residual(const DiracOperator& op, double epsilon, const Spinor2& psi);

struct DiracEigenstate {
  SpectrumEntry entry;
  Spinor2 spinor;
  double alpha;  // coefficient of the upper scalar eigenfunction
  double beta;   // modulus of the coefficient of the lower one
};

/// Whether the level (k, sign) belongs to the spectrum of h_n.
bool level_exists(const DiracOperator& op, int k, Sign sign);

SpectralLabels spectral_labels(const Model& model, int n, int k, Sign sign);

/// Analytic eigenvalue: sign * mu_{n+k} (increasing) or sign * mu_{n-k}.
double dirac_energy(const DiracOperator& op, int k, Sign sign);

/// L2-normalized eigenspinor built from the scalar eigenfunctions.
///   increasing +: (sqrt(mu_{n+k}+mu_n) psi_n^k, -i sqrt(mu_{n+k}-mu_n) psi_{n+1}^{k-1})
///   increasing -: (sqrt(mu_{n+k}-mu_n) psi_n^k, +i sqrt(mu_{n+k}+mu_n) psi_{n+1}^{k-1})
///   decreasing +: (sqrt(mu_n+mu_{n-k}) psi_{n-1}^{k-1}, i sqrt(mu_n-mu_{n-k}) psi_n^k)
///   decreasing -: (sqrt(mu_n-mu_{n-k}) psi_{n-1}^{k-1}, i sqrt(mu_n+mu_{n-k}) psi_n^k)
/// Ground levels are (psi_n^0, 0) and (0, psi_n^0).
DiracEigenstate eigenspinor(const DiracOperator& op, int k, Sign sign, const Grid& grid);

/// All admissible (k, sign) levels with k <= k_max, epsilon ascending.
std::vector<SpectrumEntry> dirac_spectrum(const DiracOperator& op, int k_max);

/// Numerical counterpart of dirac_spectrum: eigenvectors of the Hermitian
/// blocks of h^2 from the grid eigensolver are assembled into spinors with
/// the entry's coefficients (relative sign fixed by the ladder phase), and
/// epsilon is the Rayleigh quotient of h on that spinor, in the definite
/// product (increasing) or the sigma_3 product (decreasing).
/// Entries come back in the order of dirac_spectrum(op, k_max).
std::vector<SpectrumEntry> numeric_dirac_spectrum(const DiracOperator& op, int k_max, const Grid& grid);

// ---------------------------------------------------------------------------
// Intertwiners

/// R^-_n and T^-_n map h_n to its neighbour (h_{n+1} increasing, h_{n-1}
/// decreasing); R^+_n and T^+_n map back.
enum class IntertwinerKind { R_minus, R_plus, T_minus, T_plus };

/// Index of the operator reached from h_n by R^-_n.
int intertwined_index(const Model& model, int n);

Spinor2 apply_intertwiner(const Model& model, int n, IntertwinerKind kind, const Spinor2& psi);

/// (R^-_n h_n - h' R^-_n) psi.
double intertwine_residual(const Model& model, int n, const Spinor2& psi);
/// (T^-_n h_n + h' T^-_n) psi.
double anti_intertwine_residual(const Model& model, int n, const Spinor2& psi);

enum class SymmetryProduct { S, S_prime };

/// R^+R^- (or T^+T^-) against its polynomial in h_n:
///   increasing: S = (h - mu_n)(h + mu_{n+1}),    S' = (h - mu_n)(h - mu_{n+1})
///   decreasing: S = -(h + mu_n)(h - mu_{n-1}),   S' = -(h + mu_n)(h + mu_{n-1})
double symmetry_product_residual(const Model& model, int n, SymmetryProduct which, const Spinor2& psi);

/// R^+_n R^-_n - R^-_p R^+_p against
///   h (mu_{n+1} - 2 mu_n + mu_{n-1}) + mu_n (mu_{n-1} - mu_{n+1}),
/// and T^+_n T^-_n - T^-_p T^+_p against
///   -h (mu_{n+1} + 2 mu_n + mu_{n-1}) + mu_n (mu_{n+1} - mu_{n-1}),
/// where p is the neighbour whose intertwiner lands on h_n.
double commutator_residual(const Model& model, int n, SymmetryProduct which, const Spinor2& psi);

/// The symmetry-product commutator as a spinor (for direct inspection).
Spinor2 symmetry_commutator(const Model& model, int n, SymmetryProduct which, const Spinor2& psi);

// ---------------------------------------------------------------------------

/// The hierarchy with every factorization energy lowered by mu_{n0}^2.
Model shift_to_massless(const Model& model, int n0);

/// ||W h^dagger W - h||_F / ||h||_F for the interior-node discretization of
/// h_n (central fourth-order derivative, zero ghosts), with W = identity or
/// sigma_3.
double hermiticity_residual(const DiracOperator& op, const Grid& grid, Weight weight);

/// Plain Hermiticity for the increasing kind, sigma_3-Hermiticity for the
/// decreasing kind.
double pseudo_hermiticity_residual(const DiracOperator& op, const Grid& grid);

}  // namespace facdirac
