#pragma once

#include <vector>

#include "facdirac/dirac2.hpp"

namespace facdirac {

/// H_n(m0) = [[m0, h_n], [h_n, -m0]] (units with c = 1), built on the
/// increasing 2x2 operator h_n.
class MassiveOperator {
 public:
  MassiveOperator(DiracOperator base, double m0);

  const DiracOperator& base() const { return base_; }
  const Model& model() const { return base_.model(); }
  int n() const { return base_.n(); }
  double m0() const { return m0_; }

 private:
  DiracOperator base_;
  double m0_;
};

Spinor4 massive_apply(const MassiveOperator& op, const Spinor4& xi);
double massive_eigen_residual(const MassiveOperator& op, double energy, const Spinor4& xi);

enum class Branch { plus_energy, minus_energy };

struct MassiveLevel {
  int n;
  int k;
  Branch branch;
  double energy;    // +-sqrt(mu_{n+k}^2 + m0^2)
  int degeneracy;   // 2 for k >= 1 (both 2x2 signs), 1 for the ground level
};

/// Levels for k = 0..k_max, energy ascending.
std::vector<MassiveLevel> massive_spectrum(const MassiveOperator& op, int k_max);

double massive_energy(const MassiveOperator& op, int k, Branch branch);

/// Coefficient s mu_{n+k} / (sqrt(mu_{n+k}^2 + m0^2) + m0) tying the two
/// blocks of an eigenstate.
double massive_coefficient(const MassiveOperator& op, int k, Sign s);

/// Normalized eigenstate built from the 2x2 eigenspinor Psi = Psi_n^{ks}:
///   plus_energy:  (Psi, c Psi)   with energy +E
///   minus_energy: (-c Psi, Psi)  with energy -E
/// where c = massive_coefficient(op, k, s).
Spinor4 massive_eigenstate(const MassiveOperator& op, int k, Sign s, Branch branch, const Grid& grid);

/// M^- = -i sigma^+ = [[0, -2i], [0, 0]].
Spinor2 apply_m_minus(const Spinor2& psi);

enum class GlobalKind { calR, calR_tilde, calT, calT_tilde };

/// The four global intertwiners of H_n(m0) with H_{n+1}(m0):
///   calR       = diag(R^-, R^-)
///   calR_tilde = [[-m0 M^-, R^-], [R^-, m0 M^-]]
///   calT       = diag(-T^-, T^-)
///   calT_tilde = [[m0 M^-, -T^-], [T^-, m0 M^-]]
Spinor4 apply_global(const Model& model, int n, double m0, GlobalKind kind, const Spinor4& xi);

/// Interior relative norm of (K H_n - H_{n+1} K) xi.
double global_intertwine_residual(const Model& model, int n, double m0, GlobalKind kind, const Spinor4& xi);

/// (M^- h_n + h_{n+1} M^- + 2 R^-_n) psi for which = S, and
/// (M^- h_n - h_{n+1} M^- + 2 T^-_n) psi for which = S_prime.
double m_minus_identity_residual(const Model& model, int n, SymmetryProduct which, const Spinor2& psi);

struct GramRank {
  std::vector<double> singular_values;  // descending
  int rank;
};

/// Singular values of the four global intertwiner actions on xi, from the
/// Gram matrix of the images. Rank counts singular values above
/// `threshold` times the largest.
GramRank global_gram_rank(const Model& model, int n, double m0, const Spinor4& xi, double threshold = 1e-6);

}  // namespace facdirac
