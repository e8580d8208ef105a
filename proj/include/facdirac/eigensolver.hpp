#pragma once

#include <vector>

#include "facdirac/grid.hpp"

namespace facdirac {

/// Real symmetric tridiagonal matrix acting on the interior nodes of a grid
/// (the two endpoint nodes are fixed to zero). This is the discretized
/// operator handed to the oracle eigensolver.
struct SymmetricTridiagonal {
  Grid grid;
  std::vector<double> diagonal;      // size = grid.size() - 2
  std::vector<double> off_diagonal;  // size = diagonal.size() - 1

  std::size_t dimension() const { return diagonal.size(); }
  /// Frobenius norm of the matrix.
  double frobenius_norm() const;
  std::vector<double> apply(const std::vector<double>& v) const;
};

/// -d^2/dx^2 + V with the three-point stencil and homogeneous values at the
/// box edges. Second order on purpose: the oracle stays independent of the
/// fourth-order operator path it is used to check.
SymmetricTridiagonal discretize_schrodinger(const Grid& grid, const std::function<double(double)>& potential);

/// -d^2/dx^2 + V written in the gauge psi = g phi of a known positive
/// solution g of (H - e0) g = 0 that vanishes at both box edges:
///   -(g^2 phi')' = (E - e0) g^2 phi,
/// discretized in flux form with no flux through the edges and symmetrized
/// by the weight g^2. The eigenvectors are returned for psi itself. Unlike
/// the three-point form this converges at the usual rate when V has an
/// inverse-square singularity at a wall, including the critical -1/(4x^2).
SymmetricTridiagonal discretize_ground_state_gauge(const Grid& grid, const std::function<double(double)>& g,
                                                   double e0);

/// Diagonal operator holding the potential samples only.
SymmetricTridiagonal discretize_potential(const Grid& grid, const std::function<double(double)>& potential);

struct EigenPair {
  double value;
  GridFunction vector;  // L2-normalized by the trapezoidal product
  double residual;      // ||A v - lambda v|| / ||A|| in the matrix 2-norm of coefficients
};

/// The `count` algebraically smallest eigenpairs, ascending. Eigenvalues by
/// Sturm-sequence bisection, eigenvectors by inverse iteration.
std::vector<EigenPair> solve_symmetric_spectrum(const SymmetricTridiagonal& op, int count);

/// Number of eigenvalues strictly below `x` (Sturm count).
int count_eigenvalues_below(const SymmetricTridiagonal& op, double x);

/// Dense real symmetric eigensolver (cyclic Jacobi). Returns eigenvalues in
/// ascending order; `vectors`, if non-null, receives them column-wise.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a,
                                       std::vector<std::vector<double>>* vectors = nullptr);

}  // namespace facdirac
