#pragma once

#include <cstdint>
#include <vector>

#include "facdirac/eigensolver.hpp"
#include "facdirac/grid.hpp"
#include "facdirac/models.hpp"

namespace facdirac {

/// Direction of a first-order factor operator: lower = a^-_n = d/dx + w_n,
/// raise = a^+_n = -d/dx + w_n.
enum class Factor { lower, raise };

/// (∓d/dx + w_n) f, derivative by fourth-order finite differences.
GridFunction apply_factor(const Model& model, int n, Factor dir, const GridFunction& f);

/// H_n f = -f'' + V_n f.
GridFunction apply_schrodinger(const Model& model, int n, const GridFunction& f);

/// Exact closed form of a ladder-generated eigenfunction.
///
/// trig_pt: sin(x)^power * P(cos x); hyp_pt: cosh(x)^(-power) * P(tanh x).
/// Raising operators act on this representation exactly, so the k-th
/// eigenfunction is a polynomial of degree k in the family's variable.
struct LadderFunction {
  Family family;
  double power;
  std::vector<double> poly;  // ascending coefficients

  double operator()(double x) const;
  /// Exact action of a^+_j of the family (unperturbed, shift-independent).
  LadderFunction raised(int j) const;
};

/// psi_n^k ∝ a^+_n ... a^+_{n+k-1} psi_{n+k}^0 (increasing) or
/// a^+_n ... a^+_{n-k+1} psi_{n-k}^0 (decreasing), unnormalized, with the
/// ground state positive.
LadderFunction ladder_function(const Model& model, int n, int k);

/// L2-normalized psi_n^k on the grid. Its phase is the ladder phase: the
/// positive ground state raised with positive constants, so that
/// a^-_n psi_n^k = +sqrt(...) psi_{n±1}^{k-1} holds exactly.
GridFunction eigenfunction(const Model& model, int n, int k, const Grid& grid);

/// mu_{n+k}^2 (increasing) or -mu_{n-k}^2 (decreasing).
double scalar_energy(const Model& model, int n, int k);

/// Norm of a^-_n psi_n^k: sqrt(mu_{n+k}^2 - mu_n^2) or sqrt(mu_n^2 - mu_{n-k}^2).
double ladder_coefficient(const Model& model, int n, int k);

// Identity residuals. Each returns interior_norm(lhs - rhs) / interior_norm(f).

/// (a^-_n H_n - H_{n±1} a^-_n) f with n+1 (increasing) or n-1 (decreasing).
double scalar_intertwine_residual(const Model& model, int n, const GridFunction& f);

/// H_n f against (a^+_n a^-_n ± mu_n^2) f.
double factorization_residual(const Model& model, int n, const GridFunction& f);

/// (a^-_n a^+_n ± mu_n^2) f against H_{n+1} f (increasing) or H_{n-1} f
/// (decreasing).
double shape_invariance_residual(const Model& model, int n, const GridFunction& f);

/// H_n psi against E psi.
double eigen_residual(const Model& model, int n, double energy, const GridFunction& psi);

/// Discretized H_n handed to the grid eigensolver. Families whose ground
/// states vanish at hard walls (trig_pt) use the ground-state gauge, which
/// copes with the critical -1/(4 sin^2 x) wall of n = 0; the others, and any
/// perturbed model, use the plain three-point form.
SymmetricTridiagonal schrodinger_oracle(const Model& model, int n, const Grid& grid);

// Test functions for the identity checks.

GridFunction gaussian_bump(const Grid& grid, double center, double width);

/// `count` Gaussian bumps with centers and widths drawn from a generator
/// seeded with `seed`. Bumps sit well inside the domain of the family.
std::vector<GridFunction> gaussian_test_functions(const Model& model, const Grid& grid, std::uint64_t seed,
                                                  int count);

}  // namespace facdirac
