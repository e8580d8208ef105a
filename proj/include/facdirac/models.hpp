#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "facdirac/grid.hpp"

namespace facdirac {

enum class HierarchyKind { increasing, decreasing };

/// Closed-form shape-invariant families provided by the library.
enum class Family { trig_pt, hyp_pt };

/// A shape-invariant hierarchy: superpotentials w_n, factorization energies
/// mu_n and the index ranges for which H_n has discrete eigenstates.
///
/// The factor operators are a^±_n = ∓d/dx + w_n. For the increasing kind
/// H_n = a^+_n a^-_n + mu_n^2, for the decreasing kind H_n = a^+_n a^-_n - mu_n^2.
class Model {
 public:
  static Model trig_pt();
  static Model hyp_pt();
  /// "trig_pt" or "hyp_pt".
  static Model from_id(std::string_view id);

  const std::string& id() const { return id_; }
  Family family() const { return family_; }
  HierarchyKind kind() const { return kind_; }

  double superpotential(int n, double x) const;
  double superpotential_derivative(int n, double x) const;

  /// mu_n. For a shifted model this is sqrt(mu_n^2 - mu_{n0}^2) and throws
  /// "imaginary shifted mass" below n0.
  double mu(int n) const;
  double mu_squared(int n) const;

  int n_min() const { return n_min_; }
  bool n_valid(int n) const { return n >= n_min_; }
  /// Largest admissible excitation for H_n, or nullopt when unbounded.
  std::optional<int> k_max(int n) const;
  bool k_valid(int n, int k) const;

  /// Default discretization: (0, pi) dirichlet for trig_pt,
  /// [-20, 20] decay_truncation for hyp_pt.
  Grid default_grid(int n_points = 0) const;
  bool is_singular(double x) const;

  /// Same hierarchy with every factorization energy lowered by mu_{n0}^2,
  /// restricted to n >= n0. The n0 member becomes massless.
  Model shifted(int n0) const;
  bool is_shifted() const { return shift_index_.has_value(); }
  std::optional<int> shift_index() const { return shift_index_; }

  /// Adds amplitude * sin(2x) to every superpotential. Used as a negative
  /// control: the perturbed family is no longer shape invariant.
  Model perturbed(double amplitude) const;
  double perturbation() const { return perturbation_; }

 private:
  Model(std::string id, Family family, HierarchyKind kind, int n_min);

  double base_mu(int n) const;

  std::string id_;
  Family family_;
  HierarchyKind kind_;
  int n_min_;
  std::optional<int> shift_index_;
  double perturbation_ = 0.0;
};

void require_valid_n(const Model& model, int n);
void require_valid_nk(const Model& model, int n, int k);

/// V_n(x) = w_n^2 - w_n' + sgn * mu_n^2 with sgn = +1 (increasing) or -1
/// (decreasing). Throws "singular point" at a potential singularity.
double potential(const Model& model, int n, double x);

/// L2-normalized closed-form ground state psi_n^0, positive on the interior:
/// sin^{n+1/2}(x) for trig_pt, cosh^{-(n-1/2)}(x) for hyp_pt.
GridFunction ground_state(const Model& model, int n, const Grid& grid);

}  // namespace facdirac
