#include "facdirac/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace facdirac {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDefaultHypHalfWidth = 20.0;
constexpr int kDefaultTrigPoints = 2001;
constexpr int kDefaultHypPoints = 4001;
}  // namespace

Model::Model(std::string id, Family family, HierarchyKind kind, int n_min)
    : id_(std::move(id)), family_(family), kind_(kind), n_min_(n_min) {}

Model Model::trig_pt() { return Model("trig_pt", Family::trig_pt, HierarchyKind::increasing, 0); }

Model Model::hyp_pt() { return Model("hyp_pt", Family::hyp_pt, HierarchyKind::decreasing, 1); }

Model Model::from_id(std::string_view id) {
  if (id == "trig_pt") return trig_pt();
  if (id == "hyp_pt") return hyp_pt();
  throw Error("unknown model id '" + std::string(id) + "' (known: trig_pt, hyp_pt)");
}

double Model::superpotential(int n, double x) const {
  const double p = perturbation_ * std::sin(2.0 * x);
  switch (family_) {
    case Family::trig_pt:
      return -(n + 0.5) * std::cos(x) / std::sin(x) + p;
    case Family::hyp_pt:
      return (n - 0.5) * std::tanh(x) + p;
  }
  return 0.0;
}

double Model::superpotential_derivative(int n, double x) const {
  const double dp = 2.0 * perturbation_ * std::cos(2.0 * x);
  switch (family_) {
    case Family::trig_pt: {
      const double s = std::sin(x);
      return (n + 0.5) / (s * s) + dp;
    }
    case Family::hyp_pt: {
      const double c = std::cosh(x);
      return (n - 0.5) / (c * c) + dp;
    }
  }
  return 0.0;
}

double Model::base_mu(int n) const {
  if (n < 0) throw Error("hierarchy index " + std::to_string(n) + " is negative");
  return family_ == Family::trig_pt ? n + 0.5 : n - 0.5;
}

double Model::mu_squared(int n) const {
  const double b = base_mu(n);
  if (!shift_index_) return b * b;
  const double b0 = base_mu(*shift_index_);
  return b * b - b0 * b0;
}

double Model::mu(int n) const {
  if (!shift_index_) return base_mu(n);
  if (n < *shift_index_) {
    throw Error("imaginary shifted mass: index " + std::to_string(n) + " lies below the massless index " +
                std::to_string(*shift_index_));
  }
  return std::sqrt(std::max(mu_squared(n), 0.0));
}

std::optional<int> Model::k_max(int n) const {
  if (kind_ == HierarchyKind::increasing) return std::nullopt;
  return n - n_min_;
}

bool Model::k_valid(int n, int k) const {
  if (!n_valid(n) || k < 0) return false;
  const auto kmax = k_max(n);
  return !kmax || k <= *kmax;
}

Grid Model::default_grid(int n_points) const {
  if (family_ == Family::trig_pt) {
    return Grid(0.0, kPi, n_points > 0 ? n_points : kDefaultTrigPoints, Boundary::dirichlet);
  }
  return Grid(-kDefaultHypHalfWidth, kDefaultHypHalfWidth, n_points > 0 ? n_points : kDefaultHypPoints,
              Boundary::decay_truncation);
}

bool Model::is_singular(double x) const {
  if (family_ != Family::trig_pt) return false;
  return x <= 1e-12 || x >= kPi - 1e-12;
}

Model Model::shifted(int n0) const {
  require_valid_n(*this, n0);
  if (shift_index_) throw Error("model is already shifted");
  Model out(*this);
  out.id_ = id_ + "_massless" + std::to_string(n0);
  out.shift_index_ = n0;
  out.n_min_ = n0;
  return out;
}

Model Model::perturbed(double amplitude) const {
  Model out(*this);
  out.perturbation_ += amplitude;
  out.id_ = id_ + "_perturbed";
  return out;
}

void require_valid_n(const Model& model, int n) {
  if (!model.n_valid(n)) {
    throw Error("hierarchy index " + std::to_string(n) + " is outside the valid range of " + model.id() +
                " (n >= " + std::to_string(model.n_min()) + ")");
  }
}

void require_valid_nk(const Model& model, int n, int k) {
  require_valid_n(model, n);
  if (!model.k_valid(n, k)) {
    throw Error("(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ") is outside discrete spectrum of " +
                model.id());
  }
}

double potential(const Model& model, int n, double x) {
  if (model.is_singular(x)) throw Error("singular point: potential of " + model.id() + " diverges at x=" + std::to_string(x));
  const double w = model.superpotential(n, x);
  const double dw = model.superpotential_derivative(n, x);
  const double sgn = model.kind() == HierarchyKind::increasing ? 1.0 : -1.0;
  return w * w - dw + sgn * model.mu_squared(n);
}

GridFunction ground_state(const Model& model, int n, const Grid& grid) {
  require_valid_n(model, n);
  GridFunction psi(grid);
  if (model.family() == Family::trig_pt) {
    const double p = n + 0.5;
    psi = GridFunction::sample(grid, [p](double x) { return Complex(std::pow(std::sin(x), p)); });
  } else {
    const double p = n - 0.5;
    psi = GridFunction::sample(grid, [p](double x) { return Complex(std::pow(std::cosh(x), -p)); });
  }
  const double nrm = norm(psi);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw Error("ground state is not normalizable on this grid");
  return psi * Complex(1.0 / nrm);
}

}  // namespace facdirac
