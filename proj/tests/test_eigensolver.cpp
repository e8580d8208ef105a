#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "facdirac/eigensolver.hpp"
#include "facdirac/models.hpp"

using namespace facdirac;

TEST_CASE("free particle on (0, pi)") {
  Grid g(0.0, std::numbers::pi, 2001, Boundary::dirichlet);
  auto op = discretize_schrodinger(g, [](double) { return 0.0; });
  auto pairs = solve_symmetric_spectrum(op, 3);
  REQUIRE(pairs.size() == 3);
  for (int k = 0; k < 3; ++k) {
    const double exact = (k + 1.0) * (k + 1.0);
    CHECK(std::abs(pairs[k].value - exact) / exact < 1e-5);
    CHECK(pairs[k].residual < 1e-10);
    CHECK(norm(pairs[k].vector) == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) CHECK(std::abs(inner_product(pairs[j].vector, pairs[k].vector)) < 1e-8);
}

TEST_CASE("potential-only operator returns sorted samples") {
  Grid g(0.0, 1.0, 40, Boundary::dirichlet);
  auto v = [](double x) { return std::cos(7.0 * x); };
  auto op = discretize_potential(g, v);
  auto pairs = solve_symmetric_spectrum(op, 10);
  std::vector<double> samples;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) samples.push_back(v(g.x(i)));
  std::sort(samples.begin(), samples.end());
  for (int k = 0; k < 10; ++k) CHECK(pairs[k].value == doctest::Approx(samples[k]).epsilon(1e-12));
}

TEST_CASE("trig H_1 spectrum") {
  const auto model = Model::trig_pt();
  const auto g = model.default_grid();
  auto op = discretize_schrodinger(g, [&](double x) { return potential(model, 1, x); });
  auto pairs = solve_symmetric_spectrum(op, 4);
  for (int k = 0; k < 4; ++k) {
    const double exact = (k + 1.5) * (k + 1.5);
    CHECK(std::abs(pairs[k].value - exact) / exact < 1e-3);
    CHECK(pairs[k].residual < 1e-10);
  }
}

TEST_CASE("count bounds") {
  Grid g(0.0, 1.0, 20, Boundary::dirichlet);
  auto op = discretize_schrodinger(g, [](double) { return 0.0; });
  CHECK_THROWS_AS(solve_symmetric_spectrum(op, 21), Error);
  CHECK_THROWS_AS(solve_symmetric_spectrum(op, -1), Error);
  CHECK(count_eigenvalues_below(op, -1.0) == 0);
  CHECK(count_eigenvalues_below(op, 1e9) == 18);
}

TEST_CASE("jacobi eigenvalues") {
  std::vector<std::vector<double>> a = {{2, 1, 0}, {1, 2, 1}, {0, 1, 2}};
  std::vector<std::vector<double>> vecs;
  auto vals = jacobi_eigenvalues(a, &vecs);
  CHECK(vals[0] == doctest::Approx(2 - std::sqrt(2.0)));
  CHECK(vals[1] == doctest::Approx(2.0));
  CHECK(vals[2] == doctest::Approx(2 + std::sqrt(2.0)));
  for (int c = 0; c < 3; ++c) {
    for (int r = 0; r < 3; ++r) {
      double av = 0.0;
      for (int j = 0; j < 3; ++j) av += a[r][j] * vecs[j][c];
      CHECK(av == doctest::Approx(vals[c] * vecs[r][c]));
    }
  }
  CHECK_THROWS_AS(jacobi_eigenvalues({{1, 2}, {3}}), Error);
}
