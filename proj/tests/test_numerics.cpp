#include "doctest.h"

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "osc/numerics.hpp"

using namespace osc;
using namespace osc::numerics;

TEST_CASE("Hermite recurrence matches explicit polynomials")
{
  for (double x : {-1.3, 0.0, 0.7, 2.5}) {
    CHECK(hermite_poly(0, x) == doctest::Approx(1.0));
    CHECK(hermite_poly(1, x) == doctest::Approx(2 * x));
    CHECK(hermite_poly(3, x) == doctest::Approx(8 * x * x * x - 12 * x));
    CHECK(hermite_poly(4, x) == doctest::Approx(16 * std::pow(x, 4) - 48 * x * x + 12));
    const Eigen::VectorXd all = hermite_polys(4, x);
    CHECK(all(4) == doctest::Approx(hermite_poly(4, x)));
  }
  CHECK_THROWS_AS(hermite_poly(-1, 0.5), std::invalid_argument);
}

TEST_CASE("Gauss-Hermite nodes, weights and exactness")
{
  for (int m : {2, 7, 20, 80}) {
    const GaussHermiteRule r = gauss_hermite(m);
    REQUIRE(r.size() == m);
    CHECK(r.exactness_degree() == 2 * m - 1);
    CHECK(r.weights.sum() == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    for (int i = 0; i < m; ++i) {
      CHECK(r.weights(i) > 0.0);
      CHECK(r.nodes(i) == -r.nodes(m - 1 - i));
      if (i > 0) CHECK(r.nodes(i) > r.nodes(i - 1));
    }
  }
  // \int x^(2k) exp(-x^2) dx = Gamma(k + 1/2).
  const GaussHermiteRule r = gauss_hermite(20);
  for (int k = 0; k < 20; ++k) {
    double s = 0.0;
    for (int i = 0; i < r.size(); ++i) s += r.weights(i) * std::pow(r.nodes(i), 2 * k);
    CHECK(s == doctest::Approx(std::tgamma(k + 0.5)).epsilon(1e-12));
  }
}

TEST_CASE("line and plane integrals against closed forms")
{
  const GaussHermiteRule r = gauss_hermite(40);
  const double sigma = 1.7;
  const cdouble line = integrate_line([](double x) { return cdouble(std::cos(x)); }, sigma, r);
  CHECK(line.real() == doctest::Approx(std::sqrt(kPi / sigma) * std::exp(-1.0 / (4 * sigma))).epsilon(1e-13));

  // \int |q|^(2n) exp(-sigma |q|^2) dA = pi n! / sigma^(n+1) in polar coordinates.
  for (int n = 0; n <= 8; ++n) {
    const cdouble v = integrate_plane([n](cdouble q) { return cdouble(std::pow(std::norm(q), n)); }, sigma, r);
    CHECK(v.real() == doctest::Approx(kPi * std::tgamma(n + 1.0) / std::pow(sigma, n + 1)).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-12);
  }
  // Odd angular moments vanish.
  CHECK(std::abs(integrate_plane([](cdouble q) { return q * q * std::conj(q); }, sigma, 30)) < 1e-13);
}

TEST_CASE("finite differences")
{
  auto f = [](double x) { return cdouble(std::sin(x), std::exp(0.3 * x)); };
  const cdouble d = finite_diff(f, 0.3, Stencil{4, 1e-2});
  CHECK(std::abs(d - cdouble(std::cos(0.3), 0.3 * std::exp(0.09))) < 1e-9);
  const cdouble d2 = finite_diff2(f, 0.3, Stencil{4, 1e-2});
  CHECK(std::abs(d2 - cdouble(-std::sin(0.3), 0.09 * std::exp(0.09))) < 1e-7);
  CHECK_THROWS_AS(finite_diff(f, 0.0, Stencil{3, 1e-2}), std::invalid_argument);
  CHECK_THROWS_AS(finite_diff(f, 0.0, Stencil{4, 0.0}), std::invalid_argument);

  // Fourth order: halving h divides the error by about 16.
  const cdouble exact(std::cos(0.3), 0.3 * std::exp(0.09));
  const double e1 = std::abs(finite_diff(f, 0.3, Stencil{4, 0.1}) - exact);
  const double e2 = std::abs(finite_diff(f, 0.3, Stencil{4, 0.05}) - exact);
  CHECK(e1 / e2 > 12.0);
  CHECK(e1 / e2 < 20.0);
}

TEST_CASE("matrix_exp agrees with Eigen's MatrixExponential")
{
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXcd a(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) a(i, j) = cdouble(g(rng), g(rng));
    const Eigen::MatrixXcd oracle = a.exp();
    CHECK((matrix_exp(a) - oracle).norm() / oracle.norm() < 1e-12);
  }
  Eigen::MatrixXcd nil = Eigen::MatrixXcd::Zero(5, 5);
  for (int i = 0; i + 1 < 5; ++i) nil(i + 1, i) = cdouble(i + 1.0, -0.5);
  CHECK(is_strictly_triangular(nil));
  CHECK_FALSE(is_strictly_triangular(nil + Eigen::MatrixXcd::Identity(5, 5)));
  CHECK((matrix_exp(nil) - nil.exp()).norm() < 1e-13);
  CHECK((matrix_exp(Eigen::MatrixXcd::Zero(3, 3)) - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
}
