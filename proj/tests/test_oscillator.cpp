#include "doctest.h"

#include <cmath>

#include "osc/oscillator.hpp"

using namespace osc;
using namespace osc::qho;

namespace {

const cdouble I(0.0, 1.0);

PhysParams odd_units() { return PhysParams{2.0, 0.7, 1.3}; }

double residual_at(const PhysParams& p, int n, double h)
{
  const GridField patch = sample_patch([&](double t, double x) { return psi_n(n, t, x, p); }, 0.2, 0.4, h, 5);
  const GridField hp = apply_operator(Operator::H, patch, p);
  return std::abs(hp.values(2, 2) - energy(n, p) * patch.values(2, 2));
}

}  // namespace

TEST_CASE("parameters")
{
  CHECK_THROWS_AS((PhysParams{0.0, 1.0, 1.0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS((PhysParams{1.0, -1.0, 1.0}).validate(), std::invalid_argument);
  CHECK(odd_units().kappa() == doctest::Approx(2.0 * 0.7 * 1.3));
  CHECK(energy(3, odd_units()) == doctest::Approx(1.3 * 0.7 * 3.5));
}

TEST_CASE("Hermite states")
{
  const PhysParams p = odd_units();
  CHECK(psi_n(0, 0.0, 0.0, p).real() == doctest::Approx(std::pow(2.0 * 0.7 / (kPi * 1.3), 0.25)));
  for (int n : {0, 1, 4}) {
    const double t = 0.9, x = 0.35;
    const cdouble ratio = psi_n(n, t, x, p) / psi_n(n, 0.0, x, p);
    CHECK(std::abs(ratio - std::exp(-I * 0.7 * (n + 0.5) * t)) < 1e-14);
  }
  CHECK_THROWS_AS(psi_n(-1, 0.0, 0.0, p), std::invalid_argument);
  // Orthonormality by trapezoid sums on a wide interval, independent of the Gauss-Hermite rule.
  const double L = 8.0 / p.length_inv(), dx = L / 2000.0;
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n) {
      cdouble s = 0.0;
      for (int k = -2000; k <= 2000; ++k) s += std::conj(psi_n(m, 0, k * dx, p)) * psi_n(n, 0, k * dx, p);
      CHECK(std::abs(s * dx - (m == n ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("coherent states")
{
  const PhysParams p = odd_units();
  for (double t : {0.0, 1.1}) CHECK(std::abs(coherent_alpha(t, 0.4, 0.0, p) - psi_n(0, t, 0.4, p)) < 1e-15);
  CHECK(fock_expansion_coherent(1.0, 0.0, 0, PhysParams{})(0).real() == doctest::Approx(std::exp(-0.5)));
  CHECK_THROWS_AS(fock_expansion_coherent(1.0, 0.0, -1, p), std::invalid_argument);

  const auto [x0, p0] = mean_coherent(0.8, 0.0, p);
  CHECK(x0 == doctest::Approx(std::sqrt(2 * 1.3 / (2.0 * 0.7)) * 0.8));
  CHECK(std::abs(p0) < 1e-15);
  const cdouble z(0.3, -1.2);
  const auto a = mean_coherent(z, 0.4, p), b = mean_coherent(z, 0.4 + 2 * kPi / 0.7, p);
  CHECK(a.first == doctest::Approx(b.first));
  CHECK(a.second == doctest::Approx(b.second));
}

TEST_CASE("operators on sampled fields")
{
  const PhysParams p = odd_units();
  CHECK(parse_operator("adag") == Operator::adag);
  CHECK_THROWS_AS(parse_operator("q"), std::invalid_argument);

  const GridField small = sample_field([](double, double x) { return cdouble(x); }, 0, 1, 5, 0, 1, 4);
  CHECK_THROWS_AS(apply_operator(Operator::p, small, p), std::invalid_argument);

  const GridField f = sample_patch([&](double t, double x) { return psi_n(2, t, x, p); }, 0.0, 0.0, 1e-2, 9);
  const GridField once = apply_operator(Operator::a, f, p);
  CHECK(once.margin_x == 2);
  CHECK(apply_operator(Operator::adag, once, p).margin_x == 4);
  CHECK(apply_operator(Operator::p0, f, p).margin_t == 2);
  CHECK_FALSE(once.valid(0, 0));
  CHECK(once.valid(4, 4));

  // Fourth order in the spacing.
  const double r1 = residual_at(p, 3, 0.02), r2 = residual_at(p, 3, 0.01);
  CHECK(r1 / r2 > 12.0);
  CHECK(r1 / r2 < 20.0);
}

TEST_CASE("symmetry operators in non-natural units")
{
  GridSpec grid;
  grid.t_count = 8;
  grid.x_count = 9;
  grid.x_min = -3.0;
  grid.x_max = 3.0;
  const SymmetryReport r = symmetry_suite(odd_units(), grid, 1e-5);
  for (const auto& c : r.checks) {
    INFO(c.name << " measured " << c.measured);
    CHECK(c.pass);
  }
  CHECK(r.pass());
  CHECK(r.checks.size() == 11);
}
