#include "doctest.h"

#include <cmath>

#include "osc/nim.hpp"

using namespace osc;
using namespace osc::nim;

namespace {

const cdouble I(0.0, 1.0);

PhysParams odd_units() { return PhysParams{2.0, 0.7, 1.3}; }

}  // namespace

TEST_CASE("oscillator reduction picks the orbit (hbar/2, -hbar m)")
{
  const PhysParams p = odd_units();
  const OscillatorReduction r = oscillator_reduction(p, 20);
  CHECK(r.group_orbit.j1 == doctest::Approx(0.65));
  CHECK(r.group_orbit.j2 == doctest::Approx(-2.6));
  CHECK(r.u_orbit.j1 == doctest::Approx(0.5));
  CHECK(r.u_orbit.j2 == doctest::Approx(-p.kappa()));
  CHECK(r.defect < 1e-12);
  CHECK(reduced_system_defect({0.7, -2.6}, p, 20) > 1e-2);
  CHECK(reduced_system_defect({0.65, -2.5}, p, 20) > 1e-2);
  CHECK_FALSE(r.notes.empty());

  InvariantPoly bad;
  bad.A(0, 1) = 1.0;
  CHECK_THROWS_AS(reduce_invariant_operator(bad, rep::RepParams{}), std::invalid_argument);
  const Eigen::Vector4d f(1.0, 2.0, 3.0, 4.0);
  CHECK(InvariantPoly::casimir_k1()(f) == doctest::Approx(2 * 4 + 4 + 9));
}

TEST_CASE("u-space norms")
{
  const PhysParams p = odd_units();
  const USpaceConvention c(p);
  const auto rule = numerics::gauss_hermite(40);
  for (int n = 0; n <= 6; ++n) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n + 1);
    e(n) = 1.0;
    CHECK(u_space_norm_squared(e, p, rule) == doctest::Approx(c.norm_squared(n)).epsilon(1e-12));
  }
  const cdouble u(0.3, 0.4);
  CHECK(std::abs(c.chi(2, u) - u * u * std::exp(-c.kappa * u * u / 4.0)) < 1e-15);
  CHECK(c.weight(u) == doctest::Approx(std::exp(-c.kappa * 0.16)));
}

TEST_CASE("kernel paths agree without extra calibration in non-natural units")
{
  const PhysParams p = odd_units();
  CHECK(parse_path("cocycle") == KernelPath::cocycle);
  CHECK(to_string(KernelPath::correspondence) == "correspondence");
  CHECK_THROWS_AS(parse_path("fourier"), std::invalid_argument);
  for (const cdouble u : {cdouble(0.0), cdouble(0.6, -1.1), cdouble(-1.5, 0.2)})
    for (double t : {0.0, 1.3, 4.0})
      for (double x : {-2.0, 0.1, 1.7}) {
        const HStateLabel s{u, 0.5};
        const cdouble a = hstate_kernel(t, x, s, p, KernelPath::correspondence);
        const cdouble b = hstate_kernel(t, x, s, p, KernelPath::cocycle);
        CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
      }
  // u = 0 gives (omega/2pi) sqrt(hbar m) psi_0.
  const cdouble k0 = hstate_kernel(0.8, 0.3, {0.0, 0.5}, p);
  CHECK(std::abs(k0 - 0.7 / (2 * kPi) * std::sqrt(2.6) * qho::psi_n(0, 0.8, 0.3, p)) < 1e-15);
}

TEST_CASE("closed-form x-derivative of the kernel")
{
  const PhysParams p = odd_units();
  const HStateLabel s{{0.4, -0.9}, 0.5};
  const double h = 1e-3, t = 0.6, x = 0.8;
  auto f = [&](double y) { return hstate_kernel(t, y, s, p); };
  const cdouble fd = (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12 * h);
  CHECK(std::abs(fd - hstate_kernel_dx(t, x, s, p)) < 1e-10 * std::abs(fd));
}

TEST_CASE("stationary states: magnitudes and phases")
{
  const PhysParams p = odd_units();
  const auto rule = numerics::gauss_hermite(60);
  const auto spec = stationary_spectrum(6, p, rule, 20);
  REQUIRE(spec.size() == 7);
  for (const auto& e : spec) {
    CHECK(e.level == e.n + 0.5);
    CHECK(e.energy == doctest::Approx(qho::energy(e.n, p)));
    CHECK(std::abs(e.coefficient) == doctest::Approx(normalization_magnitude(e.n, p)).epsilon(1e-10));
    // The recovered phase is i^n.
    CHECK(std::abs(e.coefficient / std::abs(e.coefficient) - std::pow(I, e.n)) < 1e-10);
  }
  CHECK_THROWS_AS(stationary_spectrum(21, p, rule, 20), std::invalid_argument);
}

TEST_CASE("Fock expansion of the H-state uses the exponent n/2")
{
  const PhysParams p = odd_units();
  const auto rule = numerics::gauss_hermite(60);
  const HStateLabel s{{0.5, 0.8}, 0.5};
  const double t = 0.7;
  const Eigen::VectorXcd c = fock_coeffs_hstate(s, t, 6, p);
  const double k = p.kappa();
  for (int n = 0; n <= 6; ++n) {
    const cdouble q = hstate_overlap(n, s, t, p, rule);
    CHECK(std::abs(q - c(n)) < 1e-10 * c.cwiseAbs().maxCoeff());
    if (n >= 2) {
      // Same expression with (kappa/2)^n in place of (kappa/2)^(n/2).
      const cdouble printed = c(n) * std::pow(k / 2.0, n / 2.0);
      CHECK(std::abs(printed - q) > 1e-2 * std::abs(q));
    }
  }
}

TEST_CASE("H-state means and norm")
{
  const PhysParams p = odd_units();
  const auto rule = numerics::gauss_hermite(60);
  const cdouble u(0.6, -0.9);
  const HStateMeans m = means_hstate({u, 0.5}, 0.4, p, rule);
  CHECK(std::abs(m.norm - hstate_norm_closed_form(u, p)) < 1e-10 * std::abs(m.norm));
  CHECK(std::abs(m.x - m.x_factorized) < 1e-9 * std::abs(m.x));
  CHECK(std::abs(m.p - m.p_factorized) < 1e-9 * std::abs(m.p));
  CHECK(std::abs(m.x.imag()) < 1e-12 * std::abs(m.x));
  CHECK(m.notes.size() == 4);
}

TEST_CASE("Schrodinger residuals separate solutions from non-solutions")
{
  const PhysParams p = odd_units();
  qho::GridSpec grid;
  grid.t_count = 8;
  grid.x_count = 8;
  grid.x_min = -3;
  grid.x_max = 3;
  const HStateLabel s{{-0.7, 1.2}, 0.5};
  CHECK(schrodinger_residual_patches([&](double t, double x) { return hstate_kernel(t, x, s, p); }, grid, p) < 1e-6);
  CHECK(schrodinger_residual_patches([&](double t, double x) { return qho::psi_n(1, 0.0, x, p) * std::exp(-I * t); },
                                     grid, p) > 1e-2);
  const qho::GridField f =
      qho::sample_field([&](double t, double x) { return qho::psi_n(2, t, x, p); }, 0.0, 1e-3, 7, -0.5, 1e-3, 7);
  CHECK(schrodinger_residual(f, p) < 1e-6);
}
