#include "doctest.h"

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "osc/lie_osc.hpp"

using namespace osc;
using namespace osc::lie;

namespace {

// Faithful 4x4 realization: E1 rotates the middle block, E2 and E3 fill the
// first row and last column, E4 sits in the corner.
std::array<Eigen::Matrix4d, 4> generators()
{
  std::array<Eigen::Matrix4d, 4> e;
  for (auto& m : e) m.setZero();
  e[0](1, 2) = 1.0;
  e[0](2, 1) = -1.0;
  e[1](0, 1) = 1.0;
  e[1](2, 3) = 1.0;
  e[2](0, 2) = 1.0;
  e[2](1, 3) = -1.0;
  e[3](0, 3) = 2.0;
  return e;
}

Eigen::Matrix4d realize(const GroupElementd& g)
{
  const auto e = generators();
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  for (int a = 3; a >= 0; --a) m = m * Eigen::Matrix4d(g[a] * e[a]).exp();
  return m;
}

// Composition with the x4 term as commonly printed: x2 (y1 sin x1 - y3 cos x1).
GroupElementd compose_printed(const GroupElementd& g, const GroupElementd& h)
{
  GroupElementd r = compose(g, h);
  r[3] += g[1] * (h[0] - h[1]) * std::sin(g[0]);
  return r;
}

GroupElementd random_element(std::mt19937_64& rng, double bound)
{
  std::uniform_real_distribution<double> u(-bound, bound);
  return GroupElementd(u(rng), u(rng), u(rng), u(rng));
}

}  // namespace

TEST_CASE("structure constants and bracket")
{
  CHECK(structure_constant(0, 1, 2) == -1.0);
  CHECK(structure_constant(0, 2, 1) == 1.0);
  CHECK(structure_constant(1, 2, 3) == -1.0);
  CHECK(structure_constant(1, 0, 2) == 1.0);
  CHECK(structure_constant(0, 3, 1) == 0.0);
  const auto e = generators();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
      for (int c = 0; c < 4; ++c) expected += structure_constant(a, b, c) * e[c];
      CHECK((e[a] * e[b] - e[b] * e[a] - expected).norm() == 0.0);
      const auto br = bracket(basis<double>(a), basis<double>(b));
      for (int c = 0; c < 4; ++c) CHECK(br(c) == structure_constant(a, b, c));
    }
}

TEST_CASE("Poisson brackets and Casimirs")
{
  const Covector<double> f(0.3, -1.1, 0.7, -2.0);
  CHECK(poisson_bracket_coords(0, 1, f) == doctest::Approx(-f(2)));
  CHECK(poisson_bracket_coords(1, 2, f) == doctest::Approx(-f(3)));
  CHECK_THROWS_AS(poisson_bracket_coords(0, 4, f), std::out_of_range);
  const auto k = casimirs(f);
  CHECK(k.k1 == doctest::Approx(2 * 0.3 * -2.0 + 1.21 + 0.49));
  CHECK(k.k2 == -2.0);
  for (int a = 0; a < 4; ++a) CHECK(std::abs(poisson_bracket(casimir_k1_gradient(f), basis<double>(a), f)) < 1e-15);
}

TEST_CASE("canonical coordinates")
{
  const OrbitLabel orbit{0.5, -1.0};
  const auto f0 = canonical_embedding(0.0, 0.0, orbit);
  CHECK(std::abs(f0(0) - 0.5) == 0.0);
  CHECK(std::abs(f0(3) + 1.0) == 0.0);
  const auto f = canonical_embedding({0.4, -0.2}, {1.1, 0.3}, orbit);
  const auto k = casimirs(f);
  CHECK(std::abs(k.k1 - 2.0 * orbit.j1 * orbit.j2) < 1e-14);
}

TEST_CASE("composition agrees with the faithful matrix realization")
{
  std::mt19937_64 rng(11);
  for (int s = 0; s < 200; ++s) {
    const GroupElementd g = random_element(rng, 2.0), h = random_element(rng, 2.0);
    const Eigen::Matrix4d lhs = realize(g) * realize(h);
    CHECK((lhs - realize(compose(g, h))).norm() < 1e-12 * (1.0 + lhs.norm()));
    CHECK((realize(inverse(g)) - realize(g).inverse()).norm() < 1e-12 * (1.0 + realize(g).inverse().norm()));
  }
}

TEST_CASE("the printed x4 term breaks associativity")
{
  std::mt19937_64 rng(5);
  double corrected = 0.0, printed = 0.0;
  for (int s = 0; s < 200; ++s) {
    const GroupElementd a = random_element(rng, 1.5), b = random_element(rng, 1.5), c = random_element(rng, 1.5);
    corrected = std::max(corrected, (compose(compose(a, b), c).x - compose(a, compose(b, c)).x).cwiseAbs().maxCoeff());
    printed = std::max(printed, (compose_printed(compose_printed(a, b), c).x -
                                 compose_printed(a, compose_printed(b, c)).x).cwiseAbs().maxCoeff());
  }
  CHECK(corrected < 1e-13);
  CHECK(printed > 1e-2);
}

TEST_CASE("invariant fields against the matrix realization")
{
  const auto e = generators();
  std::mt19937_64 rng(3);
  const double h = 1e-3;
  for (int s = 0; s < 20; ++s) {
    const GroupElementd g = random_element(rng, 2.0);
    std::array<Eigen::Matrix4d, 4> dm;
    for (int k = 0; k < 4; ++k) {
      auto at = [&](double t) {
        GroupElementd q = g;
        q[k] += t;
        return realize(q);
      };
      dm[k] = (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12 * h);
    }
    const auto L = left_fields(g), R = right_fields(g), T = right_fields_tabulated(g);
    const Eigen::Matrix4d M = realize(g);
    for (int a = 0; a < 4; ++a) {
      Eigen::Matrix4d xi = Eigen::Matrix4d::Zero(), eta = Eigen::Matrix4d::Zero();
      for (int k = 0; k < 4; ++k) {
        xi += L(a, k) * dm[k];
        eta += R(a, k) * dm[k];
      }
      CHECK((xi - M * e[a]).norm() < 1e-8 * (1.0 + M.norm()));
      CHECK((eta + e[a] * M).norm() < 1e-8 * (1.0 + M.norm()));
    }
    // The tabulated list differs from the derived one only in eta3.
    CHECK((T.topRows(2) - R.topRows(2)).norm() == 0.0);
    CHECK((T.row(2) - R.row(2)).norm() > 0.5);
  }
}

TEST_CASE("group basics")
{
  const GroupElementd g(0.4, -1.0, 2.0, 0.3);
  CHECK((compose(GroupElementd::identity(), g).x - g.x).norm() == 0.0);
  CHECK((compose(g, inverse(g)).x).norm() < 1e-15);
  CHECK(exp_generator(2, 1.5)[2] == 1.5);
  CHECK_THROWS_AS(exp_generator(4, 1.0), std::out_of_range);
}
