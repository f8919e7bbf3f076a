#include "osc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <random>
#include <sstream>

#include "json.hpp"

#include "osc/lambda_rep.hpp"
#include "osc/lie_osc.hpp"
#include "osc/nim.hpp"
#include "osc/numerics.hpp"

namespace osc::verify {

using nlohmann::json;
using lie::GroupElementd;

namespace {

const cdouble I(0.0, 1.0);

using Field4 = lie::FieldMatrix<double>;

// FNV-1a, so per-suite streams do not depend on std::hash.
std::uint64_t stream_seed(std::uint64_t seed, const std::string& name)
{
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Sampler
{
  std::mt19937_64 rng;
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  cdouble disk(double radius)
  {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    const double a = uniform(0.0, 2.0 * kPi);
    return std::polar(r, a);
  }
  GroupElementd group(double bound)
  {
    return GroupElementd(uniform(-bound, bound), uniform(-bound, bound), uniform(-bound, bound),
                         uniform(-bound, bound));
  }
};

double rel(cdouble a, cdouble b)
{
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

std::string fmt(const char* f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void require_window(const RunConfig& c, const std::string& suite)
{
  if (c.N < 4)
    throw ConfigError(suite + " suite: protected window too small for truncation N=" + std::to_string(c.N) +
                      " (need N >= 4)");
}

rep::RepParams make_rep(const lie::OrbitLabel& orbit, double hbar, int N)
{
  rep::RepParams r;
  r.orbit = orbit;
  r.hbar = hbar;
  r.N = N;
  return r;
}

lie::OrbitLabel oscillator_orbit(const qho::PhysParams& p) { return {p.hbar / 2.0, -p.hbar * p.m}; }

// Fourth-order central difference of a matrix-valued function of the coordinates.
Field4 coordinate_derivative(const std::function<Field4(const GroupElementd&)>& f, const GroupElementd& g, int j,
                             double h)
{
  auto at = [&](double s) {
    GroupElementd k = g;
    k[j] += s;
    return f(k);
  };
  return (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12.0 * h);
}

// Largest deviation of [X_a, Y_b] from the expected field, relative to the term sizes.
double field_commutator_defect(const std::function<Field4(const GroupElementd&)>& X,
                               const std::function<Field4(const GroupElementd&)>& Y, const GroupElementd& g,
                               bool same_family)
{
  const double h = 1e-3;
  std::array<Field4, 4> dX, dY;
  for (int j = 0; j < 4; ++j) {
    dX[j] = coordinate_derivative(X, g, j, h);
    dY[j] = coordinate_derivative(Y, g, j, h);
  }
  const Field4 x = X(g), y = Y(g);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int k = 0; k < 4; ++k) {
        double lhs = 0.0, scale = 1.0;
        for (int j = 0; j < 4; ++j) {
          lhs += x(a, j) * dY[j](b, k) - y(b, j) * dX[j](a, k);
          scale = std::max({scale, std::abs(x(a, j) * dY[j](b, k)), std::abs(y(b, j) * dX[j](a, k))});
        }
        double expected = 0.0;
        if (same_family)
          for (int c = 0; c < 4; ++c) expected += lie::structure_constant(a, b, c) * x(c, k);
        worst = std::max(worst, std::abs(lhs - expected) / scale);
      }
  return worst;
}

double coord_gap(const GroupElementd& a, const GroupElementd& b)
{
  return (a.x - b.x).cwiseAbs().maxCoeff() / (1.0 + std::max(a.x.cwiseAbs().maxCoeff(), b.x.cwiseAbs().maxCoeff()));
}

cdouble fd_x(const std::function<cdouble(double)>& f, double x, double h)
{
  return numerics::finite_diff(f, x, numerics::Stencil{4, h});
}

// ---------------------------------------------------------------- algebra

SuiteReport algebra_suite(const RunConfig& cfg, Sampler& rnd)
{
  SuiteReport r{"algebra", {}, {}};
  auto tol = [&](const std::string& k, double d) { return cfg.tolerance("algebra", k, d); };

  double antisym = 0.0, jacobi = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const auto ea = lie::basis<double>(a), eb = lie::basis<double>(b);
      antisym = std::max(antisym, (lie::bracket(ea, eb) + lie::bracket(eb, ea)).cwiseAbs().maxCoeff());
      for (int c = 0; c < 4; ++c) {
        const auto ec = lie::basis<double>(c);
        const lie::AlgebraVector<double> j = lie::bracket(ea, lie::bracket(eb, ec)) + lie::bracket(eb, lie::bracket(ec, ea)) +
                       lie::bracket(ec, lie::bracket(ea, eb));
        jacobi = std::max(jacobi, j.cwiseAbs().maxCoeff());
      }
    }
  r.checks.push_back(make_check("bracket antisymmetry", antisym, tol("antisymmetry", 0.0)));
  r.checks.push_back(make_check("Jacobi identity", jacobi, tol("jacobi", 0.0)));

  double casimir_pb = 0.0, embed_pb = 0.0, embed_casimir = 0.0;
  for (int s = 0; s < 100; ++s) {
    lie::Covector<double> f;
    for (int a = 0; a < 4; ++a) f(a) = rnd.uniform(-2.0, 2.0);
    const auto g1 = lie::casimir_k1_gradient(f), g2 = lie::casimir_k2_gradient(f);
    for (int a = 0; a < 4; ++a) {
      const auto ea = lie::basis<double>(a);
      casimir_pb = std::max({casimir_pb, std::abs(lie::poisson_bracket(g1, ea, f)),
                             std::abs(lie::poisson_bracket(g2, ea, f))});
    }

    const lie::OrbitLabel orbit{rnd.uniform(-2.0, 2.0), rnd.uniform(-2.0, -0.1)};
    const cdouble p = rnd.disk(2.0), q = rnd.disk(2.0);
    const auto fe = lie::canonical_embedding(p, q, orbit);
    const auto jac = lie::canonical_embedding_jacobian(p, q, orbit);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const cdouble canonical = jac(a, 0) * jac(b, 1) - jac(a, 1) * jac(b, 0);
        embed_pb = std::max(embed_pb, std::abs(canonical - lie::poisson_bracket_coords(a, b, fe)));
      }
    const auto k = lie::casimirs(fe);
    embed_casimir = std::max({embed_casimir, std::abs(k.k1 - 2.0 * orbit.j1 * orbit.j2),
                              std::abs(k.k2 - orbit.j2)});
  }
  r.checks.push_back(make_check("Casimirs Poisson-commute with coordinates", casimir_pb, tol("casimir_poisson", 1e-12)));
  r.checks.push_back(make_check("canonical coordinates reproduce the Lie-Poisson bracket", embed_pb,
                                tol("canonical_bracket", 1e-12)));
  r.checks.push_back(make_check("Casimirs constant on the orbit", embed_casimir, tol("orbit_casimirs", 1e-12)));

  const auto left = [](const GroupElementd& g) { return lie::left_fields(g); };
  const auto right = [](const GroupElementd& g) { return lie::right_fields(g); };
  const auto tab = [](const GroupElementd& g) { return lie::right_fields_tabulated(g); };
  double dl = 0.0, dr = 0.0, dlr = 0.0, dtab = 0.0;
  for (int s = 0; s < 100; ++s) {
    GroupElementd g(rnd.uniform(-kPi, kPi), rnd.uniform(-2.0, 2.0), rnd.uniform(-2.0, 2.0), rnd.uniform(-2.0, 2.0));
    dl = std::max(dl, field_commutator_defect(left, left, g, true));
    dr = std::max(dr, field_commutator_defect(right, right, g, true));
    dlr = std::max(dlr, field_commutator_defect(left, right, g, false));
    dtab = std::max(dtab, field_commutator_defect(tab, tab, g, true));
  }
  const double fd = tol("field_commutators", 1e-6);
  r.checks.push_back(make_check("left-invariant field commutators (finite differences)", dl, fd));
  r.checks.push_back(make_check("right-invariant field commutators (finite differences)", dr, fd));
  r.checks.push_back(make_check("[xi_a, eta_b] = 0 (finite differences)", dlr, fd));
  r.checks.push_back(make_check("negative control: tabulated eta3 = -d/dx1 breaks the algebra", dtab, 1e-2, true));
  r.notes.push_back("right fields derived from g -> exp(t e_a) g; eta3 = -d/dx3, the tabulated -d/dx1 gives defect " +
                    fmt("%.3e", dtab));
  return r;
}

// ---------------------------------------------------------------- group

SuiteReport group_suite(const RunConfig& cfg, Sampler& rnd)
{
  require_window(cfg, "group");
  SuiteReport r{"group", {}, {}};
  auto tol = [&](const std::string& k, double d) { return cfg.tolerance("group", k, d); };
  auto wide = [&] {
    return GroupElementd(rnd.uniform(-kPi, kPi), rnd.uniform(-2.0, 2.0), rnd.uniform(-2.0, 2.0),
                         rnd.uniform(-2.0, 2.0));
  };

  double assoc = 0.0, inv = 0.0, unit = 0.0, one_param = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const GroupElementd a = wide(), b = wide(), c = wide();
    assoc = std::max(assoc, coord_gap(lie::compose(lie::compose(a, b), c), lie::compose(a, lie::compose(b, c))));
    inv = std::max({inv, coord_gap(lie::compose(a, lie::inverse(a)), GroupElementd()),
                    coord_gap(lie::compose(lie::inverse(a), a), GroupElementd())});
    unit = std::max({unit, coord_gap(lie::compose(GroupElementd(), a), a), coord_gap(lie::compose(a, GroupElementd()), a)});
    const int k = s % 4;
    const double t1 = rnd.uniform(-2.0, 2.0), t2 = rnd.uniform(-2.0, 2.0);
    one_param = std::max(one_param, coord_gap(lie::compose(lie::exp_generator(k, t1), lie::exp_generator(k, t2)),
                                              lie::exp_generator(k, t1 + t2)));
  }
  r.checks.push_back(make_check("associativity of the composition law", assoc, tol("associativity", 1e-12)));
  r.checks.push_back(make_check("inverse", inv, tol("inverse", 1e-12)));
  r.checks.push_back(make_check("identity element", unit, tol("identity", 0.0)));
  r.checks.push_back(make_check("one-parameter subgroups", one_param, tol("one_parameter", 1e-14)));

  // Fields against the group law: xi_a = d/dt g exp(t e_a), eta_a = -d/dt exp(t e_a) g.
  double dxi = 0.0, deta = 0.0;
  const double h = 1e-3;
  for (int s = 0; s < 100; ++s) {
    const GroupElementd g = wide();
    const Field4 L = lie::left_fields(g), R = lie::right_fields(g);
    for (int a = 0; a < 4; ++a) {
      auto right_mul = [&](double t) { return lie::compose(g, lie::exp_generator(a, t)).x; };
      auto left_mul = [&](double t) { return lie::compose(lie::exp_generator(a, t), g).x; };
      const Eigen::Vector4d xi = (right_mul(-2 * h) - 8.0 * right_mul(-h) + 8.0 * right_mul(h) - right_mul(2 * h)) / (12 * h);
      const Eigen::Vector4d eta = -(left_mul(-2 * h) - 8.0 * left_mul(-h) + 8.0 * left_mul(h) - left_mul(2 * h)) / (12 * h);
      dxi = std::max(dxi, (xi - L.row(a).transpose()).cwiseAbs().maxCoeff() / (1.0 + L.row(a).cwiseAbs().maxCoeff()));
      deta = std::max(deta, (eta - R.row(a).transpose()).cwiseAbs().maxCoeff() / (1.0 + R.row(a).cwiseAbs().maxCoeff()));
    }
  }
  r.checks.push_back(make_check("left fields generate right translations", dxi, tol("left_fields", 1e-8)));
  r.checks.push_back(make_check("right fields generate left translations", deta, tol("right_fields", 1e-8)));

  const rep::RepParams rp = make_rep(oscillator_orbit(cfg.phys), cfg.phys.hbar, cfg.N);
  const int degree = std::min(20, cfg.N / 2);
  double hom = 0.0;
  for (int s = 0; s < 20; ++s) {
    const GroupElementd g1 = rnd.group(0.5), g2 = rnd.group(0.5);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(rp.dim());
    for (int n = 0; n <= degree; ++n) c(n) = cdouble(rnd.uniform(-1, 1), rnd.uniform(-1, 1));
    const Eigen::VectorXcd lhs = rep::rep_matrix(g1, rp) * (rep::rep_matrix(g2, rp) * c);
    const Eigen::VectorXcd rhs = rep::rep_matrix(lie::compose(g1, g2), rp) * c;
    hom = std::max(hom, (lhs - rhs).norm() / rhs.norm());
  }
  r.checks.push_back(make_check("rep_matrix homomorphism on low-degree coefficients", hom, tol("homomorphism", 1e-8)));
  const double id_gap =
      (rep::rep_matrix(GroupElementd(), rp) - Eigen::MatrixXcd::Identity(rp.dim(), rp.dim())).cwiseAbs().maxCoeff();
  r.checks.push_back(make_check("rep_matrix(identity) = I", id_gap, tol("rep_identity", 0.0)));
  r.notes.push_back("homomorphism tested on degree <= " + std::to_string(degree) + " with |x_i| <= 0.5");
  return r;
}

// ---------------------------------------------------------------- lambda

SuiteReport lambda_suite(const RunConfig& cfg, Sampler& rnd)
{
  require_window(cfg, "lambda");
  SuiteReport r{"lambda", {}, {}};
  auto tol = [&](const std::string& k, double d) { return cfg.tolerance("lambda", k, d); };
  const double hbar = cfg.phys.hbar;
  const rep::RepParams rp = make_rep(oscillator_orbit(cfg.phys), hbar, cfg.N);
  const int window = rep::protected_limit(rp, 2);
  r.notes.push_back("protected window: indices 0.." + std::to_string(window));

  const rep::LambdaMatrices L = rep::lambda_matrices(rp);
  const char* names[] = {"L1", "L2", "L3", "L4"};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(rp.dim(), rp.dim());
      for (int c = 0; c < 4; ++c) expected += lie::structure_constant(a, b, c) * L[c];
      const Eigen::MatrixXcd comm = L[a] * L[b] - L[b] * L[a];
      r.checks.push_back(make_check(std::string("commutator [") + names[a] + "," + names[b] + "]",
                                    nim::max_abs_window(comm - expected, window), tol("commutators", 1e-13)));
    }

  double k1 = 0.0, k2 = 0.0;
  for (int s = 0; s < 20; ++s) {
    const rep::RepParams g = make_rep({rnd.uniform(-2.0, 2.0), rnd.uniform(-2.0, -0.1)}, hbar, cfg.N);
    const double value = (2.0 * g.orbit.j1 - hbar) * g.orbit.j2;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(g.dim(), g.dim());
    k1 = std::max(k1, nim::max_abs_window(rep::casimir_matrix(g) - value * id, window));
    k2 = std::max(k2, (rep::casimir2_matrix(g) - g.orbit.j2 * id).cwiseAbs().maxCoeff());
  }
  r.checks.push_back(make_check("K1 scalar (2 j1 - hbar) j2 on the window", k1, tol("casimir_k1", 1e-13)));
  r.checks.push_back(make_check("K2 = j2 I", k2, tol("casimir_k2", 0.0)));

  const numerics::GaussHermiteRule rule = numerics::gauss_hermite(cfg.M);
  const rep::RepParams small = make_rep(rp.orbit, hbar, std::min(12, cfg.N));
  const Eigen::MatrixXcd gram = rep::gram_matrix(small, rule);
  double offdiag = 0.0, diag = 0.0;
  for (int m = 0; m < small.dim(); ++m) {
    diag = std::max(diag, std::abs(gram(m, m) - rep::basis_norm_squared(m, small)) / rep::basis_norm_squared(m, small));
    for (int n = 0; n < small.dim(); ++n)
      if (m != n) offdiag = std::max(offdiag, std::abs(gram(m, n)) / std::sqrt(std::abs(gram(m, m) * gram(n, n))));
  }
  r.checks.push_back(make_check("Gram matrix off-diagonal", offdiag, tol("gram_offdiag", 1e-10)));
  r.checks.push_back(make_check("basis norms pi n! (2 hbar/|j2|)^(n+1)", diag, tol("gram_norms", 1e-10)));

  const Eigen::MatrixXcd G = rep::gram_matrix(rp, rule);
  Eigen::VectorXd sinv(rp.dim());
  for (int n = 0; n < rp.dim(); ++n) sinv(n) = 1.0 / std::sqrt(G(n, n).real());
  double herm = 0.0;
  for (int a = 0; a < 4; ++a) {
    const Eigen::MatrixXcd GA = sinv.asDiagonal() * (G * (-I * hbar * L[a])) * sinv.asDiagonal();
    const Eigen::MatrixXcd d = GA - GA.adjoint();
    herm = std::max(herm, nim::max_abs_window(d, window) / std::max(1.0, nim::max_abs_window(GA, window)));
  }
  r.checks.push_back(make_check("-i hbar L_a Hermitian under the Gram matrix", herm, tol("hermiticity", 1e-10)));

  double symmetry = 0.0;
  for (int s = 0; s < 5; ++s) {
    Eigen::VectorXcd a(8), b(8);
    for (int n = 0; n < 8; ++n) {
      a(n) = cdouble(rnd.uniform(-1, 1), rnd.uniform(-1, 1));
      b(n) = cdouble(rnd.uniform(-1, 1), rnd.uniform(-1, 1));
    }
    const rep::FockCoeffs fa(a, rp), fb(b, rp);
    symmetry = std::max(symmetry, rel(rep::inner_product(fa, fb, rule).value,
                                      std::conj(rep::inner_product(fb, fa, rule).value)));
  }
  r.checks.push_back(make_check("inner product Hermitian symmetry", symmetry, tol("inner_symmetry", 1e-12)));
  return r;
}

// ---------------------------------------------------------------- kernels

SuiteReport kernels_suite(const RunConfig& cfg, Sampler& rnd)
{
  require_window(cfg, "kernels");
  SuiteReport r{"kernels", {}, {}};
  auto tol = [&](const std::string& k, double d) { return cfg.tolerance("kernels", k, d); };
  const rep::RepParams rp = make_rep(oscillator_orbit(cfg.phys), cfg.phys.hbar, cfg.N);
  const double j1 = rp.orbit.j1, j2 = rp.orbit.j2, hbar = rp.hbar;
  const numerics::GaussHermiteRule rule = numerics::gauss_hermite(cfg.M);

  double series = 0.0;
  for (int s = 0; s < 100; ++s) {
    const cdouble q = rnd.disk(1.0), qbar2 = std::conj(rnd.disk(1.0));
    series = std::max(series, rel(rep::reproducing_kernel_series(q, qbar2, rp, 20), rep::reproducing_kernel(q, qbar2, rp)));
  }
  r.checks.push_back(make_check("reproducing kernel series (20 terms) vs closed form", series, tol("series", 1e-12)));

  double repro = 0.0;
  for (int n = 0; n <= std::min(10, rp.N); ++n) {
    const rep::FockCoeffs phi = rep::FockCoeffs::basis_vector(n, rp);
    double err = 0.0, scale = 0.0;
    for (int s = 0; s < 8; ++s) {
      const cdouble q = std::polar(rnd.uniform(0.5, 2.0), rnd.uniform(0.0, 2.0 * kPi));
      const cdouble exact = phi(q);
      err = std::max(err, std::abs(rep::reproduce(phi, q, rule) - exact));
      scale = std::max(scale, std::abs(exact));
    }
    repro = std::max(repro, err / scale);
  }
  r.checks.push_back(make_check("reproducing property, n <= 10, |q| <= 2", repro, tol("reproduce", 1e-8)));

  double unit = 0.0, cocycle = 0.0, at_identity = 0.0;
  for (int s = 0; s < 100; ++s) {
    const cdouble q = rnd.disk(1.0), qbar2 = rnd.disk(1.0);
    const GroupElementd g = rnd.group(1.0), gt = rnd.group(1.0);
    unit = std::max(unit, std::abs(rep::cocycle_U(q, GroupElementd(), rp) - 1.0));
    const cdouble lhs = rep::cocycle_U(q, lie::compose(gt, g), rp);
    const cdouble rhs = rep::cocycle_U(q, g, rp) * rep::cocycle_U(rep::point_action(q, g), gt, rp);
    cocycle = std::max(cocycle, rel(lhs, rhs));
    at_identity = std::max(at_identity, rel(rep::dkernel(q, qbar2, GroupElementd(), rp), rep::reproducing_kernel(q, qbar2, rp)));
  }
  r.checks.push_back(make_check("U(q, e) = 1", unit, tol("cocycle_unit", 0.0)));
  r.checks.push_back(make_check("cocycle identity U(q, g~ g) = U(q, g) U(q g^-1, g~)", cocycle, tol("cocycle", 1e-10)));
  r.checks.push_back(make_check("D-kernel at identity is the reproducing kernel", at_identity, tol("dkernel_identity", 1e-15)));

  double gen = 0.0;
  for (int s = 0; s < 20; ++s) {
    const cdouble q = rnd.disk(2.0);
    const double h = 1e-3;
    auto f = [&](double t) { return rep::point_action(q, lie::exp_generator(0, t)); };
    const cdouble d = (f(-2 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2 * h)) / (12 * h);
    gen = std::max(gen, std::abs(d + I * q) / std::max(1.0, std::abs(q)));
  }
  r.checks.push_back(make_check("point action generator -i q", gen, tol("point_generator", 1e-9)));

  // \int D(q, w; g1) D(w, q'; g2) dmu(w) = D(q, q'; g2 g1), all factors combined in one exponent.
  double conv = 0.0;
  const double sigma = rp.sigma();
  for (int s = 0; s < 6; ++s) {
    const GroupElementd g1 = rnd.group(0.5), g2 = rnd.group(0.5);
    const cdouble q = rnd.disk(1.0), qbar2 = rnd.disk(1.0);
    auto remainder = [&](cdouble w) {
      const cdouble wd = w - std::conj(w);
      return std::exp(rep::log_dkernel(q, std::conj(w), g1, rp) + rep::log_dkernel(w, qbar2, g2, rp) -
                      j2 / (4.0 * hbar) * wd * wd + sigma * std::norm(w));
    };
    const cdouble lhs = numerics::integrate_plane(remainder, sigma, rule);
    conv = std::max(conv, rel(lhs, rep::dkernel(q, qbar2, lie::compose(g2, g1), rp)));
  }
  r.checks.push_back(make_check("convolution property, |x_i| <= 0.5", conv, tol("convolution", 1e-7)));
  r.notes.push_back("convolution: D(g1) * D(g2) = D(compose(g2, g1)) with D(g) = dkernel(., ., g)");

  // (eta_a + l_a) D(g) = 0 with D(g) = dkernel(q, qbar2, g^-1); l_a exact in q.
  double inter = 0.0;
  for (int s = 0; s < 20; ++s) {
    const GroupElementd g = rnd.group(1.0);
    const cdouble q = rnd.disk(1.0), qbar2 = rnd.disk(1.0);
    auto D = [&](const GroupElementd& k) { return rep::dkernel(q, qbar2, lie::inverse(k), rp); };
    const cdouble d = D(g), dq = rep::dkernel_dq(q, qbar2, lie::inverse(g), rp);
    const cdouble ell[4] = {I * (q * dq - j2 * q * q / (2.0 * hbar) * d + j1 / hbar * d),
                            -I * dq + I * (j2 / hbar) * q * d, dq, I * j2 / hbar * d};
    const double h = 1e-3;
    cdouble grad[4];
    for (int j = 0; j < 4; ++j) {
      auto at = [&](double t) {
        GroupElementd k = g;
        k[j] += t;
        return D(k);
      };
      grad[j] = (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12 * h);
    }
    const Field4 R = lie::right_fields(g);
    for (int a = 0; a < 4; ++a) {
      cdouble eta = 0.0;
      for (int k = 0; k < 4; ++k) eta += R(a, k) * grad[k];
      inter = std::max(inter, std::abs(eta + ell[a]) / std::max(std::abs(eta), std::abs(ell[a])));
    }
  }
  r.checks.push_back(make_check("intertwining (eta_a + l_a) D = 0", inter, tol("intertwining", 1e-6)));
  return r;
}

// ---------------------------------------------------------------- oscillator

SuiteReport oscillator_suite(const RunConfig& cfg, Sampler& rnd)
{
  SuiteReport r{"oscillator", {}, {}};
  auto tol = [&](const std::string& k, double d) { return cfg.tolerance("oscillator", k, d); };
  const qho::PhysParams& p = cfg.phys;
  const numerics::GaussHermiteRule rule = numerics::gauss_hermite(cfg.M);
  const double sx = p.m * p.omega / p.hbar;
  auto overlap = [&](const std::function<cdouble(double)>& f, const std::function<cdouble(double)>& g) {
    return numerics::integrate_line([&](double x) { return std::conj(f(x)) * g(x) * std::exp(sx * x * x); }, sx, rule);
  };

  double ortho = 0.0;
  for (int m = 0; m <= 10; ++m)
    for (int n = 0; n <= 10; ++n) {
      const cdouble v = overlap([&](double x) { return qho::psi_n(m, 0.3, x, p); },
                                [&](double x) { return qho::psi_n(n, 0.3, x, p); });
      ortho = std::max(ortho, std::abs(v - (m == n ? 1.0 : 0.0)));
    }
  r.checks.push_back(make_check("psi_n orthonormality, n <= 10", ortho, tol("orthonormality", 1e-10)));

  const cdouble z(1.0, 2.0);
  double drift = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double t = 2.0 * kPi / p.omega * k / 16.0;
    auto a = [&](double x) { return qho::coherent_alpha(t, x, z, p); };
    drift = std::max(drift, std::abs(overlap(a, a) - 1.0));
  }
  r.checks.push_back(make_check("coherent normalization drift over one period", drift, tol("coherent_drift", 1e-9)));

  double ground = 0.0;
  for (int j = 0; j < cfg.grid.x_count; ++j)
    ground = std::max(ground, std::abs(qho::coherent_alpha(0.7, cfg.grid.x(j), 0.0, p) - qho::psi_n(0, 0.7, cfg.grid.x(j), p)));
  r.checks.push_back(make_check("coherent state at z = 0 is psi_0", ground, tol("coherent_ground", 1e-14)));

  // [a, a^dagger] f = f on a Gaussian test field.
  const double h = 2e-3;
  const qho::Field gauss = [](double t, double x) { return std::exp(-(x - 0.3) * (x - 0.3) / 1.5 + I * 0.4 * x * t); };
  double ccr = 0.0;
  {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < cfg.grid.x_count; ++j) {
      const qho::GridField patch = qho::sample_patch(gauss, 0.5, cfg.grid.x(j), h, 9);
      const auto aad = qho::apply_operator(qho::Operator::a, qho::apply_operator(qho::Operator::adag, patch, p), p);
      const auto ada = qho::apply_operator(qho::Operator::adag, qho::apply_operator(qho::Operator::a, patch, p), p);
      num = std::max(num, std::abs((aad - ada).values(4, 4) - patch.values(4, 4)));
      den = std::max(den, std::abs(patch.values(4, 4)));
    }
    ccr = num / den;
  }
  r.checks.push_back(make_check("[a, a^dagger] = 1 (finite differences)", ccr, tol("ccr", 1e-6)));

  const double b = p.length_inv() / std::sqrt(2.0);
  auto apply_a = [&](const std::function<cdouble(double)>& f, double x) {
    return b * x * f(x) + fd_x(f, x, h) / (2.0 * b);
  };
  double ladder = 0.0;
  for (int n = 1; n <= 8; ++n) {
    auto pn = [&](double x) { return qho::psi_n(n, 0.0, x, p); };
    const cdouble v = overlap([&](double x) { return qho::psi_n(n - 1, 0.0, x, p); },
                              [&](double x) { return apply_a(pn, x); });
    ladder = std::max(ladder, std::abs(v - std::sqrt(double(n))) / std::sqrt(double(n)));
  }
  r.checks.push_back(make_check("a psi_n = sqrt(n) psi_(n-1), n <= 8", ladder, tol("ladder", 1e-6)));

  double eigen = 0.0;
  for (int n = 0; n <= 8; ++n) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < cfg.grid.x_count; ++j) {
      const qho::GridField patch = qho::sample_patch([&](double t, double x) { return qho::psi_n(n, t, x, p); }, 0.0,
                                                     cfg.grid.x(j), h, 5);
      const auto hp = qho::apply_operator(qho::Operator::H, patch, p);
      num = std::max(num, std::abs(hp.values(2, 2) - qho::energy(n, p) * patch.values(2, 2)));
      den = std::max(den, qho::energy(n, p) * std::abs(patch.values(2, 2)));
    }
    eigen = std::max(eigen, num / den);
  }
  r.checks.push_back(make_check("H psi_n = E_n psi_n, n <= 8", eigen, tol("energy_eigen", 1e-6)));

  double aeig = 0.0, means = 0.0;
  for (int k = 0; k < 4; ++k) {
    const cdouble zz = rnd.disk(2.0);
    const double t = rnd.uniform(0.0, 2.0 * kPi / p.omega);
    auto al = [&](double x) { return qho::coherent_alpha(t, x, zz, p); };
    const cdouble zt = qho::z_of_t(zz, t, p);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < cfg.grid.x_count; ++j) {
      const double x = cfg.grid.x(j);
      num = std::max(num, std::abs(apply_a(al, x) - zt * al(x)));
      den = std::max(den, std::abs(zt * al(x)) + std::abs(b * x * al(x)));
    }
    aeig = std::max(aeig, num / den);
    const auto [xm, pm] = qho::mean_coherent(zz, t, p);
    const cdouble xq = overlap(al, [&](double x) { return x * al(x); });
    const cdouble pq = overlap(al, [&](double x) { return -I * p.hbar * fd_x(al, x, h); });
    const double scale = std::sqrt(p.hbar / (p.m * p.omega)) + std::abs(xm);
    const double pscale = std::sqrt(p.hbar * p.m * p.omega) + std::abs(pm);
    means = std::max({means, std::abs(xq - xm) / scale, std::abs(pq - pm) / pscale});
  }
  r.checks.push_back(make_check("coherent a-eigenrelation (finite differences)", aeig, tol("coherent_eigen", 1e-6)));
  r.checks.push_back(make_check("coherent means vs quadrature", means, tol("coherent_means", 1e-6)));

  const cdouble zf(1.5, 1.0);
  const Eigen::VectorXcd c = qho::fock_expansion_coherent(zf, 0.4, 40, p);
  r.checks.push_back(make_check("coherent Fock weights sum to 1 at n_max = 40", std::abs(c.squaredNorm() - 1.0),
                                tol("fock_sum", 1e-12)));
  double partial = 0.0, pscale = 0.0;
  for (int j = 0; j < cfg.grid.x_count; ++j) {
    const double x = cfg.grid.x(j);
    cdouble s = 0.0;
    for (int n = 0; n <= 40; ++n) s += c(n) * qho::psi_n(n, 0.0, x, p);
    const cdouble exact = qho::coherent_alpha(0.4, x, zf, p);
    partial = std::max(partial, std::abs(s - exact));
    pscale = std::max(pscale, std::abs(exact));
  }
  r.checks.push_back(make_check("coherent Fock partial sums vs closed form", partial / pscale, tol("fock_partial", 1e-8)));

  const qho::SymmetryReport sym = qho::symmetry_suite(p, cfg.grid, tol("symmetry", 1e-5));
  for (const auto& ch : sym.checks) r.checks.push_back(ch);
  return r;
}

// ---------------------------------------------------------------- nim

SuiteReport nim_suite(const RunConfig& cfg, Sampler& rnd)
{
  require_window(cfg, "nim");
  SuiteReport r{"nim", {}, {}};
  auto tol = [&](const std::string& k, double d) { return cfg.tolerance("nim", k, d); };
  const qho::PhysParams& p = cfg.phys;
  const numerics::GaussHermiteRule rule = numerics::gauss_hermite(cfg.M);
  const qho::GridSpec& grid = cfg.grid;

  const int n_spec = std::min(32, cfg.N);
  const auto spectrum = nim::stationary_spectrum(std::min(8, n_spec), p, rule, cfg.N);
  {
    const rep::RepParams rp = make_rep(oscillator_orbit(p), p.hbar, cfg.N);
    const rep::LambdaMatrices L = rep::lambda_matrices(rp);
    double gap = 0.0;
    for (int n = 0; n <= n_spec; ++n) gap = std::max(gap, std::abs((-I * L[0](n, n)).real() - (n + 0.5)));
    r.checks.push_back(make_check("spectrum E_n / (hbar omega) = n + 1/2, n <= " + std::to_string(n_spec), gap,
                                  tol("spectrum", 0.0)));
  }

  const nim::OscillatorReduction red = nim::oscillator_reduction(p, cfg.N);
  r.checks.push_back(make_check("reduced system vanishes at the oscillator orbit", red.defect, tol("reduction", 1e-12)));
  for (const auto& n : red.notes) r.notes.push_back(n);
  const lie::OrbitLabel perturbed{red.group_orbit.j1 + 0.1 * p.hbar, red.group_orbit.j2};
  r.checks.push_back(make_check("negative control: perturbed orbit label", nim::reduced_system_defect(perturbed, p, cfg.N),
                                1e-2, true));

  const std::vector<cdouble> labels = {0.0, {0.7, -0.4}, {0.0, 2.0}, {-1.2, 1.6}, {2.0, 0.0}};
  double paths = 0.0, spread = 0.0, resid = 0.0, aeig = 0.0;
  const double h = 2e-3;
  const double b = p.length_inv() / std::sqrt(2.0);
  for (const cdouble u : labels) {
    const nim::HStateLabel s{u, 0.5};
    const cdouble z = nim::coherent_label(u, p);
    const cdouble r0 = nim::hstate_kernel(grid.t(0), grid.x(0), s, p) / qho::coherent_alpha(grid.t(0), grid.x(0), z, p);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < grid.t_count; ++i)
      for (int j = 0; j < grid.x_count; ++j) {
        const double t = grid.t(i), x = grid.x(j);
        const cdouble k1 = nim::hstate_kernel(t, x, s, p, nim::KernelPath::correspondence);
        const cdouble k2 = nim::hstate_kernel(t, x, s, p, nim::KernelPath::cocycle);
        paths = std::max(paths, rel(k1, k2));
        spread = std::max(spread, std::abs(k1 / qho::coherent_alpha(t, x, z, p) - r0) / std::abs(r0));
        auto f = [&](double y) { return nim::hstate_kernel(t, y, s, p); };
        const cdouble lambda = z * std::exp(-I * p.omega * t);
        const cdouble ak = b * x * k1 + fd_x(f, x, h) / (2.0 * b);
        num = std::max(num, std::abs(ak - lambda * k1));
        den = std::max(den, std::abs(lambda * k1) + std::abs(b * x * k1));
      }
    aeig = std::max(aeig, num / den);
    resid = std::max(resid, nim::schrodinger_residual_patches(
                                [&](double t, double x) { return nim::hstate_kernel(t, x, s, p); }, grid, p, h));
  }
  r.checks.push_back(make_check("kernel paths agree pointwise", paths, tol("paths", 1e-9)));
  r.checks.push_back(make_check("kernel / coherent state constant over the grid", spread, tol("ratio_spread", 1e-10)));
  r.checks.push_back(make_check("Schrodinger residual of the H-state kernel, |u| <= 2", resid, tol("kernel_residual", 1e-6)));
  r.checks.push_back(make_check("H-state a-eigenrelation", aeig, tol("kernel_eigen", 1e-6)));

  const double sx = p.m * p.omega / p.hbar;
  auto line = [&](const std::function<cdouble(double)>& f) {
    return numerics::integrate_line([&](double x) { return f(x) * std::exp(sx * x * x); }, sx, rule);
  };

  double synth = 0.0, mag = 0.0;
  for (const auto& e : spectrum) {
    Eigen::VectorXcd chi = Eigen::VectorXcd::Zero(e.n + 1);
    chi(e.n) = 1.0;
    std::vector<cdouble> vals(rule.size());
    const double scale = 1.0 / std::sqrt(sx);
    cdouble ov = 0.0;
    double nn = 0.0;
    for (int k = 0; k < rule.size(); ++k) {
      const double x = rule.nodes(k) * scale;
      const cdouble v = nim::synthesize(chi, 0.0, x, p, rule).value;
      const double w = rule.weights(k) * scale * std::exp(sx * x * x);
      ov += w * std::conj(qho::psi_n(e.n, 0.0, x, p)) * v;
      nn += w * std::norm(v);
    }
    synth = std::max(synth, 1.0 - std::norm(ov) / nn);
    mag = std::max(mag, std::abs(std::abs(e.coefficient) - nim::normalization_magnitude(e.n, p)) /
                            nim::normalization_magnitude(e.n, p));
  }
  r.checks.push_back(make_check("synthesized chi_n overlaps psi_n, n <= 8", synth, tol("synthesis_overlap", 1e-6)));
  r.checks.push_back(make_check("|C_n| matches sqrt(hbar m / 2^n n!) (m omega hbar)^(n/2)", mag, tol("normalization", 1e-8)));

  double norm_id = 0.0;
  for (int s = 0; s < 5; ++s) {
    Eigen::VectorXcd phi(6);
    for (int n = 0; n < 6; ++n) phi(n) = cdouble(rnd.uniform(-1, 1), rnd.uniform(-1, 1));
    const double t = rnd.uniform(0.0, 2.0 * kPi / p.omega);
    const cdouble psi2 = line([&](double x) { return cdouble(std::norm(nim::synthesize(phi, t, x, p, rule).value)); });
    const double q2 = nim::u_space_norm_squared(phi, p, rule);
    norm_id = std::max(norm_id, rel(psi2, p.omega / (2.0 * kPi) * q2));
  }
  r.checks.push_back(make_check("norm identity ||psi||^2 = (omega/2pi) ||phi||_Q^2", norm_id, tol("norm_identity", 1e-6)));

  double fock = 0.0;
  for (const cdouble u : labels) {
    const nim::HStateLabel s{u, 0.5};
    const double t = rnd.uniform(0.0, 2.0 * kPi / p.omega);
    const Eigen::VectorXcd c = nim::fock_coeffs_hstate(s, t, 10, p);
    Eigen::VectorXcd q(11);
    for (int n = 0; n <= 10; ++n) q(n) = nim::hstate_overlap(n, s, t, p, rule);
    fock = std::max(fock, (q - c).cwiseAbs().maxCoeff() / c.cwiseAbs().maxCoeff());
  }
  r.checks.push_back(make_check("H-state Fock overlaps match the composed closed form, n <= 10", fock, tol("fock", 1e-7)));

  double norm_cf = 0.0, mx = 0.0, mp = 0.0, tab_x = 0.0, tab_p = 0.0;
  for (const cdouble u : {cdouble(0.7, -0.4), cdouble(-1.2, 1.6)}) {
    const nim::HStateMeans m = nim::means_hstate({u, 0.5}, 0.9, p, rule);
    norm_cf = std::max(norm_cf, rel(m.norm, nim::hstate_norm_closed_form(u, p)));
    const double sxm = std::abs(m.norm) * std::sqrt(p.hbar / (p.m * p.omega));
    const double spm = std::abs(m.norm) * std::sqrt(p.hbar * p.m * p.omega);
    mx = std::max(mx, std::abs(m.x - m.x_factorized) / (sxm + std::abs(m.x_factorized)));
    mp = std::max(mp, std::abs(m.p - m.p_factorized) / (spm + std::abs(m.p_factorized)));
    tab_x = std::max(tab_x, rel(m.x, m.x_tabulated_modulus));
    tab_p = std::max(tab_p, rel(m.p, m.p_tabulated_modulus));
  }
  r.checks.push_back(make_check("H-state norm (omega/2pi) delta(u, conj u)", norm_cf, tol("hstate_norm", 1e-8)));
  r.checks.push_back(make_check("H-state <x> = |factor|^2 coherent <x>", mx, tol("mean_x", 1e-6)));
  r.checks.push_back(make_check("H-state <p> = |factor|^2 coherent <p>", mp, tol("mean_p", 1e-6)));
  r.notes.push_back("tabulated <x> (modulus reading) relative gap " + fmt("%.3e", tab_x));
  r.notes.push_back("tabulated <p> (modulus reading) relative gap " + fmt("%.3e", tab_p) +
                    "; the printed prefactor lacks sqrt(kappa/2)");

  const qho::Field wrong = [&](double t, double x) {
    return std::exp(-I * p.omega * t) * qho::psi_n(0, 0.0, x, p);
  };
  r.checks.push_back(make_check("negative control: non-solution field", nim::schrodinger_residual_patches(wrong, grid, p, h),
                                1e-2, true));
  return r;
}

using SuiteFn = SuiteReport (*)(const RunConfig&, Sampler&);

const std::vector<std::pair<std::string, SuiteFn>>& registry()
{
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"algebra", algebra_suite}, {"group", group_suite},           {"lambda", lambda_suite},
      {"kernels", kernels_suite}, {"oscillator", oscillator_suite}, {"nim", nim_suite}};
  return r;
}

}  // namespace

void RunConfig::validate() const
{
  try {
    phys.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (N < 1) throw ConfigError("truncation N must be positive");
  if (M < 8) throw ConfigError("quadrature points M must be at least 8");
  if (grid.t_count < 8 || grid.x_count < 8) throw ConfigError("grid counts must be at least 8");
  if (!(grid.t_max > grid.t_min) || !(grid.x_max > grid.x_min)) throw ConfigError("grid ranges must be nonempty");
  for (const auto& [key, v] : tolerances)
    if (!(v > 0.0)) throw ConfigError("tolerance '" + key + "' must be positive");
}

double RunConfig::tolerance(const std::string& suite, const std::string& key, double fallback) const
{
  const auto it = tolerances.find(suite + "." + key);
  return it == tolerances.end() ? fallback : it->second;
}

RunConfig parse_config(const std::string& text)
{
  RunConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (j.contains("phys")) {
      const json& p = j.at("phys");
      c.phys.m = p.value("m", c.phys.m);
      c.phys.omega = p.value("omega", c.phys.omega);
      c.phys.hbar = p.value("hbar", c.phys.hbar);
    }
    c.N = j.value("N", c.N);
    c.M = j.value("M", c.M);
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      c.grid.t_min = g.value("t_min", c.grid.t_min);
      c.grid.t_max = g.value("t_max", c.grid.t_max);
      c.grid.t_count = g.value("t_count", c.grid.t_count);
      c.grid.x_min = g.value("x_min", c.grid.x_min);
      c.grid.x_max = g.value("x_max", c.grid.x_max);
      c.grid.x_count = g.value("x_count", c.grid.x_count);
    }
    if (j.contains("tolerances")) c.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
    c.output_dir = j.value("output_dir", c.output_dir);
    c.seed = j.value("seed", c.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_json(const RunConfig& c)
{
  json j;
  j["phys"] = {{"m", c.phys.m}, {"omega", c.phys.omega}, {"hbar", c.phys.hbar}};
  j["N"] = c.N;
  j["M"] = c.M;
  j["grid"] = {{"t_min", c.grid.t_min}, {"t_max", c.grid.t_max}, {"t_count", c.grid.t_count},
               {"x_min", c.grid.x_min}, {"x_max", c.grid.x_max}, {"x_count", c.grid.x_count}};
  j["tolerances"] = c.tolerances;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  return j.dump(2);
}

bool SuiteReport::pass() const
{
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& suite_names()
{
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const RunConfig& config)
{
  for (const auto& [n, fn] : registry())
    if (n == name) {
      config.validate();
      Sampler rnd{std::mt19937_64(stream_seed(config.seed, name))};
      return fn(config, rnd);
    }
  std::string valid;
  for (const auto& n : suite_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw ConfigError("unknown suite '" + name + "' (valid: " + valid + ")");
}

std::vector<SuiteReport> run_suites(std::vector<std::string> names, const RunConfig& config)
{
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const auto& n : names)
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end()) run_suite(n, config);
  config.validate();
  std::vector<std::future<SuiteReport>> jobs;
  for (const auto& n : names) jobs.push_back(std::async(std::launch::async, run_suite, n, std::cref(config)));
  std::vector<SuiteReport> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string report_json(const std::vector<SuiteReport>& reports, const RunConfig& config)
{
  json j;
  bool all = true;
  std::size_t count = 0;
  j["suites"] = json::array();
  for (const auto& r : reports) {
    json s;
    s["suite"] = r.suite;
    s["pass"] = r.pass();
    s["checks"] = json::array();
    for (const auto& c : r.checks)
      s["checks"].push_back({{"name", c.name},
                             {"measured", c.measured},
                             {"tolerance", c.tolerance},
                             {"criterion", c.expect_above ? "above" : "at_most"},
                             {"pass", c.pass}});
    s["notes"] = r.notes;
    all = all && r.pass();
    count += r.checks.size();
    j["suites"].push_back(s);
  }
  j["check_count"] = count;
  j["pass"] = all;
  j["config"] = json::parse(config_json(config));
  return j.dump(2);
}

}  // namespace osc::verify
