#include "osc/lambda_rep.hpp"

#include <cmath>
#include <stdexcept>

namespace osc::rep {

namespace {
const cdouble I(0.0, 1.0);
}

void RepParams::validate() const
{
  if (!(orbit.j2 < 0.0)) throw std::invalid_argument("RepParams: j2 must be negative");
  if (!(hbar > 0.0)) throw std::invalid_argument("RepParams: hbar must be positive");
  if (N < 4) throw std::invalid_argument("RepParams: truncation N must be at least 4");
  if (!std::isfinite(orbit.j1)) throw std::invalid_argument("RepParams: j1 must be finite");
}

double RepParams::sigma() const { return -orbit.j2 / (2.0 * hbar); }

LambdaMatrices lambda_matrices(const RepParams& rep)
{
  rep.validate();
  const int d = rep.dim();
  const double j1 = rep.orbit.j1, j2 = rep.orbit.j2, hbar = rep.hbar;
  const double raise = j2 / (2.0 * hbar);

  LambdaMatrices m;
  for (auto& l : m.L) l = Eigen::MatrixXcd::Zero(d, d);
  // Column n holds the image of phi_n.
  for (int n = 0; n < d; ++n) {
    m.L[0](n, n) = I * (n + j1 / hbar);
    if (n > 0) {
      m.L[1](n - 1, n) = -I * double(n);
      m.L[2](n - 1, n) = double(n);
    }
    if (n + 1 < d) {
      m.L[1](n + 1, n) = I * raise;
      m.L[2](n + 1, n) = raise;
    }
    m.L[3](n, n) = I * j2 / hbar;
  }
  return m;
}

Eigen::MatrixXcd casimir_matrix(const RepParams& rep)
{
  const LambdaMatrices m = lambda_matrices(rep);
  const cdouble k = -I * rep.hbar;
  const Eigen::MatrixXcd f1 = k * m[0], f2 = k * m[1], f3 = k * m[2], f4 = k * m[3];
  return 2.0 * f1 * f4 + f2 * f2 + f3 * f3;
}

Eigen::MatrixXcd casimir2_matrix(const RepParams& rep)
{
  return -I * rep.hbar * lambda_matrices(rep)[3];
}

cdouble basis_eval(int n, cdouble q, const RepParams& rep)
{
  if (n < 0 || n > rep.N) throw std::out_of_range("basis_eval: index outside 0..N");
  return std::pow(q, n) * std::exp(rep.orbit.j2 * q * q / (4.0 * rep.hbar));
}

FockCoeffs::FockCoeffs(Eigen::VectorXcd coeffs, const RepParams& params)
    : c(std::move(coeffs)), rep(params)
{
  if (c.size() > rep.dim()) throw std::invalid_argument("FockCoeffs: degree exceeds truncation N");
  if (c.size() < rep.dim()) {
    const Eigen::Index old = c.size();
    c.conservativeResize(rep.dim());
    c.tail(rep.dim() - old).setZero();
  }
  if (!c.allFinite()) throw std::invalid_argument("FockCoeffs: non-finite coefficient");
}

FockCoeffs FockCoeffs::basis_vector(int n, const RepParams& params)
{
  if (n < 0 || n > params.N) throw std::out_of_range("FockCoeffs: index outside 0..N");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(params.dim());
  c(n) = 1.0;
  return FockCoeffs(c, params);
}

cdouble FockCoeffs::polynomial(cdouble q) const
{
  cdouble acc = 0.0;
  for (Eigen::Index n = c.size() - 1; n >= 0; --n) acc = acc * q + c(n);
  return acc;
}

cdouble FockCoeffs::operator()(cdouble q) const
{
  return polynomial(q) * std::exp(rep.orbit.j2 * q * q / (4.0 * rep.hbar));
}

InnerProduct inner_product(const FockCoeffs& a, const FockCoeffs& b,
                           const numerics::GaussHermiteRule& rule)
{
  if (a.rep.N != b.rep.N || a.rep.orbit.j1 != b.rep.orbit.j1 || a.rep.orbit.j2 != b.rep.orbit.j2 ||
      a.rep.hbar != b.rep.hbar)
    throw std::invalid_argument("inner_product: operands belong to different representations");
  a.rep.validate();
  InnerProduct r;
  r.value = numerics::integrate_plane(
      [&](cdouble q) { return std::conj(a.polynomial(q)) * b.polynomial(q); }, a.rep.sigma(), rule);
  r.coarse = rule.size() < a.rep.N + 2;
  return r;
}

Eigen::MatrixXcd gram_matrix(const RepParams& rep, const numerics::GaussHermiteRule& rule)
{
  rep.validate();
  const int d = rep.dim();
  const double scale = 1.0 / std::sqrt(rep.sigma());
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(d, d);
  Eigen::VectorXcd powers(d);
  for (int i = 0; i < rule.size(); ++i)
    for (int j = 0; j < rule.size(); ++j) {
      const cdouble q = cdouble(rule.nodes(i), rule.nodes(j)) * scale;
      powers(0) = 1.0;
      for (int n = 1; n < d; ++n) powers(n) = powers(n - 1) * q;
      g += (rule.weights(i) * rule.weights(j)) * (powers.conjugate() * powers.transpose());
    }
  return g / rep.sigma();
}

double basis_norm_squared(int n, const RepParams& rep)
{
  return kPi * std::exp(std::lgamma(n + 1.0) + (n + 1) * std::log(2.0 * rep.hbar / -rep.orbit.j2));
}

cdouble reproducing_kernel(cdouble q, cdouble qbar2, const RepParams& rep)
{
  const double j2 = rep.orbit.j2, hbar = rep.hbar;
  const cdouble d = q - qbar2;
  return -j2 / (2.0 * kPi * hbar) * std::exp(j2 / (4.0 * hbar) * d * d);
}

cdouble reproducing_kernel_series(cdouble q, cdouble qbar2, const RepParams& rep, int terms)
{
  const double j2 = rep.orbit.j2, hbar = rep.hbar;
  const double a = -j2 / (2.0 * hbar);
  // phi_n(q) conj(phi_n(q')) with conj(q') = qbar2.
  const cdouble gauss = std::exp(j2 / (4.0 * hbar) * (q * q + qbar2 * qbar2));
  cdouble term = 1.0, sum = 0.0;
  for (int n = 0; n < terms; ++n) {
    sum += term;
    term *= a * q * qbar2 / double(n + 1);
  }
  return -j2 / (2.0 * kPi * hbar) * gauss * sum;
}

cdouble reproduce(const FockCoeffs& psi, cdouble q, const numerics::GaussHermiteRule& rule)
{
  const RepParams& rep = psi.rep;
  rep.validate();
  const double j2 = rep.orbit.j2, hbar = rep.hbar;
  const cdouble pref = -j2 / (2.0 * kPi * hbar);
  // All quadratic terms in q' cancel against the weight and the Gaussian.
  auto remainder = [&](cdouble qp) {
    return psi.polynomial(qp) * pref * std::exp(j2 / (4.0 * hbar) * (q * q - 2.0 * q * std::conj(qp)));
  };
  return numerics::integrate_plane(remainder, rep.sigma(), rule);
}

cdouble point_action(cdouble q, const GroupElementd& g)
{
  return q * std::exp(-I * g[0]) + I * g[1] - g[2];
}

cdouble log_cocycle_U(cdouble q, const GroupElementd& g, const RepParams& rep)
{
  const double j1 = rep.orbit.j1, j2 = rep.orbit.j2, hbar = rep.hbar;
  const double x1 = g[0], x2 = g[1], x4 = g[3];
  const cdouble rot = std::exp(-I * x1);
  return -I * (j1 / hbar) * x1 - I * (j2 / hbar) * x4 +
         j2 / (4.0 * hbar) * ((1.0 - rot * rot) * q * q + 2.0 * (x2 - 2.0 * I * q * rot) * x2);
}

cdouble cocycle_U(cdouble q, const GroupElementd& g, const RepParams& rep)
{
  return std::exp(log_cocycle_U(q, g, rep));
}

cdouble log_dkernel(cdouble q, cdouble qbar2, const GroupElementd& g, const RepParams& rep)
{
  const double j2 = rep.orbit.j2, hbar = rep.hbar;
  const cdouble d = point_action(q, g) - qbar2;
  return std::log(cdouble(-j2 / (2.0 * kPi * hbar))) + log_cocycle_U(q, g, rep) +
         j2 / (4.0 * hbar) * d * d;
}

cdouble dkernel(cdouble q, cdouble qbar2, const GroupElementd& g, const RepParams& rep)
{
  return cocycle_U(q, g, rep) * reproducing_kernel(point_action(q, g), qbar2, rep);
}

cdouble dkernel_dq(cdouble q, cdouble qbar2, const GroupElementd& g, const RepParams& rep)
{
  const double j2 = rep.orbit.j2, hbar = rep.hbar;
  const double x1 = g[0], x2 = g[1];
  const cdouble rot = std::exp(-I * x1);
  const cdouble dlog_u = j2 / (4.0 * hbar) * (2.0 * (1.0 - rot * rot) * q - 4.0 * I * rot * x2);
  const cdouble dlog_delta = j2 / (2.0 * hbar) * (point_action(q, g) - qbar2) * rot;
  return (dlog_u + dlog_delta) * dkernel(q, qbar2, g, rep);
}

Eigen::MatrixXcd rep_matrix(const GroupElementd& g, const RepParams& rep)
{
  const LambdaMatrices m = lambda_matrices(rep);
  const int d = rep.dim();
  // L1 and L4 are diagonal.
  Eigen::VectorXcd phase1(d), phase4(d);
  for (int n = 0; n < d; ++n) {
    phase1(n) = std::exp(g[0] * m[0](n, n));
    phase4(n) = std::exp(g[3] * m[3](n, n));
  }
  Eigen::MatrixXcd r = phase4.asDiagonal() * numerics::matrix_exp(g[2] * m[2]);
  r = r * numerics::matrix_exp(g[1] * m[1]);
  return r * phase1.asDiagonal();
}

}  // namespace osc::rep
