#include "osc/numerics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace osc::numerics {

namespace {

// Orthonormal Hermite functions p_k w.r.t. exp(-s^2): returns p_m(s) and
// p_{m-1}(s) from the stable three-term recurrence.
void orthonormal_hermite(int m, double s, double& pm, double& pm1)
{
  double p_prev = 0.0;
  double p = std::pow(kPi, -0.25);
  for (int k = 0; k < m; ++k) {
    const double p_next = std::sqrt(2.0 / (k + 1)) * s * p - std::sqrt(double(k) / (k + 1)) * p_prev;
    p_prev = p;
    p = p_next;
  }
  pm = p;
  pm1 = p_prev;
}

}  // namespace

GaussHermiteRule gauss_hermite(int m)
{
  if (m < 1) throw std::invalid_argument("gauss_hermite: need at least one node");

  // Golub-Welsch for starting values.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    jacobi(k, k - 1) = std::sqrt(k / 2.0);
    jacobi(k - 1, k) = jacobi(k, k - 1);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi, Eigen::EigenvaluesOnly);
  Eigen::VectorXd nodes = eig.eigenvalues();

  GaussHermiteRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double s = nodes(i);
    // Newton polish on p_m; p_m' = sqrt(2m) p_{m-1}.
    for (int it = 0; it < 8; ++it) {
      double pm, pm1;
      orthonormal_hermite(m, s, pm, pm1);
      const double step = pm / (std::sqrt(2.0 * m) * pm1);
      s -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(s))) break;
    }
    // w_i = 1 / sum_k p_k(s_i)^2 keeps full relative accuracy in the tails.
    double p_prev = 0.0, p = std::pow(kPi, -0.25), sum = p * p;
    for (int k = 0; k + 1 < m; ++k) {
      const double p_next = std::sqrt(2.0 / (k + 1)) * s * p - std::sqrt(double(k) / (k + 1)) * p_prev;
      p_prev = p;
      p = p_next;
      sum += p * p;
    }
    rule.nodes(i) = s;
    rule.weights(i) = 1.0 / sum;
  }
  if (m % 2 == 1) rule.nodes(m / 2) = 0.0;
  // Enforce exact symmetry about the origin.
  for (int i = 0; i < m / 2; ++i) {
    const double s = 0.5 * (rule.nodes(m - 1 - i) - rule.nodes(i));
    const double w = 0.5 * (rule.weights(m - 1 - i) + rule.weights(i));
    rule.nodes(i) = -s;
    rule.nodes(m - 1 - i) = s;
    rule.weights(i) = rule.weights(m - 1 - i) = w;
  }
  return rule;
}

cdouble integrate_line(const std::function<cdouble(double)>& f, double sigma,
                       const GaussHermiteRule& rule)
{
  if (!(sigma > 0.0)) throw std::invalid_argument("integrate_line: sigma must be positive");
  const double scale = 1.0 / std::sqrt(sigma);
  cdouble sum = 0.0;
  for (int i = 0; i < rule.size(); ++i) sum += rule.weights(i) * f(rule.nodes(i) * scale);
  return sum * scale;
}

cdouble integrate_plane(const std::function<cdouble(cdouble)>& f, double sigma,
                        const GaussHermiteRule& rule)
{
  if (!(sigma > 0.0)) throw std::invalid_argument("integrate_plane: sigma must be positive");
  const double scale = 1.0 / std::sqrt(sigma);
  cdouble sum = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    cdouble row = 0.0;
    for (int j = 0; j < rule.size(); ++j)
      row += rule.weights(j) * f(cdouble(rule.nodes(i), rule.nodes(j)) * scale);
    sum += rule.weights(i) * row;
  }
  return sum / sigma;
}

cdouble integrate_plane(const std::function<cdouble(cdouble)>& f, double sigma, int m)
{
  return integrate_plane(f, sigma, gauss_hermite(m));
}

cdouble finite_diff(const std::function<cdouble(double)>& f, double x, const Stencil& stencil,
                    bool richardson)
{
  stencil.validate();
  auto central = [&](double h) -> cdouble {
    if (stencil.order == 2) return (f(x + h) - f(x - h)) / (2.0 * h);
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
  };
  const cdouble coarse = central(stencil.h);
  if (!richardson) return coarse;
  const cdouble fine = central(0.5 * stencil.h);
  const double factor = std::pow(2.0, stencil.order);
  return (factor * fine - coarse) / (factor - 1.0);
}

cdouble finite_diff2(const std::function<cdouble(double)>& f, double x, const Stencil& stencil)
{
  stencil.validate();
  const double h = stencil.h;
  if (stencil.order == 2) return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
  return (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2 * h)) /
         (12.0 * h * h);
}

bool is_strictly_triangular(const Eigen::MatrixXcd& a)
{
  const Eigen::Index n = a.rows();
  bool upper = true, lower = true;
  for (Eigen::Index i = 0; i < n && (upper || lower); ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (a(i, j) == cdouble(0)) continue;
      if (i >= j) upper = false;
      if (i <= j) lower = false;
    }
  return upper || lower;
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a)
{
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exp: matrix must be square");
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  if (n == 0) return a;

  if (is_strictly_triangular(a)) {
    // Nilpotent: A^n = 0, the series terminates.
    Eigen::MatrixXcd result = id;
    Eigen::MatrixXcd term = id;
    for (Eigen::Index k = 1; k < n; ++k) {
      term = (term * a) / double(k);
      if (term.isZero(0.0)) break;
      result += term;
    }
    return result;
  }

  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  if (!std::isfinite(norm)) throw std::invalid_argument("matrix_exp: non-finite entries");
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXcd scaled = a / std::ldexp(1.0, squarings);

  Eigen::MatrixXcd result = id;
  Eigen::MatrixXcd term = id;
  for (int k = 1; k <= 30; ++k) {
    term = (term * scaled) / double(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace osc::numerics
