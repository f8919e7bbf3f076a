#pragma once

#include <complex>
#include <functional>
#include <stdexcept>

#include <Eigen/Core>

namespace osc {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

namespace numerics {

/// Physicists' Hermite polynomial H_n(z) from H_{n+1} = 2z H_n - 2n H_{n-1}.
template <typename Scalar>
Scalar hermite_poly(int n, const Scalar& z)
{
  if (n < 0) throw std::invalid_argument("hermite_poly: negative degree");
  Scalar h_prev(1);
  if (n == 0) return h_prev;
  Scalar h = Scalar(2) * z;
  for (int k = 1; k < n; ++k) {
    Scalar h_next = Scalar(2) * z * h - Scalar(2 * k) * h_prev;
    h_prev = h;
    h = h_next;
  }
  return h;
}

/// All of H_0(z) .. H_nmax(z).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> hermite_polys(int nmax, const Scalar& z)
{
  if (nmax < 0) throw std::invalid_argument("hermite_polys: negative degree");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> h(nmax + 1);
  h(0) = Scalar(1);
  if (nmax >= 1) h(1) = Scalar(2) * z;
  for (int k = 1; k < nmax; ++k)
    h(k + 1) = Scalar(2) * z * h(k) - Scalar(2 * k) * h(k - 1);
  return h;
}

/**
 * M-point Gauss-Hermite rule for the weight exp(-s^2) on the real line.
 * Nodes are stored in ascending order; all sums over the rule iterate in
 * that order so results are reproducible bit-for-bit.
 */
struct GaussHermiteRule
{
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(nodes.size()); }
  /// Highest polynomial degree integrated exactly.
  int exactness_degree() const { return 2 * size() - 1; }
};

GaussHermiteRule gauss_hermite(int m);

/// \int f(x) exp(-sigma x^2) dx, with f evaluated at the scaled nodes.
cdouble integrate_line(const std::function<cdouble(double)>& f, double sigma,
                       const GaussHermiteRule& rule);

/**
 * \int_C f(q) exp(-sigma |q|^2) dA(q) by the product rule on Re q and Im q
 * after q = (s + i v) / sqrt(sigma). The caller passes the remainder f, i.e.
 * the integrand with the Gaussian already divided out.
 */
cdouble integrate_plane(const std::function<cdouble(cdouble)>& f, double sigma,
                        const GaussHermiteRule& rule);
cdouble integrate_plane(const std::function<cdouble(cdouble)>& f, double sigma, int m);

struct Stencil
{
  int order = 4;  // 2 or 4
  double h = 1e-2;

  void validate() const
  {
    if (order != 2 && order != 4) throw std::invalid_argument("Stencil: order must be 2 or 4");
    if (!(h > 0.0)) throw std::invalid_argument("Stencil: spacing must be positive");
  }
};

/// Central first derivative of f at x. With richardson, combines h and h/2
/// to cancel the leading error term.
cdouble finite_diff(const std::function<cdouble(double)>& f, double x, const Stencil& stencil,
                    bool richardson = false);

/// Central second derivative of f at x.
cdouble finite_diff2(const std::function<cdouble(double)>& f, double x, const Stencil& stencil);

/// exp(A). Strictly triangular input is summed as a terminating series;
/// everything else goes through scaling and squaring with a Taylor core.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a);

bool is_strictly_triangular(const Eigen::MatrixXcd& a);

}  // namespace numerics
}  // namespace osc
