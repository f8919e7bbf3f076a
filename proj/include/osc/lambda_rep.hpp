#pragma once

#include <array>

#include <Eigen/Core>

#include "osc/lie_osc.hpp"
#include "osc/numerics.hpp"

namespace osc::rep {

using lie::GroupElementd;
using lie::OrbitLabel;

/**
 * Parameters of the truncated lambda-representation: orbit label (j1, j2),
 * Planck constant and the largest basis index N. The basis of F^lambda is
 *
 *   phi_n(q) = q^n exp(j2 q^2 / (4 hbar)),  n = 0..N.
 */
struct RepParams
{
  OrbitLabel orbit;
  double hbar = 1.0;
  int N = 40;

  /// Throws std::invalid_argument unless j2 < 0, hbar > 0 and N >= 4.
  void validate() const;
  int dim() const { return N + 1; }
  /// sigma = |j2| / (2 hbar): total Gaussian exp(-sigma |q|^2) of the inner product.
  double sigma() const;
};

/// Largest basis index at which an identity built from k band operators is
/// unaffected by truncation.
inline int protected_limit(const RepParams& rep, int k) { return rep.N - k; }

/// Matrices of l_1..l_4 on coefficient vectors over phi_0..phi_N.
struct LambdaMatrices
{
  std::array<Eigen::MatrixXcd, 4> L;

  const Eigen::MatrixXcd& operator[](int a) const { return L[a]; }
};

LambdaMatrices lambda_matrices(const RepParams& rep);

/// 2(-i hbar L1)(-i hbar L4) + (-i hbar L2)^2 + (-i hbar L3)^2.
Eigen::MatrixXcd casimir_matrix(const RepParams& rep);

/// -i hbar L4, equal to j2 times the identity.
Eigen::MatrixXcd casimir2_matrix(const RepParams& rep);

cdouble basis_eval(int n, cdouble q, const RepParams& rep);

/// Element of the truncated F^lambda as coefficients over phi_n.
struct FockCoeffs
{
  Eigen::VectorXcd c;
  RepParams rep;

  FockCoeffs(Eigen::VectorXcd coeffs, const RepParams& params);
  static FockCoeffs basis_vector(int n, const RepParams& params);

  cdouble operator()(cdouble q) const;
  /// Polynomial part sum_n c_n q^n.
  cdouble polynomial(cdouble q) const;
};

struct InnerProduct
{
  cdouble value;
  /// Set when the rule cannot integrate the polynomial part exactly.
  bool coarse = false;
};

/**
 * (a, b) = \int conj(a(q)) b(q) exp(-(j2/4hbar)(q - conj q)^2) dA(q).
 * The Gaussian factors combine into exp(-sigma |q|^2); the polynomial part is
 * integrated by the product Gauss-Hermite rule.
 */
InnerProduct inner_product(const FockCoeffs& a, const FockCoeffs& b,
                           const numerics::GaussHermiteRule& rule);

/// Gram matrix of phi_0..phi_N under the quadrature rule.
Eigen::MatrixXcd gram_matrix(const RepParams& rep, const numerics::GaussHermiteRule& rule);

/// pi n! (2 hbar / |j2|)^(n+1).
double basis_norm_squared(int n, const RepParams& rep);

/// delta_{j2}(q, qbar2) = -(j2 / 2 pi hbar) exp[(j2/4hbar)(q - qbar2)^2].
cdouble reproducing_kernel(cdouble q, cdouble qbar2, const RepParams& rep);

/// Truncated basis series of the reproducing kernel with `terms` terms.
cdouble reproducing_kernel_series(cdouble q, cdouble qbar2, const RepParams& rep, int terms);

/// \int psi(q') delta_{j2}(q, conj q') dmu_{j2}(q') by quadrature.
cdouble reproduce(const FockCoeffs& psi, cdouble q, const numerics::GaussHermiteRule& rule);

/// Right action q g^{-1} = q exp(-i x1) + i x2 - x3.
cdouble point_action(cdouble q, const GroupElementd& g);

/// Exponent of the cocycle U^lambda(q, g).
cdouble log_cocycle_U(cdouble q, const GroupElementd& g, const RepParams& rep);
cdouble cocycle_U(cdouble q, const GroupElementd& g, const RepParams& rep);

/// D^lambda_{qq'}(g^{-1}) = U(q, g) delta_{j2}(q g^{-1}, qbar2).
cdouble dkernel(cdouble q, cdouble qbar2, const GroupElementd& g, const RepParams& rep);
/// log of dkernel (principal branch of the prefactor).
cdouble log_dkernel(cdouble q, cdouble qbar2, const GroupElementd& g, const RepParams& rep);
/// d/dq of dkernel, evaluated in closed form.
cdouble dkernel_dq(cdouble q, cdouble qbar2, const GroupElementd& g, const RepParams& rep);

/// exp(x4 L4) exp(x3 L3) exp(x2 L2) exp(x1 L1) on the truncated basis.
Eigen::MatrixXcd rep_matrix(const GroupElementd& g, const RepParams& rep);

/// Density of the Plancherel measure over orbit labels, j2 / (2 pi hbar)^3.
/// Only used by distributional identities that are not evaluated here.
inline double orbit_measure_density(double j2, double hbar)
{
  const double s = 2.0 * kPi * hbar;
  return j2 / (s * s * s);
}

}  // namespace osc::rep
