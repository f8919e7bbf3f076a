#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "osc/lambda_rep.hpp"
#include "osc/lie_osc.hpp"
#include "osc/numerics.hpp"
#include "osc/oscillator.hpp"

namespace osc::nim {

using lie::OrbitLabel;
using qho::PhysParams;

/// H(f) = A^{ab} f_a f_b + B^a f_a + C on the dual of g_osc.
struct InvariantPoly
{
  Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
  Eigen::Vector4d B = Eigen::Vector4d::Zero();
  double C = 0.0;

  /// 2 f1 f4 + f2^2 + f3^2.
  static InvariantPoly casimir_k1();
  /// f4.
  static InvariantPoly casimir_k2();

  double operator()(const Eigen::Vector4d& f) const { return f.dot(A * f) + B.dot(f) + C; }
};

/// H(-i hbar L) on the truncated basis; the quadratic part uses the
/// symmetrized product (L_a L_b + L_b L_a) / 2.
Eigen::MatrixXcd reduce_invariant_operator(const InvariantPoly& h, const rep::RepParams& rep);

/// Largest |entry| of m on the block of indices 0..limit.
double max_abs_window(const Eigen::MatrixXcd& m, int limit);

/**
 * Orbit selected by the oscillator system on the group:
 *
 *   K1(-i hbar xi) Psi = 0,  K2(-i hbar xi) Psi = hbar m Psi,  eta3 Psi = 0.
 *
 * The reduced system reads (j1 - hbar/2) psi = 0, (j2 + hbar m) psi = 0 and
 * d psi / d q' = 0.
 */
struct OscillatorReduction
{
  /// Orbit of the group-level system, (hbar/2, -hbar m).
  OrbitLabel group_orbit;
  /// Same orbit in u-space conventions: (mu = j1/hbar, -m omega hbar).
  OrbitLabel u_orbit;
  /// Residual of the reduced system at group_orbit (zero).
  double defect = 0.0;
  std::vector<std::string> notes;
};

/// The two reduced invariant equations of the oscillator system.
std::pair<InvariantPoly, InvariantPoly> oscillator_system(const PhysParams& p);

/// max over both reduced equations of the protected-window entries.
double reduced_system_defect(const OrbitLabel& orbit, const PhysParams& p, int N = 40);

OscillatorReduction oscillator_reduction(const PhysParams& p, int N = 40);

struct HStateLabel
{
  cdouble u = 0.0;
  double mu = 0.5;
};

/**
 * u-space conventions with the single parameter kappa = m omega hbar:
 * basis chi_n(u) = u^n exp(-kappa u^2 / 4), weight exp(-kappa (Im u)^2) dA.
 */
struct USpaceConvention
{
  double kappa = 1.0;

  explicit USpaceConvention(const PhysParams& p) : kappa(p.kappa()) {}

  cdouble chi(int n, cdouble u) const;
  double weight(cdouble u) const;
  /// pi n! (2 / kappa)^(n+1).
  double norm_squared(int n) const;
  /// Gaussian rate of |chi_n|^2 times the weight.
  double sigma() const { return kappa / 2.0; }
};

enum class KernelPath { correspondence, cocycle };

KernelPath parse_path(const std::string& name);
std::string to_string(KernelPath path);

/// Prefactor (omega / 2 pi) sqrt(hbar m) exp[-(kappa/4)(u^2 - |u|^2)] linking
/// the H-state kernel to the coherent state.
cdouble correspondence_factor(cdouble u, const PhysParams& p);

/// Coherent-state label z = i sqrt(kappa / 2) u of the H-state with label u.
cdouble coherent_label(cdouble u, const PhysParams& p);

/// H-state kernel D(t, x | u; mu).
cdouble hstate_kernel(double t, double x, const HStateLabel& s, const PhysParams& p,
                      KernelPath path = KernelPath::correspondence);

/// d/dx of the kernel in closed form.
cdouble hstate_kernel_dx(double t, double x, const HStateLabel& s, const PhysParams& p);

struct QuadratureValue
{
  cdouble value;
  bool coarse = false;
};

/**
 * psi(t, x) = \int conj(phi(u)) D(t, x | u; 1/2) dmu(u) for phi given by its
 * coefficients over chi_n.
 */
QuadratureValue synthesize(const Eigen::VectorXcd& phi, double t, double x, const PhysParams& p,
                           const numerics::GaussHermiteRule& rule,
                           KernelPath path = KernelPath::correspondence);

/// ||phi||_Q^2 under the u-space weight.
double u_space_norm_squared(const Eigen::VectorXcd& phi, const PhysParams& p,
                            const numerics::GaussHermiteRule& rule);

struct SpectrumEntry
{
  int n = 0;
  double energy = 0.0;
  /// E_n / (hbar omega) read off the diagonal.
  double level = 0.0;
  /// Normalization constant of chi_n, so that synthesize(C_n chi_n) = psi_n.
  cdouble coefficient;
};

/// Stationary states from the diagonal of -i omega hbar L1 at the oscillator
/// orbit. Norms come from quadrature, phases from matching psi_n at t = 0.
std::vector<SpectrumEntry> stationary_spectrum(int n_max, const PhysParams& p,
                                               const numerics::GaussHermiteRule& rule, int N = 40);

/// Closed-form magnitude sqrt(hbar m / (2^n n!)) (m omega hbar)^(n/2).
double normalization_magnitude(int n, const PhysParams& p);

/// <n|u,t> from composing the H-state/coherent-state relation with the
/// number-state expansion of |z,t>.
Eigen::VectorXcd fock_coeffs_hstate(const HStateLabel& s, double t, int n_max, const PhysParams& p);

/// <n|u,t> = \int conj(psi_n(0,x)) D(t,x|u) dx by quadrature.
cdouble hstate_overlap(int n, const HStateLabel& s, double t, const PhysParams& p,
                       const numerics::GaussHermiteRule& rule);

struct HStateMeans
{
  /// <u,t|u,t>, <u,t|x|u,t>, <u,t|p|u,t> by x-quadrature.
  cdouble norm;
  cdouble x;
  cdouble p;
  /// Tabulated closed forms, evaluated literally (complex exponent) and with
  /// the modulus of the exponential.
  cdouble x_tabulated;
  cdouble p_tabulated;
  double x_tabulated_modulus = 0.0;
  double p_tabulated_modulus = 0.0;
  /// |prefactor|^2 times the coherent-state means.
  double x_factorized = 0.0;
  double p_factorized = 0.0;
  std::vector<std::string> notes;
};

HStateMeans means_hstate(const HStateLabel& s, double t, const PhysParams& p,
                         const numerics::GaussHermiteRule& rule);

/// (omega / 2 pi) delta(u, conj u) = (omega / 2 pi)(kappa / 2 pi) exp[-(kappa/4)(u - conj u)^2].
double hstate_norm_closed_form(cdouble u, const PhysParams& p);

/// max over valid points of |iħ psi_t - H psi| / max |psi|.
double schrodinger_residual(const qho::GridField& field, const PhysParams& p);

/// Residual evaluated on 5x5 stencil patches of spacing h centred at every
/// node of grid; the multi-patch analogue of schrodinger_residual.
double schrodinger_residual_patches(const qho::Field& f, const qho::GridSpec& grid,
                                    const PhysParams& p, double h = 2e-3);

}  // namespace osc::nim
