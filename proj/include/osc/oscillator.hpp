#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "osc/check.hpp"
#include "osc/numerics.hpp"

namespace osc::qho {

/// Oscillator constants; natural units by default.
struct PhysParams
{
  double m = 1.0;
  double omega = 1.0;
  double hbar = 1.0;

  void validate() const;
  /// kappa = m omega hbar.
  double kappa() const { return m * omega * hbar; }
  /// sqrt(m omega / hbar): scale of the dimensionless coordinate.
  double length_inv() const;
};

double energy(int n, const PhysParams& p);

/// Normalized Hermite state psi_n(t, x) = exp(-i E_n t / hbar) <x|n>.
cdouble psi_n(int n, double t, double x, const PhysParams& p);

/// z(t) = z exp(-i omega t).
cdouble z_of_t(cdouble z, double t, const PhysParams& p);

/// Glauber coherent state <x|z,t>.
cdouble coherent_alpha(double t, double x, cdouble z, const PhysParams& p);

/// Number-state coefficients of |z,t> up to n_max.
Eigen::VectorXcd fock_expansion_coherent(cdouble z, double t, int n_max, const PhysParams& p);

/// (<x>, <p>) of the coherent state |z,t>.
std::pair<double, double> mean_coherent(cdouble z, double t, const PhysParams& p);

/**
 * Samples psi(t_i, x_j) on a uniform (t, x) lattice. `margin_t` and
 * `margin_x` count the boundary rows/columns on each side whose values are
 * not valid (they grow by two with each 4th-order stencil application).
 */
struct GridField
{
  double t0 = 0.0, dt = 1.0;
  double x0 = 0.0, dx = 1.0;
  Eigen::MatrixXcd values;  // rows: t, cols: x
  int margin_t = 0;
  int margin_x = 0;

  int nt() const { return static_cast<int>(values.rows()); }
  int nx() const { return static_cast<int>(values.cols()); }
  double t(int i) const { return t0 + i * dt; }
  double x(int j) const { return x0 + j * dx; }
  bool valid(int i, int j) const
  {
    return i >= margin_t && i < nt() - margin_t && j >= margin_x && j < nx() - margin_x;
  }
  /// Largest |value| over valid points.
  double max_abs_valid() const;
};

using Field = std::function<cdouble(double, double)>;

GridField sample_field(const Field& f, double t0, double dt, int nt, double x0, double dx, int nx);

/// Square nt x nx patch of spacing h centred on (t, x).
GridField sample_patch(const Field& f, double t, double x, double h, int width = 5);

enum class Operator { x, p, a, adag, H, p0 };

Operator parse_operator(const std::string& name);

/// Applies the operator with central differences of the given order (2 or 4)
/// along x (or t for p0). Throws std::invalid_argument if the differentiated
/// axis has fewer than five points.
GridField apply_operator(Operator op, const GridField& field, const PhysParams& p, int order = 4);

GridField operator-(const GridField& a, const GridField& b);
GridField operator*(cdouble s, const GridField& f);

/// Uniform sampling of the (t, x) rectangle.
struct GridSpec
{
  double t_min = 0.0, t_max = 2.0 * kPi;
  int t_count = 16;
  double x_min = -6.0, x_max = 6.0;
  int x_count = 25;

  void validate() const;
  double t(int i) const { return t_count == 1 ? t_min : t_min + i * (t_max - t_min) / (t_count - 1); }
  double x(int j) const { return x_count == 1 ? x_min : x_min + j * (x_max - x_min) / (x_count - 1); }
};

/**
 * Symmetry operators X1..X4 of the oscillator equation as operators on (t,x)
 * fields, a = 0..3. `corrupt` replaces cos(omega t) by cos(2 omega t) in X2
 * (negative control).
 */
GridField apply_symmetry(int a, const GridField& field, const PhysParams& p, bool corrupt = false);

/// iħ d/dt - H applied to the field.
GridField schrodinger_operator(const GridField& field, const PhysParams& p);

struct SymmetryReport
{
  std::vector<Check> checks;
  bool pass() const;
};

/**
 * Verifies the commutation table of X1..X4 on test fields and that each X_a
 * maps solutions to solutions, evaluated on stencil patches (spacing h)
 * centred on the grid nodes. Includes the corrupted-X2 negative control.
 */
SymmetryReport symmetry_suite(const PhysParams& p, const GridSpec& grid, double tol, double h = 2e-3);

}  // namespace osc::qho
