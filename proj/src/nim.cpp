#include "osc/nim.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace osc::nim {

namespace {

const cdouble I(0.0, 1.0);

rep::RepParams group_rep(const OrbitLabel& orbit, const PhysParams& p, int N)
{
  rep::RepParams r;
  r.orbit = orbit;
  r.hbar = p.hbar;
  r.N = N;
  return r;
}

double relative_gap(cdouble a, cdouble b)
{
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::string describe(const std::string& label, double gap)
{
  std::ostringstream os;
  os << label << ": relative gap " << gap << (gap <= 1e-6 ? " (agrees)" : " (disagrees)");
  return os.str();
}

}  // namespace

InvariantPoly InvariantPoly::casimir_k1()
{
  InvariantPoly h;
  h.A(0, 3) = h.A(3, 0) = 1.0;
  h.A(1, 1) = h.A(2, 2) = 1.0;
  return h;
}

InvariantPoly InvariantPoly::casimir_k2()
{
  InvariantPoly h;
  h.B(3) = 1.0;
  return h;
}

Eigen::MatrixXcd reduce_invariant_operator(const InvariantPoly& h, const rep::RepParams& rep)
{
  if ((h.A - h.A.transpose()).cwiseAbs().maxCoeff() > 0.0)
    throw std::invalid_argument("reduce_invariant_operator: A must be symmetric");
  const rep::LambdaMatrices m = rep::lambda_matrices(rep);
  std::array<Eigen::MatrixXcd, 4> f;
  for (int a = 0; a < 4; ++a) f[a] = -I * rep.hbar * m[a];

  const int d = rep.dim();
  Eigen::MatrixXcd out = h.C * Eigen::MatrixXcd::Identity(d, d);
  for (int a = 0; a < 4; ++a) {
    if (h.B(a) != 0.0) out += h.B(a) * f[a];
    for (int b = 0; b < 4; ++b)
      if (h.A(a, b) != 0.0) out += 0.5 * h.A(a, b) * (f[a] * f[b] + f[b] * f[a]);
  }
  return out;
}

double max_abs_window(const Eigen::MatrixXcd& m, int limit)
{
  const int n = std::min<int>(limit + 1, static_cast<int>(m.rows()));
  if (n <= 0) return 0.0;
  return m.topLeftCorner(n, n).cwiseAbs().maxCoeff();
}

std::pair<InvariantPoly, InvariantPoly> oscillator_system(const PhysParams& p)
{
  InvariantPoly k2 = InvariantPoly::casimir_k2();
  k2.C = p.hbar * p.m;
  return {InvariantPoly::casimir_k1(), k2};
}

double reduced_system_defect(const OrbitLabel& orbit, const PhysParams& p, int N)
{
  const rep::RepParams r = group_rep(orbit, p, N);
  const auto [k1, k2] = oscillator_system(p);
  const int limit = rep::protected_limit(r, 2);
  return std::max(max_abs_window(reduce_invariant_operator(k1, r), limit),
                  max_abs_window(reduce_invariant_operator(k2, r), limit));
}

OscillatorReduction oscillator_reduction(const PhysParams& p, int N)
{
  p.validate();
  OscillatorReduction out;
  // K1 reduces to (2 j1 - hbar) j2, K2 + hbar m to j2 + hbar m.
  out.group_orbit = OrbitLabel{p.hbar / 2.0, -p.hbar * p.m};
  out.u_orbit = OrbitLabel{out.group_orbit.j1 / p.hbar, -p.m * p.omega * p.hbar};
  out.defect = reduced_system_defect(out.group_orbit, p, N);

  std::ostringstream os;
  os << "K1 condition: (j1 - hbar/2) psi = 0 -> j1 = " << out.group_orbit.j1;
  out.notes.push_back(os.str());
  os.str("");
  os << "K2 condition: (j2 + hbar m) psi = 0 -> j2 = " << out.group_orbit.j2;
  out.notes.push_back(os.str());
  out.notes.push_back("eta3 condition: d psi / d q' = 0 (psi independent of q')");
  out.notes.push_back("physical coordinates: x1 = omega t, x2 = sqrt(omega/hbar) x, x3 = x4 = 0, "
                      "q = sqrt(omega hbar) u");
  os.str("");
  os << "u-space orbit: (mu, j2) = (" << out.u_orbit.j1 << ", " << out.u_orbit.j2 << ")";
  out.notes.push_back(os.str());
  return out;
}

cdouble USpaceConvention::chi(int n, cdouble u) const
{
  return std::pow(u, n) * std::exp(-kappa * u * u / 4.0);
}

double USpaceConvention::weight(cdouble u) const
{
  return std::exp(-kappa * u.imag() * u.imag());
}

double USpaceConvention::norm_squared(int n) const
{
  return kPi * std::exp(std::lgamma(n + 1.0) + (n + 1) * std::log(2.0 / kappa));
}

KernelPath parse_path(const std::string& name)
{
  if (name == "correspondence") return KernelPath::correspondence;
  if (name == "cocycle") return KernelPath::cocycle;
  throw std::invalid_argument("unknown kernel path '" + name + "' (expected correspondence or cocycle)");
}

std::string to_string(KernelPath path)
{
  return path == KernelPath::correspondence ? "correspondence" : "cocycle";
}

cdouble correspondence_factor(cdouble u, const PhysParams& p)
{
  const double kappa = p.kappa();
  return p.omega / (2.0 * kPi) * std::sqrt(p.hbar * p.m) *
         std::exp(-kappa / 4.0 * (u * u - std::norm(u)));
}

cdouble coherent_label(cdouble u, const PhysParams& p)
{
  return I * std::sqrt(p.kappa() / 2.0) * u;
}

cdouble hstate_kernel(double t, double x, const HStateLabel& s, const PhysParams& p, KernelPath path)
{
  if (path == KernelPath::correspondence) {
    // The coherent state carries the mu = 1/2 phase exp(-i omega t / 2).
    const cdouble mu_phase = std::exp(-I * (s.mu - 0.5) * p.omega * t);
    return correspondence_factor(s.u, p) * mu_phase * qho::coherent_alpha(t, x, coherent_label(s.u, p), p);
  }
  // Group-level orbit (mu hbar, -m hbar) at x1 = omega t, x2 = sqrt(omega/hbar) x, q = sqrt(omega hbar) u.
  rep::RepParams r;
  r.orbit = OrbitLabel{s.mu * p.hbar, -p.m * p.hbar};
  r.hbar = p.hbar;
  const lie::GroupElementd g(p.omega * t, std::sqrt(p.omega / p.hbar) * x, 0.0, 0.0);
  const cdouble q = std::sqrt(p.omega * p.hbar) * s.u;
  const double prefactor = p.omega * std::sqrt(p.hbar * p.m) / (2.0 * kPi) *
                           std::pow(p.omega * p.m / (kPi * p.hbar), 0.25);
  return prefactor * rep::cocycle_U(q, g, r);
}

cdouble hstate_kernel_dx(double t, double x, const HStateLabel& s, const PhysParams& p)
{
  const double b = std::sqrt(p.m * p.omega / (2.0 * p.hbar));
  const cdouble zt = qho::z_of_t(coherent_label(s.u, p), t, p);
  return -2.0 * b * (b * x - zt) * hstate_kernel(t, x, s, p, KernelPath::correspondence);
}

QuadratureValue synthesize(const Eigen::VectorXcd& phi, double t, double x, const PhysParams& p,
                           const numerics::GaussHermiteRule& rule, KernelPath path)
{
  p.validate();
  if (phi.size() == 0) throw std::invalid_argument("synthesize: empty coefficient vector");
  const USpaceConvention conv(p);
  const HStateLabel base{0.0, 0.5};
  auto polynomial = [&](cdouble u) {
    cdouble acc = 0.0;
    for (Eigen::Index n = phi.size() - 1; n >= 0; --n) acc = acc * u + phi(n);
    return acc;
  };
  // conj(phi) D w / exp(-sigma |u|^2); the Gaussian parts are combined in one exponent.
  auto remainder = [&](cdouble u) {
    HStateLabel s = base;
    s.u = u;
    const cdouble gauss = -conv.kappa * std::conj(u * u) / 4.0 - conv.kappa * u.imag() * u.imag() +
                          conv.sigma() * std::norm(u);
    return std::conj(polynomial(u)) * hstate_kernel(t, x, s, p, path) * std::exp(gauss);
  };
  QuadratureValue out;
  out.value = numerics::integrate_plane(remainder, conv.sigma(), rule);
  out.coarse = rule.size() < static_cast<int>(phi.size()) + 1;
  return out;
}

double u_space_norm_squared(const Eigen::VectorXcd& phi, const PhysParams& p,
                            const numerics::GaussHermiteRule& rule)
{
  const USpaceConvention conv(p);
  auto polynomial = [&](cdouble u) {
    cdouble acc = 0.0;
    for (Eigen::Index n = phi.size() - 1; n >= 0; --n) acc = acc * u + phi(n);
    return acc;
  };
  return numerics::integrate_plane([&](cdouble u) { return std::norm(polynomial(u)); }, conv.sigma(), rule)
      .real();
}

double normalization_magnitude(int n, const PhysParams& p)
{
  return std::sqrt(p.hbar * p.m) *
         std::exp(-0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0)) + 0.5 * n * std::log(p.kappa()));
}

std::vector<SpectrumEntry> stationary_spectrum(int n_max, const PhysParams& p,
                                               const numerics::GaussHermiteRule& rule, int N)
{
  p.validate();
  if (n_max < 0 || n_max > N) throw std::invalid_argument("stationary_spectrum: need 0 <= n_max <= N");
  const OscillatorReduction red = oscillator_reduction(p, N);
  const rep::RepParams r = group_rep(red.group_orbit, p, N);
  const rep::LambdaMatrices m = rep::lambda_matrices(r);

  std::vector<SpectrumEntry> out;
  for (int n = 0; n <= n_max; ++n) {
    SpectrumEntry e;
    e.n = n;
    // -i omega hbar L1 is diagonal with entries omega hbar (n + j1/hbar).
    e.level = (-I * m[0](n, n)).real();
    e.energy = p.omega * p.hbar * e.level;

    Eigen::VectorXcd chi = Eigen::VectorXcd::Zero(n + 1);
    chi(n) = 1.0;
    const double norm_q = u_space_norm_squared(chi, p, rule);
    const double magnitude = 1.0 / std::sqrt(p.omega / (2.0 * kPi) * norm_q);

    // Phase: synthesize(C_n chi_n) = conj(C_n) synthesize(chi_n) must equal psi_n.
    cdouble ratio = 0.0;
    double best = -1.0;
    for (double xi : {1.0, 0.5, 1.5, 0.25}) {
      const double x = xi / p.length_inv();
      const cdouble target = qho::psi_n(n, 0.0, x, p);
      if (std::abs(target) <= best) continue;
      best = std::abs(target);
      ratio = target / synthesize(chi, 0.0, x, p, rule).value;
      if (best > 1e-3) break;
    }
    e.coefficient = magnitude * std::conj(ratio / std::abs(ratio));
    out.push_back(e);
  }
  return out;
}

Eigen::VectorXcd fock_coeffs_hstate(const HStateLabel& s, double t, int n_max, const PhysParams& p)
{
  if (n_max < 0) throw std::invalid_argument("fock_coeffs_hstate: negative n_max");
  const double kappa = p.kappa();
  Eigen::VectorXcd c(n_max + 1);
  c(0) = p.omega / (2.0 * kPi) * std::sqrt(p.hbar * p.m) *
         std::exp(-I * s.mu * p.omega * t - kappa * s.u * s.u / 4.0);
  const cdouble step = I * std::sqrt(kappa / 2.0) * s.u * std::exp(-I * p.omega * t);
  for (int n = 1; n <= n_max; ++n) c(n) = c(n - 1) * step / std::sqrt(double(n));
  return c;
}

cdouble hstate_overlap(int n, const HStateLabel& s, double t, const PhysParams& p,
                       const numerics::GaussHermiteRule& rule)
{
  const double sigma = p.m * p.omega / p.hbar;
  return numerics::integrate_line(
      [&](double x) {
        return std::conj(qho::psi_n(n, 0.0, x, p)) * hstate_kernel(t, x, s, p) * std::exp(sigma * x * x);
      },
      sigma, rule);
}

double hstate_norm_closed_form(cdouble u, const PhysParams& p)
{
  const double kappa = p.kappa();
  const cdouble d = u - std::conj(u);
  return (p.omega / (2.0 * kPi)) * (kappa / (2.0 * kPi)) * std::exp(-kappa / 4.0 * d * d).real();
}

HStateMeans means_hstate(const HStateLabel& s, double t, const PhysParams& p,
                         const numerics::GaussHermiteRule& rule)
{
  p.validate();
  const double sigma = p.m * p.omega / p.hbar;
  auto density = [&](double x) {
    return std::norm(hstate_kernel(t, x, s, p)) * std::exp(sigma * x * x);
  };
  HStateMeans out;
  out.norm = numerics::integrate_line([&](double x) { return cdouble(density(x)); }, sigma, rule);
  out.x = numerics::integrate_line([&](double x) { return cdouble(x * density(x)); }, sigma, rule);
  out.p = numerics::integrate_line(
      [&](double x) {
        return std::conj(hstate_kernel(t, x, s, p)) * (-I * p.hbar) * hstate_kernel_dx(t, x, s, p) *
               std::exp(sigma * x * x);
      },
      sigma, rule);

  const double kappa = p.kappa();
  const cdouble rotated = std::exp(-I * p.omega * t) * s.u;
  const cdouble expo = std::exp(-kappa / 2.0 * (s.u * s.u - std::norm(s.u)));
  const double x_pref = -p.m * std::pow(p.omega * p.hbar / (2.0 * kPi), 2);
  const double p_pref = p.hbar * p.m * std::pow(p.omega / (2.0 * kPi), 2) * std::sqrt(2.0 * p.m * p.hbar * p.omega);
  out.x_tabulated = x_pref * expo * rotated.imag();
  out.p_tabulated = p_pref * expo * rotated.real();
  out.x_tabulated_modulus = x_pref * std::abs(expo) * rotated.imag();
  out.p_tabulated_modulus = p_pref * std::abs(expo) * rotated.real();

  const double pref2 = std::norm(correspondence_factor(s.u, p));
  const auto [xc, pc] = qho::mean_coherent(coherent_label(s.u, p), t, p);
  out.x_factorized = pref2 * xc;
  out.p_factorized = pref2 * pc;

  out.notes.push_back(describe("<x> quadrature vs tabulated (complex exponent)", relative_gap(out.x, out.x_tabulated)));
  out.notes.push_back(describe("<x> quadrature vs tabulated (modulus of exponent)",
                               relative_gap(out.x, out.x_tabulated_modulus)));
  out.notes.push_back(describe("<p> quadrature vs tabulated (complex exponent)", relative_gap(out.p, out.p_tabulated)));
  out.notes.push_back(describe("<p> quadrature vs tabulated (modulus of exponent)",
                               relative_gap(out.p, out.p_tabulated_modulus)));
  return out;
}

double schrodinger_residual(const qho::GridField& field, const PhysParams& p)
{
  const qho::GridField s = qho::schrodinger_operator(field, p);
  const double scale = field.max_abs_valid();
  if (scale == 0.0) return 0.0;
  return s.max_abs_valid() / scale;
}

double schrodinger_residual_patches(const qho::Field& f, const qho::GridSpec& grid, const PhysParams& p,
                                    double h)
{
  grid.validate();
  double num = 0.0, den = 0.0;
  for (int i = 0; i < grid.t_count; ++i)
    for (int j = 0; j < grid.x_count; ++j) {
      const qho::GridField patch = qho::sample_patch(f, grid.t(i), grid.x(j), h, 5);
      const qho::GridField s = qho::schrodinger_operator(patch, p);
      num = std::max(num, std::abs(s.values(2, 2)));
      den = std::max(den, std::abs(patch.values(2, 2)));
    }
  return den == 0.0 ? 0.0 : num / den;
}

}  // namespace osc::nim
