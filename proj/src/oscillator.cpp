#include "osc/oscillator.hpp"

#include <cmath>
#include <stdexcept>

namespace osc::qho {

namespace {

const cdouble I(0.0, 1.0);

// Derivative along one axis. Invalid cells are left at zero.
GridField derivative(const GridField& f, bool along_t, int deriv, int order)
{
  if (order != 2 && order != 4) throw std::invalid_argument("apply_operator: order must be 2 or 4");
  const int n = along_t ? f.nt() : f.nx();
  if (n < 5) throw std::invalid_argument("apply_operator: grid too small for central differences");
  const int reach = order == 4 ? 2 : 1;
  const double h = along_t ? f.dt : f.dx;

  GridField out = f;
  out.values.setZero();
  if (along_t) out.margin_t += reach;
  else out.margin_x += reach;

  for (int i = 0; i < f.nt(); ++i)
    for (int j = 0; j < f.nx(); ++j) {
      if (!out.valid(i, j)) continue;
      auto at = [&](int k) { return along_t ? f.values(i + k, j) : f.values(i, j + k); };
      cdouble v;
      if (deriv == 1) {
        v = order == 4 ? (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * h)
                       : (at(1) - at(-1)) / (2.0 * h);
      } else {
        v = order == 4 ? (-at(-2) + 16.0 * at(-1) - 30.0 * at(0) + 16.0 * at(1) - at(2)) / (12.0 * h * h)
                       : (at(1) - 2.0 * at(0) + at(-1)) / (h * h);
      }
      out.values(i, j) = v;
    }
  return out;
}

GridField multiply(const GridField& f, const Field& g)
{
  GridField out = f;
  for (int i = 0; i < f.nt(); ++i)
    for (int j = 0; j < f.nx(); ++j) out.values(i, j) *= g(f.t(i), f.x(j));
  return out;
}

GridField combine(const GridField& a, cdouble ca, const GridField& b, cdouble cb)
{
  if (a.nt() != b.nt() || a.nx() != b.nx())
    throw std::invalid_argument("GridField: shape mismatch");
  GridField out = a;
  out.values = ca * a.values + cb * b.values;
  out.margin_t = std::max(a.margin_t, b.margin_t);
  out.margin_x = std::max(a.margin_x, b.margin_x);
  return out;
}

}  // namespace

void PhysParams::validate() const
{
  if (!(m > 0.0) || !(omega > 0.0) || !(hbar > 0.0))
    throw std::invalid_argument("PhysParams: m, omega and hbar must be positive");
}

double PhysParams::length_inv() const { return std::sqrt(m * omega / hbar); }

double energy(int n, const PhysParams& p) { return p.hbar * p.omega * (n + 0.5); }

cdouble psi_n(int n, double t, double x, const PhysParams& p)
{
  if (n < 0) throw std::invalid_argument("psi_n: negative index");
  const double xi = p.length_inv() * x;
  const double norm = std::pow(p.m * p.omega / (kPi * p.hbar), 0.25) *
                      std::exp(-0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0)));
  const double spatial = norm * std::exp(-0.5 * xi * xi) * numerics::hermite_poly(n, xi);
  return std::exp(-I * energy(n, p) * t / p.hbar) * spatial;
}

cdouble z_of_t(cdouble z, double t, const PhysParams& p) { return z * std::exp(-I * p.omega * t); }

cdouble coherent_alpha(double t, double x, cdouble z, const PhysParams& p)
{
  const cdouble zt = z_of_t(z, t, p);
  const cdouble shift = std::sqrt(p.m * p.omega / (2.0 * p.hbar)) * x - zt;
  return std::pow(p.m * p.omega / (kPi * p.hbar), 0.25) *
         std::exp(-I * p.omega * t / 2.0 - shift * shift + zt * zt / 2.0 - std::norm(z) / 2.0);
}

Eigen::VectorXcd fock_expansion_coherent(cdouble z, double t, int n_max, const PhysParams& p)
{
  if (n_max < 0) throw std::invalid_argument("fock_expansion_coherent: negative n_max");
  const cdouble zt = z_of_t(z, t, p);
  Eigen::VectorXcd c(n_max + 1);
  c(0) = std::exp(-I * p.omega * t / 2.0 - std::norm(zt) / 2.0);
  for (int n = 1; n <= n_max; ++n) c(n) = c(n - 1) * zt / std::sqrt(double(n));
  return c;
}

std::pair<double, double> mean_coherent(cdouble z, double t, const PhysParams& p)
{
  const cdouble zt = z_of_t(z, t, p);
  return {std::sqrt(2.0 * p.hbar / (p.m * p.omega)) * zt.real(),
          std::sqrt(2.0 * p.m * p.hbar * p.omega) * zt.imag()};
}

double GridField::max_abs_valid() const
{
  double best = 0.0;
  for (int i = 0; i < nt(); ++i)
    for (int j = 0; j < nx(); ++j)
      if (valid(i, j)) best = std::max(best, std::abs(values(i, j)));
  return best;
}

GridField sample_field(const Field& f, double t0, double dt, int nt, double x0, double dx, int nx)
{
  if (nt < 1 || nx < 1) throw std::invalid_argument("sample_field: empty grid");
  if (!(dt > 0.0) || !(dx > 0.0)) throw std::invalid_argument("sample_field: spacings must be positive");
  GridField g;
  g.t0 = t0;
  g.dt = dt;
  g.x0 = x0;
  g.dx = dx;
  g.values.resize(nt, nx);
  for (int i = 0; i < nt; ++i)
    for (int j = 0; j < nx; ++j) g.values(i, j) = f(g.t(i), g.x(j));
  return g;
}

GridField sample_patch(const Field& f, double t, double x, double h, int width)
{
  const int half = width / 2;
  return sample_field(f, t - half * h, h, width, x - half * h, h, width);
}

Operator parse_operator(const std::string& name)
{
  if (name == "x") return Operator::x;
  if (name == "p") return Operator::p;
  if (name == "a") return Operator::a;
  if (name == "adag") return Operator::adag;
  if (name == "H") return Operator::H;
  if (name == "p0") return Operator::p0;
  throw std::invalid_argument("unknown operator '" + name + "' (expected x, p, a, adag, H, p0)");
}

GridField apply_operator(Operator op, const GridField& field, const PhysParams& p, int order)
{
  p.validate();
  const auto times_x = [](double, double x) -> cdouble { return x; };
  switch (op) {
    case Operator::x:
      return multiply(field, times_x);
    case Operator::p:
      return (-I * p.hbar) * derivative(field, false, 1, order);
    case Operator::a:
    case Operator::adag: {
      const double sign = op == Operator::a ? 1.0 : -1.0;
      const GridField dfdx = derivative(field, false, 1, order);
      const GridField xf = multiply(field, times_x);
      return combine(xf, p.length_inv() / std::sqrt(2.0), dfdx, sign / (p.length_inv() * std::sqrt(2.0)));
    }
    case Operator::H: {
      const GridField d2 = derivative(field, false, 2, order);
      const double k = 0.5 * p.m * p.omega * p.omega;
      const GridField pot = multiply(field, [k](double, double x) -> cdouble { return k * x * x; });
      return combine(d2, -p.hbar * p.hbar / (2.0 * p.m), pot, 1.0);
    }
    case Operator::p0:
      return (I * p.hbar) * derivative(field, true, 1, order);
  }
  throw std::logic_error("apply_operator: unhandled operator");
}

GridField operator-(const GridField& a, const GridField& b) { return combine(a, 1.0, b, -1.0); }

GridField operator*(cdouble s, const GridField& f)
{
  GridField out = f;
  out.values *= s;
  return out;
}

void GridSpec::validate() const
{
  if (t_count < 1 || x_count < 1) throw std::invalid_argument("GridSpec: counts must be positive");
  if (!(t_max >= t_min) || !(x_max >= x_min)) throw std::invalid_argument("GridSpec: empty range");
}

GridField apply_symmetry(int a, const GridField& field, const PhysParams& p, bool corrupt)
{
  p.validate();
  const double w = p.omega;
  switch (a) {
    case 0:
      return (1.0 / w) * derivative(field, true, 1, 4);
    case 1: {
      const double freq = corrupt ? 2.0 * w : w;
      const GridField dx = derivative(field, false, 1, 4);
      GridField out = multiply(dx, [&](double t, double) -> cdouble { return p.hbar * std::cos(freq * t); });
      const GridField mult =
          multiply(field, [&](double t, double x) -> cdouble { return I * p.m * w * x * std::sin(w * t); });
      return combine(out, 1.0, mult, 1.0);
    }
    case 2: {
      const GridField dx = derivative(field, false, 1, 4);
      GridField out = multiply(dx, [&](double t, double) -> cdouble { return p.hbar * std::sin(w * t); });
      const GridField mult =
          multiply(field, [&](double t, double x) -> cdouble { return -I * p.m * w * x * std::cos(w * t); });
      return combine(out, 1.0, mult, 1.0);
    }
    case 3:
      return (I * p.m * w * p.hbar) * field;
    default:
      throw std::out_of_range("apply_symmetry: generator index must be in 0..3");
  }
}

GridField schrodinger_operator(const GridField& field, const PhysParams& p)
{
  return apply_operator(Operator::p0, field, p) - apply_operator(Operator::H, field, p);
}

bool SymmetryReport::pass() const
{
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

SymmetryReport symmetry_suite(const PhysParams& p, const GridSpec& grid, double tol, double h)
{
  p.validate();
  grid.validate();
  const int width = 9;
  const int centre = width / 2;

  const std::vector<std::pair<std::string, Field>> solutions = {
      {"psi0", [&](double t, double x) { return psi_n(0, t, x, p); }},
      {"psi3", [&](double t, double x) { return psi_n(3, t, x, p); }},
      {"coherent", [&](double t, double x) { return coherent_alpha(t, x, cdouble(0.5, 0.3), p); }},
  };

  // [X_a, X_b] = C_ab^c X_c with C from the oscillatory algebra.
  struct Relation
  {
    int a, b, c;
    double coeff;
  };
  const Relation relations[] = {{0, 1, 2, -1.0}, {0, 2, 1, 1.0}, {1, 2, 3, -1.0},
                                {0, 3, -1, 0.0}, {1, 3, -1, 0.0}, {2, 3, -1, 0.0}};
  const char* names[] = {"X1", "X2", "X3", "X4"};

  SymmetryReport report;
  for (const auto& rel : relations) {
    double num = 0.0, den = 0.0;
    for (const auto& [label, f] : solutions)
      for (int i = 0; i < grid.t_count; ++i)
        for (int j = 0; j < grid.x_count; ++j) {
          const GridField patch = sample_patch(f, grid.t(i), grid.x(j), h, width);
          const GridField lhs = apply_symmetry(rel.a, apply_symmetry(rel.b, patch, p), p) -
                                apply_symmetry(rel.b, apply_symmetry(rel.a, patch, p), p);
          cdouble rhs = 0.0;
          if (rel.c >= 0) rhs = rel.coeff * apply_symmetry(rel.c, patch, p).values(centre, centre);
          num = std::max(num, std::abs(lhs.values(centre, centre) - rhs));
          den = std::max(den, rel.c >= 0 ? std::abs(rhs) : p.kappa() * std::abs(patch.values(centre, centre)));
        }
    const std::string name = std::string("[") + names[rel.a] + "," + names[rel.b] + "]";
    report.checks.push_back(make_check("commutator " + name, num / den, tol));
  }

  // [iħ d_t - H, X_a] psi = 0 on solutions.
  auto commutator_with_equation = [&](int a, bool corrupt) {
    double num = 0.0, den = 0.0;
    for (const auto& [label, f] : solutions)
      for (int i = 0; i < grid.t_count; ++i)
        for (int j = 0; j < grid.x_count; ++j) {
          const GridField patch = sample_patch(f, grid.t(i), grid.x(j), h, width);
          const GridField xa = apply_symmetry(a, patch, p, corrupt);
          const GridField lhs = schrodinger_operator(xa, p) -
                                apply_symmetry(a, schrodinger_operator(patch, p), p, corrupt);
          num = std::max(num, std::abs(lhs.values(centre, centre)));
          den = std::max(den, p.hbar * p.omega * std::abs(xa.values(centre, centre)));
        }
    return num / den;
  };
  for (int a = 0; a < 4; ++a)
    report.checks.push_back(
        make_check(std::string("integral of motion ") + names[a], commutator_with_equation(a, false), tol));
  report.checks.push_back(
      make_check("negative control: X2 with cos(2wt)", commutator_with_equation(1, true), 1e-2, true));
  return report;
}

}  // namespace osc::qho
