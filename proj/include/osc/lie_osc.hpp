#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Core>

namespace osc::lie {

/**
 * Oscillatory Lie algebra g_osc, basis e1..e4 (indices 0..3 here):
 *
 *   [e1,e2] = -e3,  [e1,e3] = e2,  [e2,e3] = -e4,  e4 central.
 *
 * Algebra elements and covectors are plain 4-vectors over the basis and the
 * dual basis respectively.
 */
template <typename Scalar>
using AlgebraVector = Eigen::Matrix<Scalar, 4, 1>;

template <typename Scalar>
using Covector = Eigen::Matrix<Scalar, 4, 1>;

/// Coefficient matrix of a family of vector fields: row a = field a,
/// column k = component along d/dx_k.
template <typename Scalar>
using FieldMatrix = Eigen::Matrix<Scalar, 4, 4>;

/// Structure constant C_ab^c, zero-based indices.
constexpr double structure_constant(int a, int b, int c)
{
  auto antisym = [](int a, int b, int i, int j, int k, int c, double v) {
    if (c != k) return 0.0;
    if (a == i && b == j) return v;
    if (a == j && b == i) return -v;
    return 0.0;
  };
  return antisym(a, b, 0, 1, 2, c, -1.0) + antisym(a, b, 0, 2, 1, c, 1.0) +
         antisym(a, b, 1, 2, 3, c, -1.0);
}

template <typename Scalar>
AlgebraVector<Scalar> basis(int a)
{
  AlgebraVector<Scalar> e = AlgebraVector<Scalar>::Zero();
  e(a) = Scalar(1);
  return e;
}

template <typename Scalar>
AlgebraVector<Scalar> bracket(const AlgebraVector<Scalar>& x, const AlgebraVector<Scalar>& y)
{
  AlgebraVector<Scalar> r;
  r(0) = Scalar(0);
  r(1) = x(0) * y(2) - x(2) * y(0);
  r(2) = -(x(0) * y(1) - x(1) * y(0));
  r(3) = -(x(1) * y(2) - x(2) * y(1));
  return r;
}

inline void check_index(int a)
{
  if (a < 0 || a > 3) throw std::out_of_range("g_osc basis index must be in 0..3");
}

/// {f_a, f_b}(f) = C_ab^c f_c.
template <typename Scalar>
Scalar poisson_bracket_coords(int a, int b, const Covector<Scalar>& f)
{
  check_index(a);
  check_index(b);
  Scalar r(0);
  for (int c = 0; c < 4; ++c) r += Scalar(structure_constant(a, b, c)) * f(c);
  return r;
}

/// Poisson-Lie bracket of two functions given their gradients at f.
template <typename Scalar>
Scalar poisson_bracket(const Covector<Scalar>& grad_phi, const Covector<Scalar>& grad_psi,
                       const Covector<Scalar>& f)
{
  Scalar r(0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) r += poisson_bracket_coords(a, b, f) * grad_phi(a) * grad_psi(b);
  return r;
}

template <typename Scalar>
struct Casimirs
{
  Scalar k1;
  Scalar k2;
};

/// K1 = 2 f1 f4 + f2^2 + f3^2, K2 = f4.
template <typename Scalar>
Casimirs<Scalar> casimirs(const Covector<Scalar>& f)
{
  return {Scalar(2) * f(0) * f(3) + f(1) * f(1) + f(2) * f(2), f(3)};
}

template <typename Scalar>
Covector<Scalar> casimir_k1_gradient(const Covector<Scalar>& f)
{
  return Covector<Scalar>(Scalar(2) * f(3), Scalar(2) * f(1), Scalar(2) * f(2), Scalar(2) * f(0));
}

template <typename Scalar>
Covector<Scalar> casimir_k2_gradient(const Covector<Scalar>&)
{
  return Covector<Scalar>(Scalar(0), Scalar(0), Scalar(0), Scalar(1));
}

/**
 * Point of G_osc in canonical coordinates of the second kind,
 *
 *   g(x) = exp(x4 e4) exp(x3 e3) exp(x2 e2) exp(x1 e1).
 *
 * Coordinates range over all of R^4; x1 is not reduced modulo 2 pi.
 */
template <typename Scalar>
struct GroupElement
{
  Eigen::Matrix<Scalar, 4, 1> x = Eigen::Matrix<Scalar, 4, 1>::Zero();

  GroupElement() = default;
  explicit GroupElement(const Eigen::Matrix<Scalar, 4, 1>& coords) : x(coords) {}
  GroupElement(Scalar x1, Scalar x2, Scalar x3, Scalar x4) : x(x1, x2, x3, x4) {}

  static GroupElement identity() { return GroupElement(); }

  const Scalar& operator[](int i) const { return x(i); }
  Scalar& operator[](int i) { return x(i); }
};

using GroupElementd = GroupElement<double>;

/// exp(t e_a) in second-kind coordinates: only coordinate a is nonzero.
template <typename Scalar>
GroupElement<Scalar> exp_generator(int a, Scalar t)
{
  check_index(a);
  GroupElement<Scalar> g;
  g[a] = t;
  return g;
}

/**
 * Group product g h. The x4 component is
 *
 *   x4 + y4 + x2 (y2 sin x1 - y3 cos x1) + y2 y3 sin^2 x1 + (y2^2 - y3^2)/4 sin 2x1,
 *
 * which is what the ordered-exponential factorization forces.
 */
template <typename Scalar>
GroupElement<Scalar> compose(const GroupElement<Scalar>& g, const GroupElement<Scalar>& h)
{
  using std::cos;
  using std::sin;
  const Scalar c = cos(g[0]), s = sin(g[0]);
  const Scalar y2 = h[1], y3 = h[2];
  return GroupElement<Scalar>(
      g[0] + h[0],
      g[1] + y2 * c + y3 * s,
      g[2] + y3 * c - y2 * s,
      g[3] + h[3] + g[1] * (y2 * s - y3 * c) + y2 * y3 * s * s +
          (y2 * y2 - y3 * y3) / Scalar(4) * sin(Scalar(2) * g[0]));
}

template <typename Scalar>
GroupElement<Scalar> inverse(const GroupElement<Scalar>& g)
{
  using std::cos;
  using std::sin;
  const Scalar c = cos(g[0]), s = sin(g[0]);
  const Scalar y2 = -g[1] * c + g[2] * s;
  const Scalar y3 = -g[1] * s - g[2] * c;
  const Scalar shift = g[1] * (y2 * s - y3 * c) + y2 * y3 * s * s +
                       (y2 * y2 - y3 * y3) / Scalar(4) * sin(Scalar(2) * g[0]);
  return GroupElement<Scalar>(-g[0], y2, y3, -g[3] - shift);
}

/// Left-invariant fields xi_a(g) = d/dt g exp(t e_a) at t = 0.
template <typename Scalar>
FieldMatrix<Scalar> left_fields(const GroupElement<Scalar>& g)
{
  using std::cos;
  using std::sin;
  const Scalar c = cos(g[0]), s = sin(g[0]);
  FieldMatrix<Scalar> m = FieldMatrix<Scalar>::Zero();
  m(0, 0) = Scalar(1);
  m(1, 1) = c;
  m(1, 2) = -s;
  m(1, 3) = g[1] * s;
  m(2, 1) = s;
  m(2, 2) = c;
  m(2, 3) = -g[1] * c;
  m(3, 3) = Scalar(1);
  return m;
}

/// Right-invariant fields eta_a(g) = -d/dt exp(t e_a) g at t = 0.
template <typename Scalar>
FieldMatrix<Scalar> right_fields(const GroupElement<Scalar>& g)
{
  const Scalar x2 = g[1], x3 = g[2];
  FieldMatrix<Scalar> m = FieldMatrix<Scalar>::Zero();
  m(0, 0) = Scalar(-1);
  m(0, 1) = -x3;
  m(0, 2) = x2;
  m(0, 3) = (x3 * x3 - x2 * x2) / Scalar(2);
  m(1, 1) = Scalar(-1);
  m(1, 3) = x3;
  m(2, 2) = Scalar(-1);
  m(3, 3) = Scalar(-1);
  return m;
}

/// Commonly tabulated right fields; identical to right_fields except that
/// eta3 is listed as -d/dx1. Kept only so the discrepancy can be reported.
template <typename Scalar>
FieldMatrix<Scalar> right_fields_tabulated(const GroupElement<Scalar>& g)
{
  FieldMatrix<Scalar> m = right_fields(g);
  m.row(2).setZero();
  m(2, 0) = Scalar(-1);
  return m;
}

struct OrbitLabel
{
  double j1 = 0.0;
  double j2 = -1.0;
};

/**
 * Canonical (p, q) coordinates on the orbit through (j1, 0, 0, j2) associated
 * with the complex polarization span{e1, e2 + i e3, e4}:
 *
 *   f1 = i p q + j1,  f2 = -i p / 2 + j2 q,  f3 = p / 2 - i j2 q,  f4 = j2.
 */
inline Covector<std::complex<double>> canonical_embedding(std::complex<double> p,
                                                          std::complex<double> q,
                                                          const OrbitLabel& orbit)
{
  const std::complex<double> i(0.0, 1.0);
  return Covector<std::complex<double>>(i * p * q + orbit.j1, -i * p / 2.0 + orbit.j2 * q,
                                        p / 2.0 - i * orbit.j2 * q, orbit.j2);
}

/// Columns: d f / d p and d f / d q.
inline Eigen::Matrix<std::complex<double>, 4, 2> canonical_embedding_jacobian(
    std::complex<double> p, std::complex<double> q, const OrbitLabel& orbit)
{
  const std::complex<double> i(0.0, 1.0);
  Eigen::Matrix<std::complex<double>, 4, 2> j;
  j << i * q, i * p,
       -i / 2.0, orbit.j2,
       0.5, -i * orbit.j2,
       0.0, 0.0;
  return j;
}

}  // namespace osc::lie
