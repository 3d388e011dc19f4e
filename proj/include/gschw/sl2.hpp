#pragma once

#include <array>
#include <cmath>
#include <string>

#include "gschw/error.hpp"
#include "gschw/jet.hpp"

namespace gschw {

// 2x2 matrix over double or Jet, stored row-major as (a b; c d).
template <class T>
struct Mat2 {
  T a{}, b{}, c{}, d{};

  friend Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
  friend Mat2 operator-(const Mat2& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator*(const Mat2& x, double s) { return {x.a * s, x.b * s, x.c * s, x.d * s}; }
  friend Mat2 operator*(double s, const Mat2& x) { return x * s; }
  friend Mat2 operator/(const Mat2& x, double s) { return {x.a / s, x.b / s, x.c / s, x.d / s}; }
  Mat2& operator+=(const Mat2& y) { return *this = *this + y; }
  Mat2& operator-=(const Mat2& y) { return *this = *this - y; }
};

using Matrix = Mat2<double>;
using JetMatrix = Mat2<Jet>;
using Matrix3 = std::array<std::array<double, 3>, 3>;

template <class T>
Mat2<T> scale(const Mat2<T>& x, const T& s) {
  return {x.a * s, x.b * s, x.c * s, x.d * s};
}

template <class T>
T trace(const Mat2<T>& x) {
  return x.a + x.d;
}

template <class T>
T det(const Mat2<T>& x) {
  return x.a * x.d - x.b * x.c;
}

template <class T>
Mat2<T> adjugate(const Mat2<T>& x) {
  return {x.d, -x.b, -x.c, x.a};
}

template <class T>
Mat2<T> commutator(const Mat2<T>& x, const Mat2<T>& y) {
  return x * y - y * x;
}

// Pairing 2 tr(XY). With this normalization components in dual bases contract
// without extra factors: trace_pair(T^i, T_j) = delta^i_j.
template <class T>
T trace_pair(const Mat2<T>& x, const Mat2<T>& y) {
  return 2.0 * (x.a * y.a + x.b * y.c + x.c * y.b + x.d * y.d);
}

// Entrywise conversions between scalar and jet matrices.
JetMatrix lift(const Matrix& m, double t0, int order);
Matrix values(const JetMatrix& m);
JetMatrix differentiate(const JetMatrix& m);
JetMatrix truncate(const JetMatrix& m, int order);
// k-th time derivative of the matrix at the jet basepoint.
Matrix deriv(const JetMatrix& m, int k);

double max_abs(const Matrix& m);
Matrix identity_matrix();

// Element of SL(2,R). Construction checks the determinant.
class GroupElement {
 public:
  static constexpr double kDetTolerance = 1e-10;

  GroupElement() = default;
  explicit GroupElement(const Matrix& m);
  GroupElement(double a, double b, double c, double d) : GroupElement(Matrix{a, b, c, d}) {}

  static GroupElement identity() { return GroupElement(); }

  const Matrix& matrix() const noexcept { return m_; }
  // Adjugate; exact inverse when det = 1.
  GroupElement inverse() const;

  friend GroupElement operator*(const GroupElement& x, const GroupElement& y);

 private:
  struct Unchecked {};
  GroupElement(const Matrix& m, Unchecked) : m_(m) {}

  Matrix m_{1.0, 0.0, 0.0, 1.0};
};

// Components of an sl(2,R) element. Upper components N^i pair with the dual
// basis (X = N^i T_i); lower components A_i pair with the generators
// (X = A_i T^i).
struct LieComponents {
  enum class Kind { upper, lower };
  Kind kind = Kind::lower;
  std::array<double, 3> values{};
};

namespace basis {

// Generators T^0, T^1, T^2 of translations, dilations and special conformal
// transformations.
Matrix upper(int i);
// Dual generators T_i = gamma_ij T^j.
Matrix lower(int i);
// gamma^{ij} = 2 tr(T^i T^j) and its inverse gamma_ij.
Matrix3 metric();
Matrix3 inverse_metric();
// The compact rotation generator T^0 + T^2 = (0 -1; 1 0).
Matrix rotation_generator();

}  // namespace basis

Matrix assemble(const LieComponents& comps);
// X = 2 T_i tr(T^i X) for upper components, X = 2 T^i tr(T_i X) for lower.
LieComponents decompose(const Matrix& x, LieComponents::Kind kind);
// N^i A_i for one upper and one lower set of components.
double contract(const LieComponents& upper, const LieComponents& lower);

// Fractional linear action (a f + b)/(c f + d). Coefficients may be constant or
// jets (for t-dependent group elements); f may be a scalar or a jet.
template <class C, class F>
auto mobius_act(const Mat2<C>& g, const F& f) {
  auto num = g.a * f + g.b;
  auto den = g.c * f + g.d;
  const double dv = value_of(den);
  const double scale_ref = std::abs(value_of(g.c * f)) + std::abs(value_of(g.d));
  if (!(std::abs(dv) > 1e-14 * scale_ref) || !std::isfinite(dv))
    throw Error(ErrorKind::mobius_singularity, "c f + d vanishes at the evaluation point");
  return num / den;
}

template <class F>
auto mobius_act(const GroupElement& g, const F& f) {
  return mobius_act(g.matrix(), f);
}

template <class T>
Mat2<T> adjoint_act(const GroupElement& g, const Mat2<T>& x) {
  const Matrix& m = g.matrix();
  const Matrix mi = adjugate(m);
  auto mul_left = [](const Matrix& p, const Mat2<T>& q) -> Mat2<T> {
    return {p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d, p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d};
  };
  auto mul_right = [](const Mat2<T>& q, const Matrix& p) -> Mat2<T> {
    return {q.a * p.a + q.b * p.c, q.a * p.b + q.b * p.d, q.c * p.a + q.d * p.c, q.c * p.b + q.d * p.d};
  };
  return mul_right(mul_left(m, x), mi);
}

// cosh(sqrt z) and sinh(sqrt z)/sqrt z for real z of either sign, with a
// degree-8 Taylor branch for |sqrt z| < 1e-4.
struct CoshSinhc {
  double cosh = 1.0;
  double sinhc = 1.0;
};
CoshSinhc cosh_sinhc(double z);

// Closed-form exponential of a traceless 2x2 matrix:
// cosh(mu) I + sinh(mu)/mu X with mu^2 = -det X, continued to the
// trigonometric branch for mu^2 < 0 and a Taylor branch near mu = 0.
GroupElement exp_sl2(const Matrix& x);
// Same closed form with jet entries (used for t-dependent gauge paths).
JetMatrix exp_sl2(const JetMatrix& x);

// Action of g on upper components (N^0, N^1, N^2) and lower components
// (A_0, A_1, A_2) under X -> g X g^{-1}. Both are invariant under g -> s g and
// accept any g with non-zero determinant.
Matrix3 adjoint_matrix_N(const Matrix& g);
Matrix3 adjoint_matrix_A(const Matrix& g);
std::array<double, 3> apply(const Matrix3& m, const std::array<double, 3>& v);

// Fundamental spinor pair s = (f, 1)/sqrt(f') and row spinor sbar = (-1, f)/sqrt(f'),
// defined for f' > 0. The composite field is s sbar / 2.
struct Spinor {
  std::array<Jet, 2> s;
  std::array<Jet, 2> sbar;
};

Spinor make_spinor(const Jet& fjet);
JetMatrix half_outer(const Spinor& sp);
Jet contraction(const Spinor& sp);

}  // namespace gschw
