#include "gschw/sl2.hpp"

#include <algorithm>
#include <cmath>

namespace gschw {

JetMatrix lift(const Matrix& m, double t0, int order) {
  return {Jet::constant(m.a, t0, order), Jet::constant(m.b, t0, order), Jet::constant(m.c, t0, order),
          Jet::constant(m.d, t0, order)};
}

Matrix values(const JetMatrix& m) { return {m.a.value(), m.b.value(), m.c.value(), m.d.value()}; }

JetMatrix differentiate(const JetMatrix& m) {
  return {m.a.differentiate(), m.b.differentiate(), m.c.differentiate(), m.d.differentiate()};
}

JetMatrix truncate(const JetMatrix& m, int order) {
  return {m.a.truncate(order), m.b.truncate(order), m.c.truncate(order), m.d.truncate(order)};
}

Matrix deriv(const JetMatrix& m, int k) { return {m.a.deriv(k), m.b.deriv(k), m.c.deriv(k), m.d.deriv(k)}; }

double max_abs(const Matrix& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

Matrix identity_matrix() { return {1.0, 0.0, 0.0, 1.0}; }

GroupElement::GroupElement(const Matrix& m) : m_(m) {
  const double dt = det(m);
  if (!(std::abs(dt - 1.0) <= kDetTolerance))
    throw Error(ErrorKind::invalid_argument, "group element determinant " + std::to_string(dt) + " is not 1");
}

GroupElement GroupElement::inverse() const { return GroupElement(adjugate(m_), Unchecked{}); }

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
  return GroupElement(x.m_ * y.m_, GroupElement::Unchecked{});
}

namespace basis {

Matrix upper(int i) {
  switch (i) {
    case 0: return {0.0, -1.0, 0.0, 0.0};
    case 1: return {-0.5, 0.0, 0.0, 0.5};
    case 2: return {0.0, 0.0, 1.0, 0.0};
    default: throw Error(ErrorKind::invalid_argument, "basis index out of range");
  }
}

Matrix lower(int i) {
  switch (i) {
    case 0: return upper(2) * -0.5;
    case 1: return upper(1);
    case 2: return upper(0) * -0.5;
    default: throw Error(ErrorKind::invalid_argument, "basis index out of range");
  }
}

Matrix3 metric() { return {{{0.0, 0.0, -2.0}, {0.0, 1.0, 0.0}, {-2.0, 0.0, 0.0}}}; }

Matrix3 inverse_metric() { return {{{0.0, 0.0, -0.5}, {0.0, 1.0, 0.0}, {-0.5, 0.0, 0.0}}}; }

Matrix rotation_generator() { return upper(0) + upper(2); }

}  // namespace basis

Matrix assemble(const LieComponents& comps) {
  Matrix x{};
  for (int i = 0; i < 3; ++i) {
    const Matrix t = comps.kind == LieComponents::Kind::upper ? basis::lower(i) : basis::upper(i);
    x += t * comps.values[static_cast<std::size_t>(i)];
  }
  return x;
}

LieComponents decompose(const Matrix& x, LieComponents::Kind kind) {
  LieComponents out{kind, {}};
  for (int i = 0; i < 3; ++i) {
    const Matrix t = kind == LieComponents::Kind::upper ? basis::upper(i) : basis::lower(i);
    out.values[static_cast<std::size_t>(i)] = trace_pair(t, x);
  }
  return out;
}

double contract(const LieComponents& upper, const LieComponents& lower) {
  if (upper.kind != LieComponents::Kind::upper || lower.kind != LieComponents::Kind::lower)
    throw Error(ErrorKind::invalid_argument, "contraction needs one upper and one lower component set");
  return upper.values[0] * lower.values[0] + upper.values[1] * lower.values[1] + upper.values[2] * lower.values[2];
}

namespace {

constexpr double kSeriesMu = 1e-4;

}  // namespace

CoshSinhc cosh_sinhc(double z) {
  double ch = 0.0, sh_over = 0.0;
  if (std::abs(z) < kSeriesMu * kSeriesMu) {
    // Degree-8 Taylor polynomials in mu.
    ch = 1.0 + z / 2.0 * (1.0 + z / 12.0 * (1.0 + z / 30.0 * (1.0 + z / 56.0)));
    sh_over = 1.0 + z / 6.0 * (1.0 + z / 20.0 * (1.0 + z / 42.0 * (1.0 + z / 72.0)));
  } else if (z > 0.0) {
    const double mu = std::sqrt(z);
    ch = std::cosh(mu);
    sh_over = std::sinh(mu) / mu;
  } else {
    const double w = std::sqrt(-z);
    ch = std::cos(w);
    sh_over = std::sin(w) / w;
  }
  return {ch, sh_over};
}

GroupElement exp_sl2(const Matrix& x) {
  const auto [ch, sh] = cosh_sinhc(-det(x));
  Matrix m = identity_matrix() * ch + x * sh;
  // Remove the rounding drift of det = cosh^2 - sinh^2 for large arguments.
  const double dt = det(m);
  if (dt > 0.0) m = m / std::sqrt(dt);
  return GroupElement(m);
}

JetMatrix exp_sl2(const JetMatrix& x) {
  const Jet z = -det(x);
  Jet ch, sh;
  if (std::abs(z.value()) < 0.25) {
    // The series in z converges for any z; near z = 0 sqrt(z) is not smooth so
    // the jet cannot go through cosh(sqrt z).
    constexpr int terms = 18;
    ch = z.lift(1.0);
    sh = z.lift(1.0);
    for (int n = terms; n >= 1; --n) {
      ch = 1.0 + z * ch / static_cast<double>((2 * n) * (2 * n - 1));
      sh = 1.0 + z * sh / static_cast<double>((2 * n + 1) * (2 * n));
    }
  } else if (z.value() > 0.0) {
    const Jet mu = sqrt(z);
    ch = cosh(mu);
    sh = sinh(mu) / mu;
  } else {
    const Jet w = sqrt(-z);
    ch = cos(w);
    sh = sin(w) / w;
  }
  return {ch + sh * x.a, sh * x.b, sh * x.c, ch + sh * x.d};
}

Matrix3 adjoint_matrix_N(const Matrix& g) {
  const auto [a, b, c, d] = g;
  const double dt = a * d - b * c;
  if (dt == 0.0) throw Error(ErrorKind::invalid_argument, "adjoint matrix of a singular g");
  return {{{d * d / dt, 2.0 * c * d / dt, c * c / dt},
           {b * d / dt, (a * d + b * c) / dt, a * c / dt},
           {b * b / dt, 2.0 * a * b / dt, a * a / dt}}};
}

Matrix3 adjoint_matrix_A(const Matrix& g) {
  const auto [a, b, c, d] = g;
  const double dt = a * d - b * c;
  if (dt == 0.0) throw Error(ErrorKind::invalid_argument, "adjoint matrix of a singular g");
  return {{{a * a / dt, -a * b / dt, b * b / dt},
           {-2.0 * a * c / dt, (a * d + b * c) / dt, -2.0 * b * d / dt},
           {c * c / dt, -c * d / dt, d * d / dt}}};
}

std::array<double, 3> apply(const Matrix3& m, const std::array<double, 3>& v) {
  std::array<double, 3> r{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r[i] += m[i][j] * v[j];
  return r;
}

Spinor make_spinor(const Jet& fjet) {
  const Jet fd = fjet.differentiate();
  if (!(fd.value() > 0.0)) throw Error(ErrorKind::invalid_argument, "spinors need f' > 0");
  const Jet f = fjet.truncate(fd.order());
  const Jet inv_root = 1.0 / sqrt(fd);
  return {{f * inv_root, inv_root}, {-inv_root, f * inv_root}};
}

JetMatrix half_outer(const Spinor& sp) {
  return {0.5 * (sp.s[0] * sp.sbar[0]), 0.5 * (sp.s[0] * sp.sbar[1]), 0.5 * (sp.s[1] * sp.sbar[0]),
          0.5 * (sp.s[1] * sp.sbar[1])};
}

Jet contraction(const Spinor& sp) { return sp.sbar[0] * sp.s[0] + sp.sbar[1] * sp.s[1]; }

}  // namespace gschw
