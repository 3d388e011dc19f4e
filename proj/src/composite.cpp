#include "gschw/composite.hpp"

#include <algorithm>
#include <cmath>

#include "gschw/error.hpp"

namespace gschw {

void require_noncritical(const Jet& fdot) {
  const double v = fdot.value();
  if (v == 0.0 || !std::isfinite(v)) throw Error(ErrorKind::critical_point, "f' vanishes at the basepoint");
}

namespace {

void require_order(const Jet& fjet, int needed, const char* what) {
  if (fjet.order() < needed)
    throw Error(ErrorKind::invalid_argument, std::string(what) + " needs a jet of order >= " +
                                                 std::to_string(needed) + ", got " + std::to_string(fjet.order()));
}

double normalized(double residual, double scale) { return std::abs(residual) / std::max(1.0, scale); }

}  // namespace

CompositeField composite_field(const Jet& fjet) {
  require_order(fjet, 1, "composite_field");
  const Jet fd = fjet.differentiate();
  require_noncritical(fd);
  const Jet f = fjet.truncate(fd.order());
  const Jet pref = -0.5 / fd;
  return {{pref * f, -(pref * (f * f)), pref, -(pref * f)}};
}

double schwarzian_direct(const Jet& fjet) {
  require_order(fjet, 3, "schwarzian_direct");
  const double f1 = fjet.deriv(1), f2 = fjet.deriv(2), f3 = fjet.deriv(3);
  if (f1 == 0.0 || !std::isfinite(f1)) throw Error(ErrorKind::critical_point, "f' vanishes at the basepoint");
  const double r = f2 / f1;
  return f3 / f1 - 1.5 * r * r;
}

Jet schwarzian_jet(const Jet& fjet) {
  require_order(fjet, 3, "schwarzian_jet");
  const Jet d1 = fjet.differentiate();
  require_noncritical(d1);
  const Jet d2 = d1.differentiate();
  const Jet d3 = d2.differentiate();
  const int k = d3.order();
  const Jet f1 = d1.truncate(k), f2 = d2.truncate(k);
  const Jet r = f2 / f1;
  return d3 / f1 - 1.5 * (r * r);
}

double schwarzian_via_trace(const Jet& fjet) {
  require_order(fjet, 4, "schwarzian_via_trace");
  const Matrix f2 = composite_field(fjet).deriv(2);
  return trace(f2 * f2);
}

ScaledValue trace_product(const Matrix& x, const Matrix& y) {
  const double p0 = x.a * y.a, p1 = x.b * y.c, p2 = x.c * y.b, p3 = x.d * y.d;
  return {p0 + p1 + p2 + p3, std::max({std::abs(p0), std::abs(p1), std::abs(p2), std::abs(p3)})};
}

double IdentityReport::max() const {
  double m = 0.0;
  for (const auto& r : residuals) m = std::max(m, r.value);
  return m;
}

double IdentityReport::get(const std::string& name) const {
  for (const auto& r : residuals)
    if (r.name == name) return r.value;
  throw Error(ErrorKind::invalid_argument, "no residual named " + name);
}

IdentityReport identity_suite(const Jet& fjet) {
  require_order(fjet, 6, "identity_suite");
  const CompositeField cf = composite_field(fjet);
  Matrix m[6];
  for (int k = 0; k <= 5; ++k) m[k] = cf.deriv(k);

  const Jet sj = schwarzian_jet(fjet);
  const double s = sj.value();
  const double ds = sj.deriv(1);

  IdentityReport rep;
  auto push = [&rep](const char* name, double residual, double scale) {
    rep.residuals.push_back({name, normalized(residual, scale)});
  };
  auto zero_trace = [&](const char* name, int i, int j) {
    const auto tp = trace_product(m[i], m[j]);
    push(name, tp.value, tp.scale);
  };
  auto trace_equals = [&](const char* name, int i, int j, double rhs) {
    const auto tp = trace_product(m[i], m[j]);
    push(name, tp.value - rhs, std::max(tp.scale, std::abs(rhs)));
  };

  {
    const Matrix sq = m[0] * m[0];
    double scale = 0.0;
    for (double e : {m[0].a, m[0].b, m[0].c, m[0].d}) scale = std::max(scale, e * e);
    push("nilpotent f^2", max_abs(sq), scale);
  }
  zero_trace("tr f f", 0, 0);
  zero_trace("tr f f'", 0, 1);
  zero_trace("tr f' f''", 1, 2);
  zero_trace("tr f''' f", 3, 0);
  trace_equals("tr f'^2 = 1/2", 1, 1, 0.5);
  trace_equals("tr f f'' = -1/2", 0, 2, -0.5);
  trace_equals("tr f''^2 = S", 2, 2, s);
  trace_equals("tr f'''' f = S", 4, 0, s);
  trace_equals("tr f'''' f' = -3/2 S'", 4, 1, -1.5 * ds);
  trace_equals("tr f''''' f = 5/2 S'", 5, 0, 2.5 * ds);

  {
    const Matrix t1 = commutator(m[0], m[3]);
    const Matrix t2 = commutator(m[1], m[2]);
    const Matrix t3 = m[0] * (4.0 * s);
    const Matrix r = m[2] - t1 + t2 + t3;
    const double scale = std::max({max_abs(m[2]), max_abs(t1), max_abs(t2), max_abs(t3)});
    push("f'' - [f,f'''] + [f',f''] + 4 f S", max_abs(r), scale);
  }
  return rep;
}

}  // namespace gschw
