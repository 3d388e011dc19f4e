#include "gschw/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "gschw/composite.hpp"
#include "gschw/error.hpp"

namespace gschw {

namespace {

Jet time_jet(double t, int order) {
  if (order == 0) return Jet::constant(t, t, 0);
  return Jet::variable(t, order);
}

JetMatrix times(const Matrix& m, const Jet& s) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }

JetMatrix scale_by(const JetMatrix& x, const Jet& s) { return scale(x, s); }

bool same_period(const std::optional<double>& p, const std::optional<double>& q) {
  return p && q && std::abs(*p - *q) < 1e-12;
}

constexpr double kFormFactorFloor = 1e-12;

}  // namespace

GaugePath GaugePath::constant(const Matrix& a) {
  return GaugePath([a](double t, int order) { return lift(a, t, order); }, kTwoPi);
}

GaugePath GaugePath::constant(const LieComponents& lower) {
  if (lower.kind != LieComponents::Kind::lower)
    throw Error(ErrorKind::invalid_argument, "gauge potentials take lower components A_i");
  return constant(assemble(lower));
}

GaugePath GaugePath::fourier(FourierSeries series) {
  for (int i = 0; i < 3; ++i) {
    series.cos_coeffs[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(series.modes) + 1, 0.0);
    series.sin_coeffs[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(series.modes) + 1, 0.0);
  }
  auto eval = [s = std::move(series)](double t, int order) {
    const Jet tv = time_jet(t, order);
    JetMatrix out = lift(Matrix{}, t, order);
    std::vector<Jet> cosm, sinm;
    for (int m = 1; m <= s.modes; ++m) {
      cosm.push_back(cos(static_cast<double>(m) * tv));
      sinm.push_back(sin(static_cast<double>(m) * tv));
    }
    for (std::size_t i = 0; i < 3; ++i) {
      Jet comp = tv.lift(s.cos_coeffs[i][0]);
      for (std::size_t m = 1; m <= static_cast<std::size_t>(s.modes); ++m)
        comp += s.cos_coeffs[i][m] * cosm[m - 1] + s.sin_coeffs[i][m] * sinm[m - 1];
      out += times(basis::upper(static_cast<int>(i)), comp);
    }
    return out;
  };
  return GaugePath(std::move(eval), kTwoPi);
}

GaugePath GaugePath::polynomial(std::vector<Matrix> coeffs) {
  auto eval = [c = std::move(coeffs)](double t, int order) {
    const Jet tv = time_jet(t, order);
    JetMatrix out = lift(Matrix{}, t, order);
    // Horner in t.
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      out = scale_by(out, tv);
      out += lift(*it, t, order);
    }
    return out;
  };
  return GaugePath(std::move(eval), std::nullopt);
}

GaugePath GaugePath::pure_gauge(const GroupPath& g) {
  auto eval = [g](double t, int order) {
    const JetMatrix gj = g.evaluate(t, order + 1);
    const JetMatrix g0 = truncate(gj, order);
    return differentiate(gj) * adjugate(g0);
  };
  return GaugePath(std::move(eval), g.period());
}

GaugePath GaugePath::scaled(double s) const {
  auto eval = [inner = eval_, s](double t, int order) { return inner(t, order) * s; };
  return GaugePath(std::move(eval), period_);
}

GroupPath GroupPath::constant(const GroupElement& g) {
  const Matrix m = g.matrix();
  return GroupPath([m](double t, int order) { return lift(m, t, order); }, kTwoPi);
}

GroupPath GroupPath::exponential(const GaugePath& generator, std::optional<double> period) {
  return GroupPath([generator](double t, int order) { return exp_sl2(generator.evaluate(t, order)); }, period);
}

GroupPath GroupPath::rotation_loop(int m) {
  const Matrix gen = basis::rotation_generator() * static_cast<double>(m);
  return exponential(GaugePath::polynomial({Matrix{}, gen}), kTwoPi);
}

GroupElement GroupPath::value(double t) const { return GroupElement(values(eval_(t, 0))); }

GroupPath GroupPath::inverse() const {
  return GroupPath([inner = eval_](double t, int order) { return adjugate(inner(t, order)); }, period_);
}

GroupPath GroupPath::operator*(const GroupPath& other) const {
  auto eval = [x = eval_, y = other.eval_](double t, int order) { return x(t, order) * y(t, order); };
  return GroupPath(std::move(eval), same_period(period_, other.period_) ? period_ : std::nullopt);
}

GaugePath gauge_transform(const GroupPath& g, const GaugePath& a) {
  auto eval = [g, a](double t, int order) {
    const JetMatrix gj = g.evaluate(t, order + 1);
    const JetMatrix g0 = truncate(gj, order);
    const JetMatrix gi = adjugate(g0);
    return g0 * a.evaluate(t, order) * gi + differentiate(gj) * gi;
  };
  return GaugePath(std::move(eval), same_period(g.period(), a.period()) ? a.period() : std::nullopt);
}

FieldPath mobius_transform(const GroupPath& g, const FieldPath& f) {
  return FieldPath([g, f](double t, int order) { return mobius_act(g.evaluate(t, order), f.evaluate(t, order)); });
}

GaugeTransformed gauge_transform(const GroupPath& g, const GaugePath& a, const FieldPath& f) {
  return {gauge_transform(g, a), mobius_transform(g, f)};
}

namespace {

struct Gauged {
  JetMatrix fa;
  JetMatrix a;
  Jet form;
};

Gauged gauge_composite_parts(const Jet& fjet, JetMatrix aj) {
  // f_A = M / (2 tr(A M) - 2 f') with M = (f, -f^2; 1, -f), free of 1/f'.
  const Jet fd = fjet.differentiate();
  require_noncritical(fd);
  const Jet f = fjet.truncate(fd.order());
  const JetMatrix m{f, -(f * f), f.lift(1.0), -f};
  const Jet den = trace_pair(aj, m) - 2.0 * fd;
  const Jet form = den / (-2.0 * fd);
  if (!(std::abs(form.value()) > kFormFactorFloor))
    throw Error(ErrorKind::gauge_singular, "1 + 2 tr(A f) vanishes at t = " + std::to_string(fjet.basepoint()));
  return {scale_by(m, 1.0 / den), std::move(aj), form};
}

Gauged gauge_composite_parts(const Jet& fjet, const GaugePath& a) {
  return gauge_composite_parts(fjet, a.evaluate(fjet.basepoint(), fjet.order() - 1));
}

}  // namespace

double covariant_deriv_f(const Jet& fjet, const GaugePath& a) {
  const JetMatrix f = composite_field(fjet).matrix;
  const Matrix av = a.value(fjet.basepoint());
  return fjet.deriv(1) * (1.0 + trace_pair(av, values(f)));
}

double form_factor(const Jet& fjet, const GaugePath& a) {
  const double fd = fjet.deriv(1);
  if (fd == 0.0 || !std::isfinite(fd)) throw Error(ErrorKind::critical_point, "f' vanishes at the evaluation point");
  return covariant_deriv_f(fjet, a) / fd;
}

JetMatrix gauged_composite(const Jet& fjet, const GaugePath& a) { return gauge_composite_parts(fjet, a).fa; }

JetMatrix covariant_derivative(const JetMatrix& x, const JetMatrix& a) {
  const int k = x.a.order() - 1;
  return differentiate(x) - commutator(truncate(a, k), truncate(x, k));
}

double gauged_schwarzian(const Jet& fjet, const GaugePath& a) {
  if (fjet.order() < 4) throw Error(ErrorKind::invalid_argument, "gauged_schwarzian needs a jet of order >= 4");
  // Translate to the frame where f = 0; S[A] is unchanged and the f^2 entries
  // of the composite no longer cancel against each other.
  const double v = fjet.value();
  const GroupElement h(Matrix{1.0, -v, 0.0, 1.0});
  const Gauged g = gauge_composite_parts(fjet - v, adjoint_act(h, a.evaluate(fjet.basepoint(), fjet.order() - 1)));
  const Matrix f0 = deriv(g.fa, 0), f1 = deriv(g.fa, 1), f2 = deriv(g.fa, 2);
  const Matrix a0 = deriv(g.a, 0), a1 = deriv(g.a, 1);
  const Matrix x = f2 - commutator(a1, f0) - commutator(a0, f1) * 2.0 + commutator(a0, commutator(a0, f0));
  return trace(x * x);
}

double constant_gauge_schwarzian(const Jet& fjet, double n) {
  if (fjet.order() < 3) throw Error(ErrorKind::invalid_argument, "closed form needs a jet of order >= 3");
  const double f = fjet.value(), f1 = fjet.deriv(1), f2 = fjet.deriv(2), f3 = fjet.deriv(3);
  const double den = f1 - 2.0 * n * f;
  if (den == 0.0) throw Error(ErrorKind::gauge_singular, "f' - 2 n f vanishes");
  return (f3 + 4.0 * n * n * n * f) / den +
         (-1.5 * f2 * f2 + 6.0 * n * f1 * (f2 - 2.0 * n * f1 + 2.0 * n * n * f)) / (den * den);
}

ExpansionTerms expansion_terms(const Jet& fjet, const GaugePath& a) {
  if (fjet.order() < 4) throw Error(ErrorKind::invalid_argument, "expansion_terms needs a jet of order >= 4");
  const CompositeField cf = composite_field(fjet);
  const Matrix f0 = cf.deriv(0), f2 = cf.deriv(2);
  const JetMatrix aj = a.evaluate(fjet.basepoint(), 1);
  const Matrix a0 = deriv(aj, 0), a1 = deriv(aj, 1);

  // N = f'' + 2 f S.
  const double s = trace(f2 * f2);
  const Matrix n = f2 + f0 * (2.0 * s);

  const double tr_fa1 = trace(f0 * a1);
  const double tr_fa = trace(f0 * a0);
  return {trace_pair(n, a0),
          -2.0 * tr_fa1 * tr_fa1 + 4.0 * trace(f0 * a0 * a1) - 4.0 * tr_fa * tr_fa * s - 2.0 * trace(a0 * a0)};
}

namespace {

void require_steps(int steps) {
  if (steps < 2) throw Error(ErrorKind::invalid_argument, "holonomy needs at least 2 steps");
}

std::vector<Matrix> running_products(const GaugePath& a, Interval iv, int steps) {
  require_steps(steps);
  const double h = (iv.end - iv.begin) / steps;
  std::vector<Matrix> nodes;
  nodes.reserve(static_cast<std::size_t>(steps) + 1);
  Matrix p = identity_matrix();
  nodes.push_back(p);
  for (int i = 0; i < steps; ++i) {
    const double mid = iv.begin + (i + 0.5) * h;
    p = p * exp_sl2(a.value(mid) * -h).matrix();
    nodes.push_back(p);
  }
  return nodes;
}

// Taylor coefficients (as matrices) of U with U' = -U A, U(t) = u0, where the
// coefficients of A are read from its jet at t.
std::vector<Matrix> flow_coefficients(const Matrix& u0, const JetMatrix& aj) {
  const int order = aj.a.order();
  std::vector<Matrix> ak(static_cast<std::size_t>(order) + 1);
  for (std::size_t k = 0; k < ak.size(); ++k) ak[k] = {aj.a[k], aj.b[k], aj.c[k], aj.d[k]};
  std::vector<Matrix> u(static_cast<std::size_t>(order) + 1);
  u[0] = u0;
  for (std::size_t k = 0; k + 1 < u.size(); ++k) {
    Matrix s{};
    for (std::size_t j = 0; j <= k; ++j) s += u[j] * ak[k - j];
    u[k + 1] = s * (-1.0 / static_cast<double>(k + 1));
  }
  return u;
}

Matrix flow(const GaugePath& a, Matrix u, double from, double to) {
  constexpr double kMaxSubstep = 0.05;
  constexpr int kTaylorOrder = 20;
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(to - from) / kMaxSubstep)));
  const double h = (to - from) / pieces;
  for (int p = 0; p < pieces; ++p) {
    const double s = from + p * h;
    const auto coeffs = flow_coefficients(u, a.evaluate(s, kTaylorOrder));
    Matrix acc = coeffs.back();
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) acc = acc * h + *it;
    u = acc;
  }
  return u;
}

}  // namespace

GroupElement holonomy(const GaugePath& a, Interval interval, int steps) {
  return GroupElement(running_products(a, interval, steps).back());
}

GroupPath trivializing_gauge(const GaugePath& a, Interval interval, int steps) {
  auto nodes = std::make_shared<const std::vector<Matrix>>(running_products(a, interval, steps));
  const double h = (interval.end - interval.begin) / steps;
  auto eval = [a, nodes, h, interval, steps](double t, int order) {
    const long i = std::clamp(static_cast<long>(std::floor((t - interval.begin) / h)), 0L, static_cast<long>(steps));
    const double ti = interval.begin + static_cast<double>(i) * h;
    const Matrix u = flow(a, (*nodes)[static_cast<std::size_t>(i)], ti, t);
    const auto c = flow_coefficients(u, a.evaluate(t, order));
    std::vector<double> ca, cb, cc, cd;
    for (const Matrix& m : c) {
      ca.push_back(m.a);
      cb.push_back(m.b);
      cc.push_back(m.c);
      cd.push_back(m.d);
    }
    return JetMatrix{Jet(t, std::move(ca)), Jet(t, std::move(cb)), Jet(t, std::move(cc)), Jet(t, std::move(cd))};
  };
  return GroupPath(std::move(eval), std::nullopt);
}

double rotation_angle(const Matrix& g) { return std::atan2(g.c, g.a); }

WindingResult winding(const GaugePath& a, const std::optional<GroupPath>& h0, const WindingOptions& opts) {
  if (!a.period() || std::abs(*a.period() - kTwoPi) > 1e-12)
    throw Error(ErrorKind::not_a_loop, "gauge potential is not declared 2 pi periodic");
  const double mismatch = max_abs(a.value(kTwoPi) - a.value(0.0));
  if (!(mismatch <= opts.periodicity_tolerance))
    throw Error(ErrorKind::not_a_loop, "A(2 pi) differs from A(0) by " + std::to_string(mismatch));
  require_steps(opts.steps);

  WindingResult out;
  const GaugePath framed = h0 ? gauge_transform(*h0, a) : a;
  const Matrix t_1 = basis::lower(1);
  double sum = 0.0;
  for (int i = 0; i < opts.steps; ++i) sum += trace(t_1 * framed.value(kTwoPi * i / opts.steps));
  out.paper_value = 2.0 * sum / opts.steps;

  const auto nodes = running_products(a, Interval{0.0, kTwoPi}, opts.steps);
  out.holonomy = GroupElement(nodes.back());
  out.closure_error = max_abs(nodes.back() - identity_matrix());
  out.trivializable = out.closure_error <= opts.closure_tolerance;
  if (out.trivializable) {
    double total = 0.0;
    double prev = rotation_angle(adjugate(nodes.front()));
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      const double cur = rotation_angle(adjugate(nodes[i]));
      total += std::remainder(cur - prev, kTwoPi);
      prev = cur;
    }
    out.angle_lift = static_cast<int>(std::lround(total / kTwoPi));
  }
  return out;
}

}  // namespace gschw
