#include "gschw/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "gschw/composite.hpp"
#include "gschw/error.hpp"

namespace gschw {

void SolutionFamily::validate() const {
  const double dt = a * d - b * c;
  if (dt == 0.0 || !std::isfinite(dt))
    throw Error(ErrorKind::degenerate, "family coefficients have ad - bc = 0");
  if (!std::isfinite(qsq)) throw Error(ErrorKind::invalid_argument, "q^2 is not finite");
}

namespace {

Jet ratio_or_pole(const Jet& num, const Jet& p, const Jet& r, double t) {
  const Jet den = p + r;
  const double ref = std::abs(p.value()) + std::abs(r.value());
  if (!(std::abs(den.value()) > 1e-14 * ref)) {
    std::ostringstream os;
    os << "denominator vanishes at t = " << t;
    throw Error(ErrorKind::pole, os.str());
  }
  return num / den;
}

}  // namespace

Jet family_eval(const SolutionFamily& fam, double t, int order) {
  fam.validate();
  const Jet tv = Jet::variable(t, order);
  if (std::abs(fam.qsq) < SolutionFamily::kLimitThreshold) {
    return ratio_or_pole(fam.a * tv + fam.b, fam.c * tv, tv.lift(fam.d), t);
  }
  if (fam.qsq > 0.0) {
    const double half_q = 0.5 * std::sqrt(fam.qsq);
    const Jet e = exp(half_q * tv);
    const Jet ei = exp(-half_q * tv);
    return ratio_or_pole(fam.a * e + fam.b * ei, fam.c * e, fam.d * ei, t);
  }
  const double half_w = 0.5 * std::sqrt(-fam.qsq);
  const Jet co = cos(half_w * tv);
  const Jet si = sin(half_w * tv);
  return ratio_or_pole(fam.a * co + fam.b * si, fam.c * co, fam.d * si, t);
}

double schwarzian_from_derivatives(double f1, double f2, double f3) {
  if (f1 == 0.0 || !std::isfinite(f1)) throw Error(ErrorKind::critical_point, "f' vanishes");
  const double r = f2 / f1;
  return f3 / f1 - 1.5 * r * r;
}

std::array<double, 3> charges_from_derivatives(double f, double f1, double f2, double f3) {
  if (f1 == 0.0 || !std::isfinite(f1)) throw Error(ErrorKind::critical_point, "f' vanishes");
  const double r = f2 / f1;
  const double n0 = (f3 - f2 * r) / (f1 * f1);
  return {n0, n0 * f - r, n0 * f * f - 2.0 * r * f + 2.0 * f1};
}

double eom_residual(const Jet& fjet) {
  if (fjet.order() < 4) throw Error(ErrorKind::invalid_argument, "eom_residual needs a jet of order >= 4");
  const Jet d1 = fjet.differentiate();
  require_noncritical(d1);
  const Jet d2 = d1.differentiate();
  const Jet d3 = d2.differentiate();
  const int k = d3.order();
  const Jet f1 = d1.truncate(k), f2 = d2.truncate(k);
  const Jet n0 = (d3 - f2 * f2 / f1) / (f1 * f1);
  return n0.deriv(1);
}

Charges noether_charges(const Jet& fjet) {
  if (fjet.order() < 3) throw Error(ErrorKind::invalid_argument, "noether_charges needs a jet of order >= 3");
  const auto n = charges_from_derivatives(fjet.value(), fjet.deriv(1), fjet.deriv(2), fjet.deriv(3));
  const CompositeField cf = composite_field(fjet);
  const Matrix f0 = cf.deriv(0);
  const Matrix f2 = cf.deriv(2);
  return {n[0], n[1], n[2], f2 + f0 * (2.0 * schwarzian_direct(fjet))};
}

std::array<double, 3> family_charges(const SolutionFamily& fam) {
  fam.validate();
  if (!(fam.qsq > 0.0))
    throw Error(ErrorKind::invalid_argument, "closed-form family charges need q^2 > 0");
  const double q = std::sqrt(fam.qsq);
  const double dt = fam.a * fam.d - fam.b * fam.c;
  return {-2.0 * fam.c * fam.d * q / dt, -(fam.a * fam.d + fam.b * fam.c) * q / dt, -2.0 * fam.a * fam.b * q / dt};
}

double coupling(const Charges& n, const LieComponents& a) { return contract(n.components(), a); }

double Trajectory::charge_drift() const {
  if (samples.empty()) return 0.0;
  const auto& s0 = samples.front();
  double m = 0.0;
  for (const auto& s : samples)
    m = std::max({m, std::abs(s.N0 - s0.N0), std::abs(s.N1 - s0.N1), std::abs(s.N2 - s0.N2)});
  return m;
}

double Trajectory::schwarzian_drift() const {
  if (samples.empty()) return 0.0;
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, std::abs(s.schwarzian - samples.front().schwarzian));
  return m;
}

void Grid::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::invalid_argument, "grid step must be positive");
  if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1))
    throw Error(ErrorKind::invalid_argument, "grid end must exceed grid start");
}

std::size_t Grid::steps() const {
  validate();
  return static_cast<std::size_t>(std::ceil((t1 - t0) / dt - 1e-9));
}

namespace {

double trapezoid_increment(double h, double ex0, double ex1) { return 0.5 * h * (ex0 + ex1); }

// Fornberg weights at 0 for derivative orders 0..m on the nodes x.
std::vector<std::vector<double>> fd_weights(const std::vector<double>& x, int m) {
  const std::size_t n = x.size();
  std::vector<std::vector<double>> c(static_cast<std::size_t>(m) + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0, c4 = x[0];
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i];
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

double grid_time(const Grid& g, std::size_t i, std::size_t n) {
  return i == n ? g.t1 : g.t0 + static_cast<double>(i) * g.dt;
}

TrajectorySample annotate(double t, double f, double f1, double f2, double f3) {
  const auto n = charges_from_derivatives(f, f1, f2, f3);
  return {t, f, f1, f2, f3, n[0], n[1], n[2], schwarzian_from_derivatives(f1, f2, f3)};
}

using State4 = std::array<double, 4>;

State4 schwarzian_rhs(const State4& y) {
  const double r = y[2] / y[1];
  return {y[1], y[2], y[3], 4.0 * r * y[3] - 3.0 * r * r * y[2]};
}

template <std::size_t N, class Rhs>
std::array<double, N> rk4_step(const std::array<double, N>& y, double h, Rhs&& rhs) {
  auto axpy = [](const std::array<double, N>& base, const std::array<double, N>& k, double s) {
    std::array<double, N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = base[i] + s * k[i];
    return r;
  };
  const auto k1 = rhs(y);
  const auto k2 = rhs(axpy(y, k1, 0.5 * h));
  const auto k3 = rhs(axpy(y, k2, 0.5 * h));
  const auto k4 = rhs(axpy(y, k3, h));
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

void check_state(const State4& y, double t, const IntegratorOptions& opts) {
  for (const double v : y)
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "state diverges (pole of f) at t = " << t;
      throw Error(ErrorKind::blow_up, os.str());
    }
  const double fdot = y[1];
  if (!(std::abs(fdot) >= opts.fdot_floor)) {
    std::ostringstream os;
    os << "|f'| = " << std::abs(fdot) << " below floor " << opts.fdot_floor << " at t = " << t;
    throw Error(ErrorKind::approaching_critical_point, os.str());
  }
}

}  // namespace

Trajectory integrate_schwarzian(const std::array<double, 4>& init, const Grid& grid, const IntegratorOptions& opts) {
  const std::size_t n = grid.steps();
  Trajectory traj;
  traj.samples.reserve(n + 1);
  State4 y = init;
  double t = grid.t0;
  check_state(y, t, opts);
  traj.samples.push_back(annotate(t, y[0], y[1], y[2], y[3]));
  for (std::size_t i = 1; i <= n; ++i) {
    const double tn = grid_time(grid, i, n);
    y = rk4_step(y, tn - t, schwarzian_rhs);
    t = tn;
    check_state(y, t, opts);
    traj.samples.push_back(annotate(t, y[0], y[1], y[2], y[3]));
  }
  return traj;
}

FirstOrderTrajectory integrate_first_order(double x0, double v0, double lambda, const Grid& grid,
                                           const IntegratorOptions& opts) {
  const std::size_t n = grid.steps();
  FirstOrderTrajectory out;
  out.trajectory.samples.reserve(n + 1);
  out.states.reserve(n + 1);

  auto record = [&](double t, double x, double v, double f) {
    if (!(x <= opts.x_max) || !std::isfinite(v)) {
      std::ostringstream os;
      os << "x = " << x << " exceeds bound " << opts.x_max << " at t = " << t;
      throw Error(ErrorKind::blow_up, os.str());
    }
    const double ex = std::exp(x);
    out.states.push_back({x, v, f, lambda});
    out.trajectory.samples.push_back(annotate(t, f, ex, v * ex, (lambda * ex + v * v) * ex));
  };

  std::array<double, 2> y{x0, v0};
  auto rhs = [lambda](const std::array<double, 2>& s) { return std::array<double, 2>{s[1], lambda * std::exp(s[0])}; };
  double t = grid.t0;
  double f = opts.f_initial;
  record(t, y[0], y[1], f);
  for (std::size_t i = 1; i <= n; ++i) {
    const double tn = grid_time(grid, i, n);
    const double h = tn - t;
    const double ex_prev = std::exp(y[0]);
    y = rk4_step(y, h, rhs);
    t = tn;
    f += trapezoid_increment(h, ex_prev, std::exp(y[0]));
    record(t, y[0], y[1], f);
  }
  return out;
}

double closed_form_x(double x0, double v0, double lambda, double t) {
  const double qsq = v0 * v0 - 2.0 * lambda * std::exp(x0);
  const auto [ch, sinhc] = cosh_sinhc(0.25 * qsq * t * t);
  const double arg = ch - v0 * 0.5 * t * sinhc;
  if (!(arg > 0.0)) {
    std::ostringstream os;
    os << "closed-form solution diverges before t = " << t;
    throw Error(ErrorKind::blow_up, os.str());
  }
  return x0 - 2.0 * std::log(arg);
}

Jet rejet_sample(const Trajectory& traj, std::size_t i, double dt) {
  const auto& s = traj.samples;
  if (i < 2 || i + 2 >= s.size()) throw Error(ErrorKind::invalid_argument, "re-jet needs two neighbours per side");
  const double f4 = (-s[i + 2].f3 + 8.0 * s[i + 1].f3 - 8.0 * s[i - 1].f3 + s[i - 2].f3) / (12.0 * dt);
  return Jet(s[i].t, {s[i].f, s[i].f1, s[i].f2 / 2.0, s[i].f3 / 6.0, f4 / 24.0});
}

Jet rejet_from_values(const Trajectory& traj, std::size_t i, double dt, int stride) {
  const auto& s = traj.samples;
  const std::size_t k = static_cast<std::size_t>(stride);
  if (stride < 1 || i < 3 * k || i + 3 * k >= s.size())
    throw Error(ErrorKind::invalid_argument, "re-jet stencil leaves the trajectory");
  const double h = dt * stride;
  auto f = [&](int m) { return s[static_cast<std::size_t>(static_cast<long>(i) + m * stride)].f; };
  const double d1 = (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * h);
  const double d2 = (-f(2) + 16.0 * f(1) - 30.0 * f(0) + 16.0 * f(-1) - f(-2)) / (12.0 * h * h);
  const double d3 = (-f(3) + 8.0 * f(2) - 13.0 * f(1) + 13.0 * f(-1) - 8.0 * f(-2) + f(-3)) / (8.0 * h * h * h);
  return Jet(s[i].t, {f(0), d1, d2 / 2.0, d3 / 6.0});
}

Jet rejet_quadrature(const FirstOrderTrajectory& fo, std::size_t i, int stride) {
  constexpr int kHalf = 5;
  const auto& s = fo.trajectory.samples;
  const std::size_t reach = static_cast<std::size_t>(kHalf) * static_cast<std::size_t>(std::max(stride, 1));
  if (stride < 1 || fo.states.size() != s.size() || i < reach || i + reach >= s.size())
    throw Error(ErrorKind::invalid_argument, "re-jet stencil leaves the trajectory");
  auto inc = [&](std::size_t k) {
    return trapezoid_increment(s[k + 1].t - s[k].t, std::exp(fo.states[k].x), std::exp(fo.states[k + 1].x));
  };
  // f(t_j) - f(t_i) summed from the quadrature increments.
  std::vector<double> nodes, values;
  for (int m = -kHalf; m <= kHalf; ++m) {
    const std::size_t j = static_cast<std::size_t>(static_cast<long>(i) + static_cast<long>(m) * stride);
    double g = 0.0;
    for (std::size_t k = std::min(i, j); k < std::max(i, j); ++k) g += inc(k);
    values.push_back(j < i ? -g : g);
    nodes.push_back(s[j].t - s[i].t);
  }
  const auto w = fd_weights(nodes, 3);
  std::array<double, 4> d{};
  for (int k = 1; k <= 3; ++k)
    for (std::size_t j = 0; j < nodes.size(); ++j) d[k] += w[k][j] * values[j];
  return Jet(s[i].t, {s[i].f, d[1], d[2] / 2.0, d[3] / 6.0});
}

}  // namespace gschw
