#pragma once

#include <array>
#include <vector>

#include "gschw/jet.hpp"
#include "gschw/sl2.hpp"

namespace gschw {

// Exact solutions of the free Schwarzian equation of motion. q is stored as
// q^2 so that the hyperbolic (q^2 > 0), trigonometric (q^2 < 0) and Möbius-of-t
// (|q^2| below kLimitThreshold) branches are explicit:
//   q^2 > 0:  (a E + b/E)/(c E + d/E),  E = exp(q t / 2)
//   q^2 < 0:  (a cos w + b sin w)/(c cos w + d sin w),  w = |q| t / 2
//   q^2 ~ 0:  (a t + b)/(c t + d)
struct SolutionFamily {
  static constexpr double kLimitThreshold = 1e-10;

  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  double qsq = 0.0;

  // Throws ErrorKind::degenerate when ad - bc = 0.
  void validate() const;
  // On-shell Schwarzian, -q^2/2.
  double schwarzian() const { return -0.5 * qsq; }
};

Jet family_eval(const SolutionFamily& fam, double t, int order = kDefaultJetOrder);

struct Charges {
  double N0 = 0.0, N1 = 0.0, N2 = 0.0;
  // N = N^i T_i = f'' + 2 f S for the composite field f.
  Matrix matrix;

  LieComponents components() const { return {LieComponents::Kind::upper, {N0, N1, N2}}; }
};

// d/dt (f'''/f'^2 - f''^2/f'^3); needs order >= 4.
double eom_residual(const Jet& fjet);
Charges noether_charges(const Jet& fjet);
// Charges from point values of f and its first three derivatives.
std::array<double, 3> charges_from_derivatives(double f, double f1, double f2, double f3);
double schwarzian_from_derivatives(double f1, double f2, double f3);

// On-shell charges of the hyperbolic family,
// (-2cd, -(ad+bc), -2ab) q / (ad - bc), with q = +sqrt(q^2).
std::array<double, 3> family_charges(const SolutionFamily& fam);

// N^i A_i for upper charges and lower gauge components.
double coupling(const Charges& n, const LieComponents& a);

struct TrajectorySample {
  double t = 0.0;
  double f = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0;
  double N0 = 0.0, N1 = 0.0, N2 = 0.0;
  double schwarzian = 0.0;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;

  // max over samples of |N^i(t) - N^i(t0)| across all three components.
  double charge_drift() const;
  double schwarzian_drift() const;
};

struct Grid {
  double t0 = 0.0;
  double t1 = 1.0;
  double dt = 1e-3;

  void validate() const;
  std::size_t steps() const;
};

struct IntegratorOptions {
  double fdot_floor = 1e-8;
  // Largest admissible x in the first-order system (e^x must stay finite).
  double x_max = 600.0;
  // Integration constant: f(t0) for the quadrature of e^x.
  double f_initial = 0.0;
};

// Fixed-step RK4 on (f, f', f'', f''') with f'''' from dS/dt = 0.
Trajectory integrate_schwarzian(const std::array<double, 4>& init, const Grid& grid,
                                const IntegratorOptions& opts = {});

struct FirstOrderState {
  double x = 0.0;
  double v = 0.0;
  double f = 0.0;
  double lambda = 0.0;
};

struct FirstOrderTrajectory {
  Trajectory trajectory;
  std::vector<FirstOrderState> states;
};

// RK4 for x'' = lambda e^x; f recovered by trapezoid quadrature of e^x.
FirstOrderTrajectory integrate_first_order(double x0, double v0, double lambda, const Grid& grid,
                                           const IntegratorOptions& opts = {});

// x(t) = x0 - 2 log(cosh(q t/2) - v0 sinh(q t/2)/q), q^2 = v0^2 - 2 lambda e^x0,
// continued to imaginary q and to q -> 0. Throws blow-up when the argument of
// the log is not positive.
double closed_form_x(double x0, double v0, double lambda, double t);

// Re-jet sample i of a trajectory: coefficients up to f''' from the stored
// derivatives and f'''' from a central finite difference of the stored f'''.
Jet rejet_sample(const Trajectory& traj, std::size_t i, double dt);
// Jet of order 3 at sample i from finite differences of the stored f column.
Jet rejet_from_values(const Trajectory& traj, std::size_t i, double dt, int stride = 10);
// Jet of order 3 at sample i of a first-order run: derivatives of the
// quadrature f from an 11-point stencil, with f(t_j) - f(t_i) summed from the
// trapezoid increments rather than differenced from the stored column.
Jet rejet_quadrature(const FirstOrderTrajectory& fo, std::size_t i, int stride = 20);

}  // namespace gschw
