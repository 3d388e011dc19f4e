#pragma once

#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gschw/jet.hpp"
#include "gschw/sl2.hpp"

namespace gschw {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Scalar field f(t) that can be expanded to any order at any t.
class FieldPath {
 public:
  using Evaluator = std::function<Jet(double t, int order)>;

  FieldPath() = default;
  explicit FieldPath(Evaluator eval) : eval_(std::move(eval)) {}

  Jet evaluate(double t, int order) const { return eval_(t, order); }

 private:
  Evaluator eval_;
};

// Per-component Fourier data for lower components A_i:
// A_i(t) = cos_coeffs[i][0] + sum_m cos_coeffs[i][m] cos(m t) + sin_coeffs[i][m] sin(m t).
struct FourierSeries {
  int modes = 0;
  std::array<std::vector<double>, 3> cos_coeffs;
  std::array<std::vector<double>, 3> sin_coeffs;
};

class GroupPath;

// sl(2,R)-valued function of t evaluated as a matrix of jets. Also used for
// generator paths of group-valued functions.
class GaugePath {
 public:
  using Evaluator = std::function<JetMatrix(double t, int order)>;

  GaugePath() : GaugePath(constant(Matrix{})) {}
  GaugePath(Evaluator eval, std::optional<double> period) : eval_(std::move(eval)), period_(period) {}

  static GaugePath constant(const Matrix& a);
  static GaugePath constant(const LieComponents& lower);
  static GaugePath fourier(FourierSeries series);
  // sum_k coeffs[k] t^k; not periodic.
  static GaugePath polynomial(std::vector<Matrix> coeffs);
  // A = g' g^{-1}.
  static GaugePath pure_gauge(const GroupPath& g);

  JetMatrix evaluate(double t, int order) const { return eval_(t, order); }
  Matrix value(double t) const { return values(eval_(t, 0)); }
  // Period when the path is declared periodic (2 pi for every loop built here).
  std::optional<double> period() const noexcept { return period_; }

  GaugePath scaled(double s) const;

 private:
  Evaluator eval_;
  std::optional<double> period_;
};

// SL(2,R)-valued function of t evaluated as a matrix of jets.
class GroupPath {
 public:
  using Evaluator = std::function<JetMatrix(double t, int order)>;

  GroupPath() : GroupPath(constant(GroupElement::identity())) {}
  GroupPath(Evaluator eval, std::optional<double> period) : eval_(std::move(eval)), period_(period) {}

  static GroupPath constant(const GroupElement& g);
  // Pointwise exponential of a generator path.
  static GroupPath exponential(const GaugePath& generator, std::optional<double> period = std::nullopt);
  // exp(m t (T^0 + T^2)): closed loop of winding m on [0, 2 pi].
  static GroupPath rotation_loop(int m);

  JetMatrix evaluate(double t, int order) const { return eval_(t, order); }
  GroupElement value(double t) const;
  std::optional<double> period() const noexcept { return period_; }

  GroupPath inverse() const;
  // Pointwise product (*this)(t) * other(t).
  GroupPath operator*(const GroupPath& other) const;

 private:
  Evaluator eval_;
  std::optional<double> period_;
};

struct GaugeTransformed {
  GaugePath potential;
  FieldPath field;
};

// A' = g A g^{-1} + g' g^{-1} and f' = g(t) |> f(t).
GaugeTransformed gauge_transform(const GroupPath& g, const GaugePath& a, const FieldPath& f);
GaugePath gauge_transform(const GroupPath& g, const GaugePath& a);
FieldPath mobius_transform(const GroupPath& g, const FieldPath& f);

// D_A f = f' (1 + 2 tr(A f)) at the jet basepoint.
double covariant_deriv_f(const Jet& fjet, const GaugePath& a);
// 1 + 2 tr(A f) at the jet basepoint; f_A is singular where it vanishes.
double form_factor(const Jet& fjet, const GaugePath& a);
// f_A = f / (1 + 2 tr(A f)), jets of order fjet.order() - 1.
JetMatrix gauged_composite(const Jet& fjet, const GaugePath& a);
// Adjoint covariant derivative d/dt X - [A, X]; order drops by one.
JetMatrix covariant_derivative(const JetMatrix& x, const JetMatrix& a);

// tr(f_A'' - [A', f_A] - 2 [A, f_A'] + [A, [A, f_A]])^2 at the jet basepoint.
double gauged_schwarzian(const Jet& fjet, const GaugePath& a);

// Closed form of the gauged Schwarzian for the constant potential -2 n T^1.
double constant_gauge_schwarzian(const Jet& fjet, double n);

struct ExpansionTerms {
  // 2 tr(N A).
  double first = 0.0;
  // -2 (tr f A')^2 + 4 tr(f A A') - 4 (tr f A)^2 tr f''^2 - 2 tr A^2.
  double second = 0.0;
};

// First and second order terms of the gauged Schwarzian in A, each valid up to
// total derivatives (compare only under an integral over a period).
ExpansionTerms expansion_terms(const Jet& fjet, const GaugePath& a);

struct Interval {
  double begin = 0.0;
  double end = kTwoPi;
};

inline constexpr int kDefaultHolonomySteps = 4096;

// Ordered product of exp(-A(t_i) dt) over midpoints t_i, earlier factors on
// the left.
GroupElement holonomy(const GaugePath& a, Interval interval = {}, int steps = kDefaultHolonomySteps);

// Running holonomy as a group path P(t) with P' = -P A, so that transforming A
// by it gives zero. Values on grid nodes come from the exponential product;
// between nodes the flow is continued by a local Taylor expansion.
GroupPath trivializing_gauge(const GaugePath& a, Interval interval = {}, int steps = kDefaultHolonomySteps);

struct WindingOptions {
  int steps = kDefaultHolonomySteps;
  // Max-norm distance of the holonomy from the identity for a closed loop.
  double closure_tolerance = 1e-6;
  // Max-norm mismatch of A(2 pi) and A(0) tolerated for a loop.
  double periodicity_tolerance = 1e-8;
};

struct WindingResult {
  // (1/pi) int_0^{2 pi} tr T_1 (h A h^{-1} + h' h^{-1}) by composite trapezoid.
  double paper_value = 0.0;
  // Winding of the rotation angle of the inverse running holonomy; set only
  // when the holonomy closes to the identity.
  std::optional<int> angle_lift;
  GroupElement holonomy;
  double closure_error = 0.0;
  bool trivializable = false;
};

WindingResult winding(const GaugePath& a, const std::optional<GroupPath>& h0 = std::nullopt,
                      const WindingOptions& opts = {});

// Rotation angle of the compact factor of g = K(theta) A N, i.e. atan2(c, a).
double rotation_angle(const Matrix& g);

// Parses `const:<A0>,<A1>,<A2>`, `fourier:<M>:<file>` and `puregauge:rot:<m>`.
GaugePath parse_gauge_spec(const std::string& spec);
// Reads `component,mode,cos,sin` rows; modes above the cutoff are dropped.
FourierSeries read_fourier_file(const std::string& path, int modes);

}  // namespace gschw
