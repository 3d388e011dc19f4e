#include "gschw/jet.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "gschw/error.hpp"

namespace gschw {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::singular_denominator: return "singular denominator";
    case ErrorKind::critical_point: return "critical point";
    case ErrorKind::mobius_singularity: return "Möbius singularity";
    case ErrorKind::degenerate: return "degenerate Möbius";
    case ErrorKind::pole: return "pole";
    case ErrorKind::approaching_critical_point: return "approaching critical point";
    case ErrorKind::blow_up: return "blow-up";
    case ErrorKind::gauge_singular: return "gauge-singular point";
    case ErrorKind::not_a_loop: return "not a loop";
    case ErrorKind::parse: return "parse error";
  }
  return "unknown";
}

namespace {

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

}  // namespace

Jet::Jet(double basepoint, std::vector<double> coeffs) : t0_(basepoint), c_(std::move(coeffs)) {
  if (c_.empty()) throw Error(ErrorKind::invalid_argument, "jet needs at least one coefficient");
}

Jet Jet::variable(double t0, int order) {
  if (order < 1) throw Error(ErrorKind::invalid_argument, "variable jet needs order >= 1");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = t0;
  c[1] = 1.0;
  return Jet(t0, std::move(c));
}

Jet Jet::constant(double value, double t0, int order) {
  if (order < 0) throw Error(ErrorKind::invalid_argument, "negative jet order");
  std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
  c[0] = value;
  return Jet(t0, std::move(c));
}

double Jet::deriv(int k) const {
  if (k < 0 || k > order())
    throw Error(ErrorKind::invalid_argument,
                "derivative order " + std::to_string(k) + " exceeds jet order " + std::to_string(order()));
  return factorial(k) * c_[static_cast<std::size_t>(k)];
}

Jet Jet::differentiate() const {
  if (order() < 1) throw Error(ErrorKind::invalid_argument, "cannot differentiate an order-0 jet");
  std::vector<double> c(c_.size() - 1);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = static_cast<double>(k + 1) * c_[k + 1];
  return Jet(t0_, std::move(c));
}

Jet Jet::truncate(int order) const {
  if (order < 0 || order > this->order())
    throw Error(ErrorKind::invalid_argument, "truncation order out of range");
  return Jet(t0_, std::vector<double>(c_.begin(), c_.begin() + order + 1));
}

void Jet::check_compatible(const Jet& o) const {
  if (o.c_.size() != c_.size())
    throw Error(ErrorKind::invalid_argument, "jet order mismatch (" + std::to_string(order()) + " vs " +
                                                 std::to_string(o.order()) + ")");
  if (o.t0_ != t0_) throw Error(ErrorKind::invalid_argument, "jet basepoint mismatch");
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& x : r.c_) x = -x;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_compatible(o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet& Jet::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(double s) {
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

Jet& Jet::operator/=(double s) {
  for (double& x : c_) x /= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  const std::size_t n = a.c_.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j <= k; ++j) c[k] += a.c_[j] * b.c_[k - j];
  return Jet(a.t0_, std::move(c));
}

Jet operator/(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  if (b.c_[0] == 0.0 || !std::isfinite(b.c_[0]))
    throw Error(ErrorKind::singular_denominator, "jet denominator has zero constant term");
  const std::size_t n = a.c_.size();
  std::vector<double> q(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = a.c_[k];
    for (std::size_t j = 1; j <= k; ++j) s -= b.c_[j] * q[k - j];
    q[k] = s / b.c_[0];
  }
  return Jet(a.t0_, std::move(q));
}

bool Jet::all_finite() const noexcept {
  for (double x : c_)
    if (!std::isfinite(x)) return false;
  return true;
}

Jet exp(const Jet& a) {
  const auto c = a.coeffs();
  const std::size_t n = c.size();
  std::vector<double> e(n, 0.0);
  e[0] = std::exp(c[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * c[j] * e[k - j];
    e[k] = s / static_cast<double>(k);
  }
  return Jet(a.basepoint(), std::move(e));
}

Jet log(const Jet& a) {
  const auto c = a.coeffs();
  if (!(c[0] > 0.0)) throw Error(ErrorKind::invalid_argument, "log of a jet with non-positive value");
  const std::size_t n = c.size();
  std::vector<double> l(n, 0.0);
  l[0] = std::log(c[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j < k; ++j) s += static_cast<double>(j) * l[j] * c[k - j];
    l[k] = (c[k] - s / static_cast<double>(k)) / c[0];
  }
  return Jet(a.basepoint(), std::move(l));
}

Jet sqrt(const Jet& a) {
  const auto c = a.coeffs();
  if (!(c[0] > 0.0)) throw Error(ErrorKind::invalid_argument, "sqrt of a jet with non-positive value");
  const std::size_t n = c.size();
  std::vector<double> r(n, 0.0);
  r[0] = std::sqrt(c[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double s = c[k];
    for (std::size_t j = 1; j < k; ++j) s -= r[j] * r[k - j];
    r[k] = s / (2.0 * r[0]);
  }
  return Jet(a.basepoint(), std::move(r));
}

namespace {

// Coupled recurrences for (sin, cos) when sign = -1 and (sinh, cosh) when
// sign = +1: s' = a' c, c' = sign * a' s.
std::pair<Jet, Jet> sin_cos_pair(const Jet& a, double sign, bool hyperbolic) {
  const auto c = a.coeffs();
  const std::size_t n = c.size();
  std::vector<double> s(n, 0.0), co(n, 0.0);
  s[0] = hyperbolic ? std::sinh(c[0]) : std::sin(c[0]);
  co[0] = hyperbolic ? std::cosh(c[0]) : std::cos(c[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double ss = 0.0, cc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      ss += static_cast<double>(j) * c[j] * co[k - j];
      cc += static_cast<double>(j) * c[j] * s[k - j];
    }
    s[k] = ss / static_cast<double>(k);
    co[k] = sign * cc / static_cast<double>(k);
  }
  return {Jet(a.basepoint(), std::move(s)), Jet(a.basepoint(), std::move(co))};
}

}  // namespace

Jet sin(const Jet& a) { return sin_cos_pair(a, -1.0, false).first; }
Jet cos(const Jet& a) { return sin_cos_pair(a, -1.0, false).second; }
Jet sinh(const Jet& a) { return sin_cos_pair(a, 1.0, true).first; }
Jet cosh(const Jet& a) { return sin_cos_pair(a, 1.0, true).second; }

Jet pow(const Jet& a, int n) {
  if (n < 0) return 1.0 / pow(a, -n);
  Jet r = a.lift(1.0);
  Jet base = a;
  while (n > 0) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

}  // namespace gschw
