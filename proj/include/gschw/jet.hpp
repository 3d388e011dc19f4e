#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gschw {

inline constexpr int kDefaultJetOrder = 6;

// Truncated Taylor expansion of a real function about a basepoint t0.
//
// Coefficients are stored as Taylor coefficients c_k, so the k-th derivative
// at t0 is k! * c_k. Arithmetic between jets requires matching basepoint and
// order and is exact up to truncation at the jet order.
class Jet {
 public:
  Jet() = default;
  Jet(double basepoint, std::vector<double> coeffs);
  Jet(double basepoint, std::initializer_list<double> coeffs)
      : Jet(basepoint, std::vector<double>(coeffs)) {}

  // Identity function t -> t, expanded at t0.
  static Jet variable(double t0, int order);
  static Jet constant(double value, double t0, int order);

  double basepoint() const noexcept { return t0_; }
  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  double value() const noexcept { return c_.front(); }
  double operator[](std::size_t k) const { return c_[k]; }
  std::span<const double> coeffs() const noexcept { return c_; }

  double deriv(int k) const;

  // Jet of the time derivative: order drops by one.
  Jet differentiate() const;
  Jet truncate(int order) const;
  // Constant jet sharing basepoint and order with *this.
  Jet lift(double value) const { return constant(value, t0_, order()); }

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);
  Jet& operator/=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a /= s; }
  friend Jet operator/(double s, const Jet& a) { return a.lift(s) / a; }

  bool all_finite() const noexcept;

 private:
  void check_compatible(const Jet& o) const;

  double t0_ = 0.0;
  std::vector<double> c_{0.0};
};

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet pow(const Jet& a, int n);

// Scalar accessors so templated code can treat double and Jet uniformly.
inline double value_of(double x) noexcept { return x; }
inline double value_of(const Jet& x) noexcept { return x.value(); }

}  // namespace gschw
