#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <utility>

#include "gschw/dynamics.hpp"
#include "gschw/gauge.hpp"

namespace gschw {

// Seeded generator with a platform-independent mapping to doubles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double uniform(double lo, double hi);
  int integer(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

// Unit-determinant family with random q^2 of either sign.
SolutionFamily random_family(Rng& rng);
GroupElement random_group_element(Rng& rng);

// Solution-family member plus an additive polynomial of degree <= 5 in t.
struct PerturbedFamily {
  SolutionFamily family;
  std::array<double, 6> poly{};

  Jet evaluate(double t, int order) const;
  FieldPath as_field() const;
};

// Sample jets used by the randomized checks keep |f| <= 10 and
// 1e-2 <= |f'| <= 1e2, away from poles and critical points.
bool well_conditioned(const Jet& f);

// Draws until the field is well conditioned at t0.
PerturbedFamily random_perturbed_family(Rng& rng, double t0, double perturbation = 0.1);

// sum_k M_k t^k with random algebra coefficients.
GaugePath random_polynomial_potential(Rng& rng, int degree, double scale);
// exp of a random algebra polynomial of degree <= 3.
GroupPath random_local_gauge(Rng& rng, double scale = 0.3);
// Random 2 pi periodic potential with the given number of Fourier modes.
GaugePath random_periodic_potential(Rng& rng, int modes, double scale);

// f = tan(u(t)) with u(t + 2 pi) = u(t) + pi and u' > 0, so the composite
// field is smooth and 2 pi periodic. Evaluation switches to the Möbius frame
// f -> -1/f near poles of tan and rotates A accordingly; every quantity
// compared under the integral is invariant under this constant rotation.
struct PeriodicField {
  double phase = 0.0;
  std::array<double, 2> cos_amp{};
  std::array<double, 2> sin_amp{};

  // Returns the f-jet and the frame rotation (identity or T^0 + T^2).
  std::pair<Jet, GroupElement> evaluate(double t, int order) const;
};

PeriodicField random_periodic_field(Rng& rng);

}  // namespace gschw
