#include "gschw/sampling.hpp"

#include <cmath>

#include "gschw/error.hpp"

namespace gschw {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

double Rng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

SolutionFamily random_family(Rng& rng) {
  while (true) {
    SolutionFamily fam{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), 0.0};
    double dt = fam.a * fam.d - fam.b * fam.c;
    if (std::abs(dt) < 0.1) continue;
    if (dt < 0.0) {
      fam.a = -fam.a;
      fam.b = -fam.b;
      dt = -dt;
    }
    const double s = 1.0 / std::sqrt(dt);
    fam.a *= s;
    fam.b *= s;
    fam.c *= s;
    fam.d *= s;
    const double q = rng.uniform(0.3, 2.0);
    fam.qsq = rng.uniform(0, 1) < 0.75 ? q * q : -q * q;
    return fam;
  }
}

GroupElement random_group_element(Rng& rng) {
  while (true) {
    double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2), c = rng.uniform(-2, 2), d = rng.uniform(-2, 2);
    double dt = a * d - b * c;
    if (std::abs(dt) < 0.2) continue;
    if (dt < 0.0) {
      a = -a;
      b = -b;
      dt = -dt;
    }
    const double s = 1.0 / std::sqrt(dt);
    return GroupElement(a * s, b * s, c * s, d * s);
  }
}

Jet PerturbedFamily::evaluate(double t, int order) const {
  Jet f = family_eval(family, t, order);
  const Jet tv = Jet::variable(t, std::max(order, 1)).truncate(order);
  Jet p = tv.lift(poly.back());
  for (auto it = poly.rbegin() + 1; it != poly.rend(); ++it) p = p * tv + *it;
  return f + p;
}

FieldPath PerturbedFamily::as_field() const {
  return FieldPath([self = *this](double t, int order) { return self.evaluate(t, order); });
}

bool well_conditioned(const Jet& f) {
  const double v = std::abs(f.value()), d = std::abs(f.deriv(1));
  return f.all_finite() && v <= 10.0 && d >= 1e-2 && d <= 1e2;
}

PerturbedFamily random_perturbed_family(Rng& rng, double t0, double perturbation) {
  while (true) {
    PerturbedFamily pf;
    pf.family = random_family(rng);
    const int degree = rng.integer(0, 5);
    for (int k = 0; k <= degree; ++k) pf.poly[static_cast<std::size_t>(k)] = rng.uniform(-perturbation, perturbation);
    try {
      const Jet j = pf.evaluate(t0, kDefaultJetOrder);
      if (!well_conditioned(j)) continue;
    } catch (const Error&) {
      continue;
    }
    return pf;
  }
}

namespace {

Matrix random_algebra(Rng& rng, double scale) {
  return assemble({LieComponents::Kind::lower,
                   {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)}});
}

}  // namespace

GaugePath random_polynomial_potential(Rng& rng, int degree, double scale) {
  std::vector<Matrix> coeffs;
  for (int k = 0; k <= degree; ++k) coeffs.push_back(random_algebra(rng, scale));
  return GaugePath::polynomial(std::move(coeffs));
}

GroupPath random_local_gauge(Rng& rng, double scale) {
  return GroupPath::exponential(random_polynomial_potential(rng, rng.integer(1, 3), scale));
}

GaugePath random_periodic_potential(Rng& rng, int modes, double scale) {
  FourierSeries fs;
  fs.modes = modes;
  for (std::size_t i = 0; i < 3; ++i) {
    fs.cos_coeffs[i].assign(static_cast<std::size_t>(modes) + 1, 0.0);
    fs.sin_coeffs[i].assign(static_cast<std::size_t>(modes) + 1, 0.0);
    fs.cos_coeffs[i][0] = rng.uniform(-scale, scale);
    for (std::size_t m = 1; m <= static_cast<std::size_t>(modes); ++m) {
      fs.cos_coeffs[i][m] = rng.uniform(-scale, scale) / static_cast<double>(m);
      fs.sin_coeffs[i][m] = rng.uniform(-scale, scale) / static_cast<double>(m);
    }
  }
  return GaugePath::fourier(std::move(fs));
}

std::pair<Jet, GroupElement> PeriodicField::evaluate(double t, int order) const {
  const Jet tv = Jet::variable(t, std::max(order, 1)).truncate(order);
  Jet u = 0.5 * tv + phase;
  for (std::size_t m = 1; m <= 2; ++m) {
    const Jet arg = static_cast<double>(m) * tv;
    u += cos_amp[m - 1] * cos(arg) + sin_amp[m - 1] * sin(arg);
  }
  const Jet s = sin(u), c = cos(u);
  if (std::abs(s.value()) <= std::abs(c.value())) return {s / c, GroupElement::identity()};
  // (T^0 + T^2) |> tan u = -1 / tan u.
  return {-(c / s), GroupElement(0.0, -1.0, 1.0, 0.0)};
}

PeriodicField random_periodic_field(Rng& rng) {
  PeriodicField pf;
  pf.phase = rng.uniform(0.0, kTwoPi);
  // |u' - 1/2| <= sum_m m (|cos| + |sin|) <= 0.3.
  for (std::size_t m = 0; m < 2; ++m) {
    pf.cos_amp[m] = rng.uniform(-0.05, 0.05);
    pf.sin_amp[m] = rng.uniform(-0.05, 0.05);
  }
  return pf;
}

}  // namespace gschw
