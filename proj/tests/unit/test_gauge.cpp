#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "gschw/composite.hpp"
#include "gschw/gauge.hpp"
#include "gschw/sampling.hpp"
#include "support.hpp"

using namespace gschw;
using testing::mat_diff;
using testing::rel;
using testing::thrown_kind;

namespace {

GaugePath dilation(double n) { return GaugePath::constant(LieComponents{LieComponents::Kind::lower, {0, -2 * n, 0}}); }

bool regular(const Jet& f, const GaugePath& a) {
  return well_conditioned(f) && std::abs(form_factor(f, a)) > 1e-2;
}

}  // namespace

TEST_CASE("gauge transforms compose") {
  Rng rng(3, 1);
  for (int i = 0; i < 10; ++i) {
    const GaugePath a = random_polynomial_potential(rng, 2, 0.5);
    const GroupPath g1 = random_local_gauge(rng), g2 = random_local_gauge(rng);
    const GaugePath twice = gauge_transform(g2, gauge_transform(g1, a));
    const GaugePath once = gauge_transform(g2 * g1, a);
    for (double t : {-0.7, 0.1, 0.9}) CHECK(mat_diff(twice.value(t), once.value(t)) < 1e-12);
    const GaugePath back = gauge_transform(g1.inverse(), gauge_transform(g1, a));
    CHECK(mat_diff(back.value(0.3), a.value(0.3)) < 1e-12);
  }
}

TEST_CASE("pure gauge of a constant element vanishes and of exp(tX) is X") {
  const Matrix x{0.2, -0.4, 0.7, -0.2};
  const GaugePath gen = GaugePath::polynomial({Matrix{}, x});
  const GaugePath a = GaugePath::pure_gauge(GroupPath::exponential(gen));
  CHECK(mat_diff(a.value(0.8), x) < 1e-13);
  const GaugePath zero = GaugePath::pure_gauge(GroupPath::constant(GroupElement(2, 1, 1, 1)));
  CHECK(max_abs(zero.value(0.3)) == 0.0);
}

TEST_CASE("covariant derivative for A = -2n T^1 is f' - 2 n f") {
  const Jet t = Jet::variable(0.4, 4);
  const Jet f = exp(t) + t * t;
  for (double n : {-1.0, 0.5, 2.0}) CHECK(rel(covariant_deriv_f(f, dilation(n)), f.deriv(1) - 2 * n * f.value()) < 1e-14);
  CHECK(form_factor(f, GaugePath()) == 1.0);
}

TEST_CASE("gauged composite with A = 0 is the composite field") {
  const Jet t = Jet::variable(0.2, 5);
  const Jet f = sin(t) + 2 * t;
  const JetMatrix fa = gauged_composite(f, GaugePath());
  const CompositeField cf = composite_field(f);
  for (int k = 0; k <= 3; ++k) CHECK(mat_diff(deriv(fa, k), cf.deriv(k)) < 1e-12);
  CHECK(rel(gauged_schwarzian(f, GaugePath()), schwarzian_direct(f)) < 1e-12);
}

TEST_CASE("gauged composite is adjoint covariant and S[A] is gauge invariant") {
  Rng rng(5, 2);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 40; ++i) {
    const double t0 = rng.uniform(-1, 1);
    const PerturbedFamily pf = random_perturbed_family(rng, t0);
    const GaugePath a = random_polynomial_potential(rng, 2, 0.5);
    const GroupPath g = random_local_gauge(rng);
    const GaugeTransformed moved = gauge_transform(g, a, pf.as_field());
    const Jet f = pf.evaluate(t0, kDefaultJetOrder);
    const Jet fm = moved.field.evaluate(t0, kDefaultJetOrder);
    if (!regular(f, a) || !regular(fm, moved.potential)) continue;
    ++checked;
    const GroupElement gv = g.value(t0);
    const Matrix expect = adjoint_act(gv, deriv(gauged_composite(f, a), 0));
    CHECK(mat_diff(deriv(gauged_composite(fm, moved.potential), 0), expect) < 1e-9 * std::max(1.0, max_abs(expect)));
    CHECK(rel(gauged_schwarzian(fm, moved.potential), gauged_schwarzian(f, a)) < 1e-8);
  }
  CHECK(checked == 40);
}

TEST_CASE("pure gauge collapses to the plain Schwarzian") {
  Rng rng(7, 3);
  int checked = 0;
  for (int i = 0; i < 200 && checked < 30; ++i) {
    const double t0 = rng.uniform(-1, 1);
    const PerturbedFamily pf = random_perturbed_family(rng, t0);
    const GroupPath g = random_local_gauge(rng);
    const GaugeTransformed moved = gauge_transform(g, GaugePath(), pf.as_field());
    const Jet f = pf.evaluate(t0, kDefaultJetOrder);
    const Jet fm = moved.field.evaluate(t0, kDefaultJetOrder);
    if (!well_conditioned(f) || !regular(fm, moved.potential)) continue;
    ++checked;
    CHECK(rel(gauged_schwarzian(fm, moved.potential), schwarzian_direct(f)) < 1e-8);
  }
  CHECK(checked == 30);
}

TEST_CASE("constant gauge: numeric, closed form and pure-gauge oracle agree") {
  Rng rng(11, 4);
  for (double n : {-2.0, -1.0, 1.0, 3.0}) {
    int checked = 0;
    while (checked < 10) {
      const double t0 = rng.uniform(-1, 1);
      const PerturbedFamily pf = random_perturbed_family(rng, t0);
      const Jet f = pf.evaluate(t0, kDefaultJetOrder);
      if (!regular(f, dilation(n))) continue;
      ++checked;
      const Jet t = Jet::variable(t0, kDefaultJetOrder);
      const double oracle = schwarzian_direct(exp(t * (-2 * n)) * f);
      CHECK(rel(gauged_schwarzian(f, dilation(n)), oracle) < 1e-9);
      CHECK(rel(constant_gauge_schwarzian(f, n), oracle) < 1e-9);
    }
  }
  const Jet t = Jet::variable(0.0, 4);
  CHECK(thrown_kind([&] { constant_gauge_schwarzian(t.truncate(2), 1); }) == ErrorKind::invalid_argument);
  // f = e^{2t}: f' - 2 f = 0.
  CHECK(thrown_kind([&] { constant_gauge_schwarzian(exp(2 * t), 1); }) == ErrorKind::gauge_singular);
  CHECK(thrown_kind([&] { gauged_schwarzian(exp(2 * t), dilation(1)); }) == ErrorKind::gauge_singular);
}

TEST_CASE("holonomy of a constant potential is exp(-2 pi A)") {
  Rng rng(13, 5);
  for (int i = 0; i < 10; ++i) {
    const LieComponents c{LieComponents::Kind::lower, {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    const Matrix a = assemble(c);
    const GroupElement h = holonomy(GaugePath::constant(c));
    CHECK(mat_diff(h.matrix(), exp_sl2(a * (-kTwoPi)).matrix()) < 1e-10);
  }
  CHECK(thrown_kind([] { holonomy(GaugePath(), {}, 0); }) == ErrorKind::invalid_argument);
}

TEST_CASE("trivializing gauge removes the potential") {
  Rng rng(17, 6);
  const GaugePath a = random_periodic_potential(rng, 2, 0.5);
  const GroupPath p = trivializing_gauge(a);
  const GaugePath zero = gauge_transform(p, a);
  for (double t : {0.0, 0.37, 1.0, 3.3, 6.0}) CHECK(max_abs(zero.value(t)) < 1e-8);
}

TEST_CASE("winding of reference potentials") {
  const WindingResult triv = winding(parse_gauge_spec("const:0,0,0"));
  CHECK(triv.paper_value == 0.0);
  REQUIRE(triv.angle_lift.has_value());
  CHECK(*triv.angle_lift == 0);
  CHECK(mat_diff(triv.holonomy.matrix(), identity_matrix()) == 0.0);
  CHECK(triv.trivializable);

  for (int m = -3; m <= 3; ++m) {
    const WindingResult w = winding(GaugePath::pure_gauge(GroupPath::rotation_loop(m)));
    REQUIRE(w.angle_lift.has_value());
    CHECK(*w.angle_lift == m);
    CHECK(w.closure_error < 1e-6);
  }

  for (int n : {-2, 1, 2}) {
    const WindingResult w = winding(dilation(n));
    CHECK(w.paper_value == doctest::Approx(-2.0 * n).epsilon(1e-12));
    CHECK_FALSE(w.angle_lift.has_value());
    CHECK_FALSE(w.trivializable);
    CHECK(w.closure_error > 1.0);
  }
}

TEST_CASE("angle lift is stable under small loops and shifts under rotation loops") {
  Rng rng(19, 7);
  WindingOptions opts;
  opts.steps = 16384;
  for (int i = 0; i < 5; ++i) {
    const GroupPath small = GroupPath::exponential(random_periodic_potential(rng, 2, 0.3), kTwoPi);
    const int m = rng.integer(-2, 2);
    const WindingResult w = winding(GaugePath::pure_gauge(GroupPath::rotation_loop(m) * small), std::nullopt, opts);
    REQUIRE(w.angle_lift.has_value());
    CHECK(*w.angle_lift == m);
    const WindingResult w0 = winding(GaugePath::pure_gauge(small), std::nullopt, opts);
    REQUIRE(w0.angle_lift.has_value());
    CHECK(*w0.angle_lift == 0);
  }
}

TEST_CASE("rotation angle") {
  const double th = 0.7;
  const Matrix k{std::cos(th), -std::sin(th), std::sin(th), std::cos(th)};
  const Matrix an{2.0, 0.5, 0.0, 0.5};
  CHECK(rotation_angle(k * an) == doctest::Approx(th));
}

TEST_CASE("potential specs") {
  CHECK(mat_diff(parse_gauge_spec("const:1,2,3").value(0.0), assemble({LieComponents::Kind::lower, {1, 2, 3}})) == 0.0);
  CHECK(parse_gauge_spec("puregauge:rot:2").period().has_value());
  for (const char* bad : {"const:1,2", "const:a,b,c", "rot:2", "puregauge:rot:x", "fourier:2", "fourier:2:/nonexistent"})
    CHECK(thrown_kind([&] { parse_gauge_spec(bad); }) == ErrorKind::parse);

  const std::string path = "gschw_test_fourier.csv";
  {
    std::ofstream out(path);
    out << "component,mode,cos,sin\n1,0,-1,0\n0,1,0.5,0\n2,3,0.2,0.1\n";
  }
  const FourierSeries fs = read_fourier_file(path, 2);
  CHECK(fs.modes == 2);
  const GaugePath a = parse_gauge_spec("fourier:2:" + path);
  const Matrix v = a.value(0.0);
  // A_0 = 0.5 cos t, A_1 = -1, mode 3 dropped.
  CHECK(mat_diff(v, assemble({LieComponents::Kind::lower, {0.5, -1, 0}})) < 1e-15);
  CHECK(winding(a).paper_value == doctest::Approx(-1.0));
  {
    std::ofstream out(path);
    out << "1,0,-1,0.5\n";
  }
  CHECK(thrown_kind([&] { read_fourier_file(path, 2); }) == ErrorKind::parse);
  std::remove(path.c_str());
}

TEST_CASE("winding needs a loop") {
  Rng rng(23, 8);
  CHECK(thrown_kind([&] { winding(random_polynomial_potential(rng, 2, 0.5)); }) == ErrorKind::not_a_loop);
  const GaugePath drift({[](double t, int order) { return lift(Matrix{0, t, 0, 0}, t, order); }}, kTwoPi);
  CHECK(thrown_kind([&] { winding(drift); }) == ErrorKind::not_a_loop);
}
