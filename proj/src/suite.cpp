#include "gschw/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gschw/composite.hpp"
#include "gschw/error.hpp"
#include "gschw/gauge.hpp"
#include "gschw/sampling.hpp"

namespace gschw {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> tols{
      {"identity", 1e-9},       {"schwarzian", 1e-10}, {"global", 1e-9},  {"gauge", 1e-8},   {"pure_gauge", 1e-8},
      {"constant_gauge", 1e-9}, {"expansion", 1.0},    {"holonomy", 1e-6}, {"winding", 1e-8},
  };
  return tols;
}

void VerifyConfig::validate() const {
  if (cases && *cases < 1) throw Error(ErrorKind::invalid_argument, "number of cases must be at least 1");
  if (holonomy_steps < 2) throw Error(ErrorKind::invalid_argument, "holonomy steps must be at least 2");
  for (const auto& [name, value] : tolerances) {
    if (!default_tolerances().contains(name)) throw Error(ErrorKind::invalid_argument, "unknown tolerance '" + name + "'");
    if (!(value > 0.0) || !std::isfinite(value))
      throw Error(ErrorKind::invalid_argument, "tolerance '" + name + "' must be positive");
  }
}

double VerifyConfig::tolerance(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

double relative_difference(double x, double y) {
  return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Independent random stream per check, so a check reproduces the same cases
// whichever command runs it.
enum Stream : std::uint64_t {
  kIdentityStream = 1,
  kGlobalStream,
  kGaugeStream,
  kPureGaugeStream,
  kConstantGaugeStream,
  kExpansionStream,
};

using Params = std::vector<std::pair<std::string, double>>;

class Tracker {
 public:
  Tracker(std::string name, std::string tol_name, const VerifyConfig& cfg)
      : result_{std::move(name), tol_name, 0.0, cfg.tolerance(tol_name), false, 0, {}, {}} {}

  void record(double residual, const std::function<Params()>& params) {
    ++result_.cases;
    if (std::isnan(residual)) residual = kInf;
    if (residual > result_.max_residual || result_.worst_case.empty()) {
      result_.max_residual = std::max(result_.max_residual, residual);
      result_.worst_case = params();
    }
  }

  CheckResult& result() { return result_; }

  CheckResult finish() {
    result_.pass = result_.max_residual <= result_.tolerance;
    return result_;
  }

 private:
  CheckResult result_;
};

Params family_params(const PerturbedFamily& pf, double t) {
  Params p{{"a", pf.family.a}, {"b", pf.family.b}, {"c", pf.family.c}, {"d", pf.family.d}, {"qsq", pf.family.qsq}};
  for (std::size_t k = 0; k < pf.poly.size(); ++k) p.emplace_back("p" + std::to_string(k), pf.poly[k]);
  p.emplace_back("t", t);
  return p;
}

Params with_group(Params p, const GroupElement& g) {
  const Matrix& m = g.matrix();
  p.insert(p.end(), {{"g_a", m.a}, {"g_b", m.b}, {"g_c", m.c}, {"g_d", m.d}});
  return p;
}

int case_count(const VerifyConfig& cfg, int dflt) { return cfg.cases.value_or(dflt); }

// Runs the identity suite on the shared identity stream and reduces each
// report with `pick`.
CheckResult identity_stream_check(const VerifyConfig& cfg, const char* name, const char* tol,
                                  double (*pick)(const IdentityReport&)) {
  cfg.validate();
  Rng rng(cfg.seed, kIdentityStream);
  Tracker tr(name, tol, cfg);
  const int n = case_count(cfg, 100);
  for (int i = 0; i < n; ++i) {
    const double t0 = rng.uniform(-1.0, 1.0);
    const PerturbedFamily pf = random_perturbed_family(rng, t0);
    const IdentityReport rep = identity_suite(pf.evaluate(t0, kDefaultJetOrder));
    tr.record(pick(rep), [&] { return family_params(pf, t0); });
  }
  return tr.finish();
}

constexpr int kPointsPerCase = 10;
// Sample points keep |1 + 2 tr(A f)| above this, away from gauge-singular points.
constexpr double kFormFloor = 1e-2;

// Draws kPointsPerCase points t in [-1, 1] at which `eval` yields a value,
// giving up after 200 misses for one point. Errors thrown by `eval` count as
// misses.
template <class Eval>
std::optional<std::vector<std::pair<double, double>>> regular_points(Rng& rng, Eval&& eval) {
  std::vector<std::pair<double, double>> out;
  while (out.size() < kPointsPerCase) {
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
      const double t = rng.uniform(-1.0, 1.0);
      try {
        if (const std::optional<double> v = eval(t)) {
          out.emplace_back(t, *v);
          found = true;
        }
      } catch (const Error&) {
      }
    }
    if (!found) return std::nullopt;
  }
  return out;
}

// Local-gauge checks: draws cases until each admits kPointsPerCase well
// conditioned points, then records `residual` at each of them.
template <class Draw, class Residual>
void run_local_gauge_cases(Rng& rng, Tracker& tr, int n, Draw&& draw, Residual&& residual) {
  for (int i = 0; i < n; ++i) {
    for (int redraw = 0;; ++redraw) {
      const auto c = draw(rng);
      const auto pts = regular_points(rng, [&](double t) -> std::optional<double> {
        const auto [f, f2] = c.fields(t);
        if (!well_conditioned(f) || !well_conditioned(f2) || !c.away_from_singular(f, f2)) return std::nullopt;
        return residual(f, f2, c);
      });
      if (pts) {
        for (const auto& [t, r] : *pts)
          tr.record(r, [&] {
            Params p = family_params(c.pf, t);
            p.emplace_back("case", i);
            return p;
          });
        break;
      }
      if (redraw == 100) {
        tr.record(kInf, [&] { return family_params(c.pf, 0.0); });
        break;
      }
    }
  }
}

struct GaugeCase {
  PerturbedFamily pf;
  GaugePath a;
  GaugeTransformed moved;

  std::pair<Jet, Jet> fields(double t) const {
    return {pf.evaluate(t, kDefaultJetOrder), moved.field.evaluate(t, kDefaultJetOrder)};
  }
  bool away_from_singular(const Jet& f, const Jet& f2) const {
    return std::abs(form_factor(f, a)) >= kFormFloor && std::abs(form_factor(f2, moved.potential)) >= kFormFloor;
  }
};

struct PureGaugeCase {
  PerturbedFamily pf;
  GaugePath a;
  FieldPath pulled;

  std::pair<Jet, Jet> fields(double t) const {
    return {pf.evaluate(t, kDefaultJetOrder), pulled.evaluate(t, kDefaultJetOrder)};
  }
  bool away_from_singular(const Jet& f, const Jet&) const { return std::abs(form_factor(f, a)) >= kFormFloor; }
};

}  // namespace

CheckResult check_identity_suite(const VerifyConfig& cfg) {
  return identity_stream_check(cfg, "identity_suite", "identity", [](const IdentityReport& r) { return r.max(); });
}

CheckResult check_schwarzian_trace(const VerifyConfig& cfg) {
  return identity_stream_check(cfg, "schwarzian_trace", "schwarzian", [](const IdentityReport& r) {
    return std::max(r.get("tr f'^2 = 1/2"), r.get("tr f''^2 = S"));
  });
}

CheckResult check_global_invariance(const VerifyConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed, kGlobalStream);
  Tracker tr("global_invariance", "global", cfg);
  const int n = case_count(cfg, 100);
  for (int i = 0; i < n; ++i) {
    const double t0 = rng.uniform(-1.0, 1.0);
    const PerturbedFamily pf = random_perturbed_family(rng, t0);
    const Jet f = pf.evaluate(t0, kDefaultJetOrder);
    while (true) {
      const GroupElement g = random_group_element(rng);
      try {
        const Jet fg = mobius_act(g, f);
        if (!well_conditioned(fg)) continue;
        const double s = schwarzian_direct(f);
        const double sg = schwarzian_direct(fg);
        tr.record(relative_difference(s, sg), [&] { return with_group(family_params(pf, t0), g); });
        break;
      } catch (const Error&) {
      }
    }
  }
  return tr.finish();
}

CheckResult check_gauge_invariance(const VerifyConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed, kGaugeStream);
  Tracker tr("gauge_invariance", "gauge", cfg);
  run_local_gauge_cases(
      rng, tr, case_count(cfg, 50),
      [](Rng& r) {
        PerturbedFamily pf = random_perturbed_family(r, 0.0);
        GaugePath a = random_polynomial_potential(r, 2, 0.5);
        const GroupPath g = random_local_gauge(r);
        GaugeTransformed moved = gauge_transform(g, a, pf.as_field());
        return GaugeCase{std::move(pf), std::move(a), std::move(moved)};
      },
      [](const Jet& f, const Jet& f2, const GaugeCase& c) {
        return relative_difference(gauged_schwarzian(f, c.a), gauged_schwarzian(f2, c.moved.potential));
      });
  return tr.finish();
}

CheckResult check_pure_gauge_collapse(const VerifyConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed, kPureGaugeStream);
  Tracker tr("pure_gauge_collapse", "pure_gauge", cfg);
  run_local_gauge_cases(
      rng, tr, case_count(cfg, 50),
      [](Rng& r) {
        PerturbedFamily pf = random_perturbed_family(r, 0.0);
        const GroupPath g = random_local_gauge(r);
        FieldPath pulled = mobius_transform(g.inverse(), pf.as_field());
        return PureGaugeCase{std::move(pf), GaugePath::pure_gauge(g), std::move(pulled)};
      },
      [](const Jet& f, const Jet& f2, const PureGaugeCase& c) {
        return relative_difference(gauged_schwarzian(f, c.a), schwarzian_direct(f2));
      });
  return tr.finish();
}

CheckResult check_constant_gauge(const VerifyConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed, kConstantGaugeStream);
  Tracker tr("constant_gauge", "constant_gauge", cfg);
  const int n = case_count(cfg, 20);
  for (const int sector : {-2, -1, 1, 3}) {
    const double ns = sector;
    const GaugePath a = GaugePath::constant(basis::upper(1) * (-2.0 * ns));
    for (int i = 0; i < n; ++i) {
      while (true) {
        const double t0 = rng.uniform(-1.0, 1.0);
        const PerturbedFamily pf = random_perturbed_family(rng, t0);
        const Jet f = pf.evaluate(t0, kDefaultJetOrder);
        if (std::abs(f.deriv(1) - 2.0 * ns * f.value()) < 1e-3) continue;
        try {
          const double numeric = gauged_schwarzian(f, a);
          const double closed = constant_gauge_schwarzian(f, ns);
          const Jet tv = Jet::variable(t0, f.order());
          const double oracle = schwarzian_direct(exp(-2.0 * ns * tv) * f);
          const double r = std::max(relative_difference(numeric, closed), relative_difference(numeric, oracle));
          tr.record(r, [&] {
            Params p = family_params(pf, t0);
            p.emplace_back("n", ns);
            return p;
          });
          break;
        } catch (const Error&) {
        }
      }
    }
  }
  return tr.finish();
}

namespace {

struct ExpansionIntegrals {
  double coarse = 0.0;  // residual integral at eps
  double fine = 0.0;    // residual integral at eps / 2
};

ExpansionIntegrals expansion_residuals(const PeriodicField& field, const GaugePath& a, double eps, int points) {
  ExpansionIntegrals out;
  const double w = kTwoPi / points;
  for (int i = 0; i < points; ++i) {
    const double t = w * i;
    const auto [f, frame] = field.evaluate(t, kDefaultJetOrder);
    const GaugePath framed = gauge_transform(GroupPath::constant(frame), a);
    const double s0 = schwarzian_direct(f);
    const ExpansionTerms terms = expansion_terms(f, framed);
    for (const double e : {eps, 0.5 * eps}) {
      const double s = gauged_schwarzian(f, framed.scaled(e));
      const double r = s - s0 - e * terms.first - e * e * terms.second;
      (e == eps ? out.coarse : out.fine) += w * r;
    }
  }
  return out;
}

}  // namespace

CheckResult check_expansion_order(const VerifyConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed, kExpansionStream);
  Tracker tr("expansion_order", "expansion", cfg);
  tr.result().note = "ratio of the integrated residual at eps = 1e-2 and eps = 5e-3; cubic scaling gives 8";
  const int n = case_count(cfg, 10);
  Params ratios;
  for (int i = 0; i < n; ++i) {
    const PeriodicField field = random_periodic_field(rng);
    const GaugePath a = random_periodic_potential(rng, 2, 0.25);
    const ExpansionIntegrals r = expansion_residuals(field, a, 1e-2, 256);
    const double ratio = r.coarse / r.fine;
    ratios.emplace_back("ratio_" + std::to_string(i), ratio);
    tr.record(std::abs(ratio - 8.0), [&] {
      return Params{{"case", i}, {"ratio", ratio}, {"residual_eps", r.coarse}, {"residual_half_eps", r.fine}};
    });
  }
  CheckResult res = tr.finish();
  res.worst_case.insert(res.worst_case.end(), ratios.begin(), ratios.end());
  return res;
}

CheckResult check_winding_rotation(const VerifyConfig& cfg) {
  cfg.validate();
  Tracker tr("winding_rotation", "holonomy", cfg);
  tr.result().note = "angle_lift must equal m exactly; residual is the holonomy distance from the identity";
  WindingOptions opts;
  opts.steps = cfg.holonomy_steps;
  for (int m = -3; m <= 3; ++m) {
    const WindingResult w = winding(GaugePath::pure_gauge(GroupPath::rotation_loop(m)), std::nullopt, opts);
    const bool exact = w.angle_lift && *w.angle_lift == m;
    tr.record(exact ? w.closure_error : kInf, [&] {
      return Params{{"m", m}, {"angle_lift", w.angle_lift ? *w.angle_lift : std::nan("")},
                    {"closure_error", w.closure_error}};
    });
  }
  return tr.finish();
}

CheckResult check_winding_literal(const VerifyConfig& cfg) {
  cfg.validate();
  Tracker tr("winding_literal", "winding", cfg);
  tr.result().note =
      "literal winding integral on A = -2n T^1 evaluates to -2n, while the conventional sector label of this potential is n; "
      "exp(t T^1) is non-compact, so the holonomy is not the identity for n != 0 and angle_lift is "
      "undefined";
  WindingOptions opts;
  opts.steps = cfg.holonomy_steps;
  for (int n = -2; n <= 3; ++n) {
    const WindingResult w = winding(GaugePath::constant(basis::upper(1) * (-2.0 * n)), std::nullopt, opts);
    double r = std::abs(w.paper_value + 2.0 * n);
    if ((n != 0) == w.trivializable) r = kInf;
    tr.record(r, [&] { return Params{{"n", n}, {"paper_value", w.paper_value}, {"closure_error", w.closure_error}}; });
  }
  return tr.finish();
}

Report run_verify(const VerifyConfig& cfg) {
  cfg.validate();
  Report rep{cfg.seed, {}};
  rep.checks.push_back(check_identity_suite(cfg));
  rep.checks.push_back(check_schwarzian_trace(cfg));
  rep.checks.push_back(check_global_invariance(cfg));
  rep.checks.push_back(check_gauge_invariance(cfg));
  rep.checks.push_back(check_constant_gauge(cfg));
  rep.checks.push_back(check_expansion_order(cfg));
  rep.checks.push_back(check_winding_rotation(cfg));
  rep.checks.push_back(check_winding_literal(cfg));
  return rep;
}

Report run_gauge_check(const VerifyConfig& cfg) {
  cfg.validate();
  Report rep{cfg.seed, {}};
  rep.checks.push_back(check_gauge_invariance(cfg));
  rep.checks.push_back(check_pure_gauge_collapse(cfg));
  rep.checks.push_back(check_constant_gauge(cfg));
  return rep;
}

Report run_expand(const VerifyConfig& cfg) {
  cfg.validate();
  return Report{cfg.seed, {check_expansion_order(cfg)}};
}

std::string to_json(const Report& report) {
  nlohmann::ordered_json doc;
  doc["seed"] = report.seed;
  doc["pass"] = report.passed();
  auto& checks = doc["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json o;
    o["check_name"] = c.name;
    o["max_residual"] = c.max_residual;
    o["tolerance"] = c.tolerance;
    o["tolerance_name"] = c.tolerance_name;
    o["pass"] = c.pass;
    o["cases"] = c.cases;
    nlohmann::ordered_json wc = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.worst_case) wc[k] = v;
    o["worst_case"] = std::move(wc);
    if (!c.note.empty()) o["note"] = c.note;
    checks.push_back(std::move(o));
  }
  return doc.dump(2) + "\n";
}

}  // namespace gschw
