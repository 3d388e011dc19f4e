#include "gschw/gschw.h"

#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "gschw/dynamics.hpp"
#include "gschw/error.hpp"
#include "gschw/gauge.hpp"
#include "gschw/suite.hpp"
#include "gschw/trajectory_io.hpp"

struct gschw_config {
  gschw::VerifyConfig verify;
  gschw::Grid grid{0.0, 10.0, 1e-3};
};

struct gschw_report {
  gschw::Report report;
  std::string json;
};

struct gschw_trajectory {
  gschw::Trajectory traj;
  std::optional<gschw::FirstOrderTrajectory> first_order;
  double reference_error = -1.0;
  std::string csv;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

gschw_status status_of(gschw::ErrorKind kind) {
  using gschw::ErrorKind;
  switch (kind) {
    case ErrorKind::invalid_argument: return GSCHW_ERR_INVALID_ARGUMENT;
    case ErrorKind::singular_denominator: return GSCHW_ERR_SINGULAR_DENOMINATOR;
    case ErrorKind::critical_point: return GSCHW_ERR_CRITICAL_POINT;
    case ErrorKind::mobius_singularity: return GSCHW_ERR_MOBIUS_SINGULARITY;
    case ErrorKind::degenerate: return GSCHW_ERR_DEGENERATE;
    case ErrorKind::pole: return GSCHW_ERR_POLE;
    case ErrorKind::approaching_critical_point: return GSCHW_ERR_APPROACHING_CRITICAL_POINT;
    case ErrorKind::blow_up: return GSCHW_ERR_BLOW_UP;
    case ErrorKind::gauge_singular: return GSCHW_ERR_GAUGE_SINGULAR;
    case ErrorKind::not_a_loop: return GSCHW_ERR_NOT_A_LOOP;
    case ErrorKind::parse: return GSCHW_ERR_PARSE;
  }
  return GSCHW_ERR_INTERNAL;
}

template <class Fn>
gschw_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GSCHW_OK;
  } catch (const gschw::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GSCHW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return GSCHW_ERR_INTERNAL;
  }
}

gschw_status null_argument(const char* what) {
  g_last_error = std::string("null ") + what;
  return GSCHW_ERR_INVALID_ARGUMENT;
}

gschw_status make_report(const gschw_config* cfg, gschw_report** out, gschw::Report (*run)(const gschw::VerifyConfig&)) {
  if (!cfg) return null_argument("config");
  if (!out) return null_argument("output pointer");
  *out = nullptr;
  return guarded([&] {
    auto rep = std::make_unique<gschw_report>();
    rep->report = run(cfg->verify);
    rep->json = gschw::to_json(rep->report);
    *out = rep.release();
  });
}

}  // namespace

extern "C" {

const char* gschw_status_string(gschw_status status) {
  switch (status) {
    case GSCHW_OK: return "ok";
    case GSCHW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GSCHW_ERR_SINGULAR_DENOMINATOR: return "singular denominator";
    case GSCHW_ERR_CRITICAL_POINT: return "critical point";
    case GSCHW_ERR_MOBIUS_SINGULARITY: return "Möbius singularity";
    case GSCHW_ERR_DEGENERATE: return "degenerate Möbius";
    case GSCHW_ERR_POLE: return "pole";
    case GSCHW_ERR_APPROACHING_CRITICAL_POINT: return "approaching critical point";
    case GSCHW_ERR_BLOW_UP: return "blow-up";
    case GSCHW_ERR_GAUGE_SINGULAR: return "gauge-singular point";
    case GSCHW_ERR_NOT_A_LOOP: return "not a loop";
    case GSCHW_ERR_PARSE: return "parse error";
    case GSCHW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gschw_last_error(void) { return g_last_error.c_str(); }

const char* gschw_version(void) { return "0.1.0"; }

gschw_config* gschw_config_new(void) {
  try {
    return new gschw_config();
  } catch (...) {
    return nullptr;
  }
}

void gschw_config_free(gschw_config* cfg) { delete cfg; }

gschw_status gschw_config_set_seed(gschw_config* cfg, uint64_t seed) {
  if (!cfg) return null_argument("config");
  cfg->verify.seed = seed;
  return GSCHW_OK;
}

gschw_status gschw_config_set_tolerance(gschw_config* cfg, const char* name, double value) {
  if (!cfg) return null_argument("config");
  if (!name) return null_argument("tolerance name");
  return guarded([&] {
    gschw::VerifyConfig trial = cfg->verify;
    trial.tolerances[name] = value;
    trial.validate();
    cfg->verify = std::move(trial);
  });
}

gschw_status gschw_config_set_cases(gschw_config* cfg, int cases) {
  if (!cfg) return null_argument("config");
  return guarded([&] {
    gschw::VerifyConfig trial = cfg->verify;
    trial.cases = cases;
    trial.validate();
    cfg->verify = std::move(trial);
  });
}

gschw_status gschw_config_set_grid(gschw_config* cfg, double t0, double t1, double dt) {
  if (!cfg) return null_argument("config");
  return guarded([&] {
    const gschw::Grid g{t0, t1, dt};
    g.validate();
    cfg->grid = g;
  });
}

gschw_status gschw_config_set_holonomy_steps(gschw_config* cfg, int steps) {
  if (!cfg) return null_argument("config");
  return guarded([&] {
    gschw::VerifyConfig trial = cfg->verify;
    trial.holonomy_steps = steps;
    trial.validate();
    cfg->verify = std::move(trial);
  });
}

gschw_status gschw_verify(const gschw_config* cfg, gschw_report** out) {
  return make_report(cfg, out, gschw::run_verify);
}

gschw_status gschw_gauge_check(const gschw_config* cfg, gschw_report** out) {
  return make_report(cfg, out, gschw::run_gauge_check);
}

gschw_status gschw_expand(const gschw_config* cfg, gschw_report** out) {
  return make_report(cfg, out, gschw::run_expand);
}

void gschw_report_free(gschw_report* report) { delete report; }

int gschw_report_passed(const gschw_report* report) { return report && report->report.passed() ? 1 : 0; }

size_t gschw_report_check_count(const gschw_report* report) { return report ? report->report.checks.size() : 0; }

gschw_status gschw_report_check(const gschw_report* report, size_t index, const char** name, double* max_residual,
                                double* tolerance, int* pass) {
  if (!report) return null_argument("report");
  if (index >= report->report.checks.size()) {
    g_last_error = "check index out of range";
    return GSCHW_ERR_INVALID_ARGUMENT;
  }
  const auto& c = report->report.checks[index];
  if (name) *name = c.name.c_str();
  if (max_residual) *max_residual = c.max_residual;
  if (tolerance) *tolerance = c.tolerance;
  if (pass) *pass = c.pass ? 1 : 0;
  return GSCHW_OK;
}

const char* gschw_report_json(const gschw_report* report) { return report ? report->json.c_str() : ""; }

gschw_status gschw_simulate_family(const gschw_config* cfg, double a, double b, double c, double d, double qsq,
                                   gschw_trajectory** out) {
  if (!cfg) return null_argument("config");
  if (!out) return null_argument("output pointer");
  *out = nullptr;
  return guarded([&] {
    const gschw::SolutionFamily fam{a, b, c, d, qsq};
    const gschw::Jet j = gschw::family_eval(fam, cfg->grid.t0, 3);
    auto t = std::make_unique<gschw_trajectory>();
    t->traj = gschw::integrate_schwarzian({j.value(), j.deriv(1), j.deriv(2), j.deriv(3)}, cfg->grid);
    double err = 0.0;
    for (const auto& s : t->traj.samples)
      err = std::max(err, std::abs(s.f - gschw::family_eval(fam, s.t, 1).value()));
    t->reference_error = err;
    *out = t.release();
  });
}

gschw_status gschw_simulate_first_order(const gschw_config* cfg, double x0, double v0, double lambda,
                                        gschw_trajectory** out) {
  if (!cfg) return null_argument("config");
  if (!out) return null_argument("output pointer");
  *out = nullptr;
  return guarded([&] {
    const gschw::Grid& g = cfg->grid;
    const gschw::FirstOrderTrajectory fo = gschw::integrate_first_order(x0, v0, lambda, g);
    auto t = std::make_unique<gschw_trajectory>();
    double err = 0.0;
    for (std::size_t i = 0; i < fo.states.size(); ++i) {
      const double ti = fo.trajectory.samples[i].t;
      err = std::max(err, std::abs(fo.states[i].x - gschw::closed_form_x(x0, v0, lambda, ti - g.t0)));
    }
    t->traj = fo.trajectory;
    t->first_order = fo;
    t->reference_error = err;
    *out = t.release();
  });
}

gschw_status gschw_simulate_initial(const gschw_config* cfg, double f, double f1, double f2, double f3,
                                    gschw_trajectory** out) {
  if (!cfg) return null_argument("config");
  if (!out) return null_argument("output pointer");
  *out = nullptr;
  return guarded([&] {
    auto t = std::make_unique<gschw_trajectory>();
    t->traj = gschw::integrate_schwarzian({f, f1, f2, f3}, cfg->grid);
    *out = t.release();
  });
}

void gschw_trajectory_free(gschw_trajectory* traj) { delete traj; }

size_t gschw_trajectory_size(const gschw_trajectory* traj) { return traj ? traj->traj.samples.size() : 0; }

gschw_status gschw_trajectory_sample(const gschw_trajectory* traj, size_t index, double row[9]) {
  if (!traj) return null_argument("trajectory");
  if (!row) return null_argument("row");
  if (index >= traj->traj.samples.size()) {
    g_last_error = "sample index out of range";
    return GSCHW_ERR_INVALID_ARGUMENT;
  }
  const auto& s = traj->traj.samples[index];
  const double vals[9] = {s.t, s.f, s.f1, s.f2, s.f3, s.N0, s.N1, s.N2, s.schwarzian};
  for (int i = 0; i < 9; ++i) row[i] = vals[i];
  return GSCHW_OK;
}

double gschw_trajectory_charge_drift(const gschw_trajectory* traj) {
  return traj ? traj->traj.charge_drift() : std::numeric_limits<double>::quiet_NaN();
}

double gschw_trajectory_schwarzian_drift(const gschw_trajectory* traj) {
  return traj ? traj->traj.schwarzian_drift() : std::numeric_limits<double>::quiet_NaN();
}

double gschw_trajectory_reference_error(const gschw_trajectory* traj) {
  return traj ? traj->reference_error : std::numeric_limits<double>::quiet_NaN();
}

const char* gschw_trajectory_csv(gschw_trajectory* traj) {
  if (!traj) return "";
  if (traj->csv.empty()) traj->csv = traj->first_order ? gschw::to_csv(*traj->first_order) : gschw::to_csv(traj->traj);
  return traj->csv.c_str();
}

const char* gschw_trajectory_json(gschw_trajectory* traj) {
  if (!traj) return "";
  if (traj->json.empty())
    traj->json = traj->first_order ? gschw::to_json(*traj->first_order) : gschw::to_json(traj->traj);
  return traj->json.c_str();
}

gschw_status gschw_winding(const char* potential_spec, int steps, gschw_winding_result* out) {
  if (!potential_spec) return null_argument("potential spec");
  if (!out) return null_argument("result");
  return guarded([&] {
    gschw::WindingOptions opts;
    if (steps > 0) opts.steps = steps;
    const gschw::WindingResult w = gschw::winding(gschw::parse_gauge_spec(potential_spec), std::nullopt, opts);
    const gschw::Matrix& h = w.holonomy.matrix();
    *out = gschw_winding_result{w.paper_value, w.angle_lift ? 1 : 0, w.angle_lift.value_or(0),
                                {h.a, h.b, h.c, h.d}, w.closure_error, w.trivializable ? 1 : 0};
  });
}

gschw_status gschw_schwarzian(double f1, double f2, double f3, double* out) {
  if (!out) return null_argument("output pointer");
  return guarded([&] { *out = gschw::schwarzian_from_derivatives(f1, f2, f3); });
}

gschw_status gschw_noether_charges(double f, double f1, double f2, double f3, double out[3]) {
  if (!out) return null_argument("output pointer");
  return guarded([&] {
    const auto n = gschw::charges_from_derivatives(f, f1, f2, f3);
    out[0] = n[0];
    out[1] = n[1];
    out[2] = n[2];
  });
}

}  // extern "C"
