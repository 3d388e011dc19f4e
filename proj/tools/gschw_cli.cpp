#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gschw/gschw.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct ConfigDeleter {
  void operator()(gschw_config* c) const { gschw_config_free(c); }
};
struct ReportDeleter {
  void operator()(gschw_report* r) const { gschw_report_free(r); }
};
struct TrajectoryDeleter {
  void operator()(gschw_trajectory* t) const { gschw_trajectory_free(t); }
};

struct Options {
  std::uint64_t seed = 42;
  std::vector<std::string> tolerances;
  std::optional<int> cases;
  std::string out;
  std::string format = "json";
  double t0 = 0.0;
  double t1 = 10.0;
  double dt = 1e-3;
  std::optional<int> holonomy_steps;
};

std::string num(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

int report_error(gschw_status st) {
  std::cerr << "error: " << gschw_last_error() << '\n';
  switch (st) {
    case GSCHW_ERR_APPROACHING_CRITICAL_POINT:
    case GSCHW_ERR_BLOW_UP:
    case GSCHW_ERR_POLE:
    case GSCHW_ERR_CRITICAL_POINT:
    case GSCHW_ERR_GAUGE_SINGULAR:
    case GSCHW_ERR_INTERNAL:
      return kExitFail;
    default:
      return kExitUsage;
  }
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

bool parse_doubles(const std::string& text, std::size_t count, std::vector<double>& out, const char* what) {
  out.clear();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0;
    const char* b = item.data();
    const char* e = b + item.size();
    while (b < e && *b == ' ') ++b;
    if (b < e && *b == '+') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e) {
      std::cerr << "error: " << what << ": cannot parse '" << item << "'\n";
      return false;
    }
    out.push_back(v);
  }
  if (out.size() != count) {
    std::cerr << "error: " << what << " expects " << count << " comma-separated numbers\n";
    return false;
  }
  return true;
}

int build_config(const Options& o, std::unique_ptr<gschw_config, ConfigDeleter>& cfg) {
  cfg.reset(gschw_config_new());
  if (!cfg) {
    std::cerr << "error: out of memory\n";
    return kExitFail;
  }
  gschw_status st = gschw_config_set_seed(cfg.get(), o.seed);
  if (st != GSCHW_OK) return report_error(st);
  for (const auto& entry : o.tolerances) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --tol expects name=value, got '" << entry << "'\n";
      return kExitUsage;
    }
    std::vector<double> v;
    if (!parse_doubles(entry.substr(eq + 1), 1, v, "--tol")) return kExitUsage;
    st = gschw_config_set_tolerance(cfg.get(), entry.substr(0, eq).c_str(), v[0]);
    if (st != GSCHW_OK) return report_error(st);
  }
  if (o.cases) {
    st = gschw_config_set_cases(cfg.get(), *o.cases);
    if (st != GSCHW_OK) return report_error(st);
  }
  if (o.holonomy_steps) {
    st = gschw_config_set_holonomy_steps(cfg.get(), *o.holonomy_steps);
    if (st != GSCHW_OK) return report_error(st);
  }
  st = gschw_config_set_grid(cfg.get(), o.t0, o.t1, o.dt);
  if (st != GSCHW_OK) return report_error(st);
  return kExitPass;
}

std::string report_csv(const gschw_report* rep) {
  std::string s = "check_name,max_residual,tolerance,pass\n";
  for (std::size_t i = 0; i < gschw_report_check_count(rep); ++i) {
    const char* name = nullptr;
    double r = 0, tol = 0;
    int pass = 0;
    gschw_report_check(rep, i, &name, &r, &tol, &pass);
    s += std::string(name) + ',' + num(r) + ',' + num(tol) + ',' + (pass ? "true" : "false") + '\n';
  }
  return s;
}

using SuiteFn = gschw_status (*)(const gschw_config*, gschw_report**);

int run_suite(const Options& o, SuiteFn fn) {
  std::unique_ptr<gschw_config, ConfigDeleter> cfg;
  if (int rc = build_config(o, cfg); rc != kExitPass) return rc;
  gschw_report* raw = nullptr;
  if (gschw_status st = fn(cfg.get(), &raw); st != GSCHW_OK) return report_error(st);
  std::unique_ptr<gschw_report, ReportDeleter> rep(raw);

  const std::string text = o.format == "csv" ? report_csv(rep.get()) : std::string(gschw_report_json(rep.get())) + '\n';
  if (!write_output(o.out, text)) return kExitUsage;

  for (std::size_t i = 0; i < gschw_report_check_count(rep.get()); ++i) {
    const char* name = nullptr;
    double r = 0, tol = 0;
    int pass = 0;
    gschw_report_check(rep.get(), i, &name, &r, &tol, &pass);
    if (!pass) std::cerr << "FAIL " << name << ": max_residual " << num(r) << " > tolerance " << num(tol) << '\n';
  }
  return gschw_report_passed(rep.get()) ? kExitPass : kExitFail;
}

struct SimulateSource {
  std::string family;
  std::string firstorder;
  std::string init;
};

int run_simulate(const Options& o, const SimulateSource& src) {
  const int given = !src.family.empty() + !src.firstorder.empty() + !src.init.empty();
  if (given != 1) {
    std::cerr << "error: simulate needs exactly one of --family, --firstorder, --init\n";
    return kExitUsage;
  }
  std::unique_ptr<gschw_config, ConfigDeleter> cfg;
  if (int rc = build_config(o, cfg); rc != kExitPass) return rc;

  std::vector<double> p;
  gschw_trajectory* raw = nullptr;
  gschw_status st = GSCHW_OK;
  if (!src.family.empty()) {
    if (!parse_doubles(src.family, 5, p, "--family")) return kExitUsage;
    st = gschw_simulate_family(cfg.get(), p[0], p[1], p[2], p[3], p[4], &raw);
  } else if (!src.firstorder.empty()) {
    if (!parse_doubles(src.firstorder, 3, p, "--firstorder")) return kExitUsage;
    st = gschw_simulate_first_order(cfg.get(), p[0], p[1], p[2], &raw);
  } else {
    if (!parse_doubles(src.init, 4, p, "--init")) return kExitUsage;
    st = gschw_simulate_initial(cfg.get(), p[0], p[1], p[2], p[3], &raw);
  }
  if (st != GSCHW_OK) return report_error(st);
  std::unique_ptr<gschw_trajectory, TrajectoryDeleter> traj(raw);

  const std::string text = o.format == "csv" ? gschw_trajectory_csv(traj.get()) : gschw_trajectory_json(traj.get());
  if (!write_output(o.out, text)) return kExitUsage;

  std::ostream& summary = o.out.empty() ? std::cerr : std::cout;
  summary << "samples " << gschw_trajectory_size(traj.get()) << " charge_drift "
          << num(gschw_trajectory_charge_drift(traj.get())) << " schwarzian_drift "
          << num(gschw_trajectory_schwarzian_drift(traj.get()));
  const double ref = gschw_trajectory_reference_error(traj.get());
  if (ref >= 0) summary << " reference_error " << num(ref);
  summary << '\n';
  return kExitPass;
}

int run_winding(const Options& o, const std::string& potential, int steps) {
  gschw_winding_result w{};
  if (gschw_status st = gschw_winding(potential.c_str(), steps, &w); st != GSCHW_OK) return report_error(st);
  std::string text;
  const std::string lift = w.has_angle_lift ? num(w.angle_lift) : "undefined";
  if (o.format == "json") {
    text = "{\n  \"potential\": \"" + potential + "\",\n  \"paper_value\": " + num(w.paper_value) +
           ",\n  \"angle_lift\": " + (w.has_angle_lift ? num(w.angle_lift) : "null") + ",\n  \"holonomy\": [[" +
           num(w.holonomy[0]) + ", " + num(w.holonomy[1]) + "], [" + num(w.holonomy[2]) + ", " +
           num(w.holonomy[3]) + "]],\n  \"closure_error\": " + num(w.closure_error) +
           ",\n  \"trivializable\": " + (w.trivializable ? "true" : "false") + "\n}\n";
  } else {
    text = "paper_value " + num(w.paper_value) + "\nangle_lift " + lift + "\nholonomy " + num(w.holonomy[0]) + ' ' +
           num(w.holonomy[1]) + ' ' + num(w.holonomy[2]) + ' ' + num(w.holonomy[3]) + "\nclosure_error " +
           num(w.closure_error) + "\ntrivializable " + (w.trivializable ? "yes" : "no") + '\n';
  }
  return write_output(o.out, text) ? kExitPass : kExitUsage;
}

void add_common(CLI::App* sub, Options& o, bool grid) {
  sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  sub->add_option("--tol", o.tolerances, "Tolerance override name=value (repeatable)")->take_all();
  sub->add_option("--out", o.out, "Output path (default stdout)");
  if (grid) {
    sub->add_option("--t0", o.t0, "Grid start")->capture_default_str();
    sub->add_option("--t1", o.t1, "Grid end")->capture_default_str();
    sub->add_option("--dt", o.dt, "Grid step")->capture_default_str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gauged Schwarzian numerics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gschw_version());

  Options o;
  SimulateSource src;
  std::string potential;
  int winding_steps = 4096;

  auto* verify = app.add_subcommand("verify", "Run the full verification suite");
  add_common(verify, o, false);
  verify->add_option("--cases", o.cases, "Randomized cases per check");
  verify->add_option("--holonomy-steps", o.holonomy_steps, "Holonomy product steps");
  verify->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));

  auto* gauge = app.add_subcommand("gauge-check", "Run the gauge-invariance checks");
  add_common(gauge, o, false);
  gauge->add_option("--cases", o.cases, "Randomized cases per check");
  gauge->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));

  auto* expand = app.add_subcommand("expand", "Run the expansion-order check");
  add_common(expand, o, false);
  expand->add_option("--cases", o.cases, "Randomized cases");
  expand->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));

  auto* simulate = app.add_subcommand("simulate", "Integrate a trajectory");
  add_common(simulate, o, true);
  simulate->add_option("--family", src.family, "Exact family a,b,c,d,qsq");
  simulate->add_option("--firstorder", src.firstorder, "First-order system x0,v0,lambda");
  simulate->add_option("--init", src.init, "Initial data f,f1,f2,f3");
  simulate->add_option("--format", o.format, "Trajectory format")->check(CLI::IsMember({"csv", "json"}));

  auto* wind = app.add_subcommand("winding", "Holonomy and winding of a periodic potential");
  add_common(wind, o, false);
  wind->add_option("--potential", potential, "const:A0,A1,A2 | fourier:M:file | puregauge:rot:m")->required();
  wind->add_option("--steps", winding_steps, "Holonomy steps")->capture_default_str();
  wind->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  if (*verify) return run_suite(o, gschw_verify);
  if (*gauge) return run_suite(o, gschw_gauge_check);
  if (*expand) return run_suite(o, gschw_expand);
  if (*simulate) {
    if (o.format == "json" && simulate->count("--format") == 0) o.format = "csv";
    return run_simulate(o, src);
  }
  if (*wind) {
    if (wind->count("--format") == 0) o.format = "text";
    if (winding_steps <= 0) {
      std::cerr << "error: --steps must be positive\n";
      return kExitUsage;
    }
    return run_winding(o, potential, winding_steps);
  }
  return kExitUsage;
}
