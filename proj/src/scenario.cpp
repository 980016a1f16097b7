#include "softhand/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <future>
#include <limits>
#include <map>
#include <sstream>

#include "softhand/errors.hpp"

namespace softhand::scenario {

using nlohmann::json;
using controller::ElementTrace;

bool RunReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(),
                     [](const AssertionResult& a) { return a.passed; });
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

class Params {
 public:
  Params(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  bool has(const char* key) const { return j_.contains(key); }

  double number(const char* key) const {
    if (!j_.contains(key) || !j_.at(key).is_number()) {
      throw ConfigError(path_ + "." + key, "must be a number");
    }
    return j_.at(key).get<double>();
  }

  double number(const char* key, double fallback) const {
    return j_.contains(key) ? number(key) : fallback;
  }

  std::vector<double> list(const char* key) const {
    if (!j_.contains(key)) throw ConfigError(path_ + "." + key, "is required");
    const json& v = j_.at(key);
    if (v.is_object()) {
      const Params r(v, path_ + "." + key);
      const double from = r.number("from"), to = r.number("to"), step = r.number("step");
      if (!(step > 0.0) || !(to >= from)) {
        throw ConfigError(path_ + "." + key, "range needs step > 0 and to >= from");
      }
      std::vector<double> out;
      const long n = std::lround(std::floor((to - from) / step + 1e-9));
      for (long i = 0; i <= n; ++i) out.push_back(from + static_cast<double>(i) * step);
      return out;
    }
    if (!v.is_array() || v.empty()) {
      throw ConfigError(path_ + "." + key, "must be a non-empty array or {from, to, step}");
    }
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(path_ + "." + key, "must contain numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

  bool flag(const char* key, bool fallback) const {
    if (!j_.contains(key)) return fallback;
    if (!j_.at(key).is_boolean()) throw ConfigError(path_ + "." + key, "must be true or false");
    return j_.at(key).get<bool>();
  }

  std::string text(const char* key, const std::string& fallback) const {
    if (!j_.contains(key)) return fallback;
    if (!j_.at(key).is_string()) throw ConfigError(path_ + "." + key, "must be a string");
    return j_.at(key).get<std::string>();
  }

  Params child(const char* key) const {
    if (!j_.contains(key) || !j_.at(key).is_object()) {
      throw ConfigError(path_ + "." + key, "must be an object");
    }
    return Params(j_.at(key), path_ + "." + key);
  }

  const std::string& path() const { return path_; }

 private:
  const json& j_;
  std::string path_;
};

struct RepOutput {
  Repetition rep;
  std::vector<std::pair<double, double>> series;
  std::vector<AssertionResult> checks;
};

std::string fmt(double v) { return csv::number(v); }

AssertionResult check(std::string name, bool ok, const std::string& detail) {
  return {std::move(name), ok, detail};
}

// Monotonicity of the series' y values; mode "increasing" or "non_decreasing".
AssertionResult monotone(const std::vector<std::pair<double, double>>& s, const std::string& mode) {
  const bool strict = mode == "increasing";
  if (!strict && mode != "non_decreasing") {
    throw ConfigError("assertions.monotone", "must be 'increasing' or 'non_decreasing'");
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    const bool ok = strict ? s[i].second > s[i - 1].second : s[i].second >= s[i - 1].second;
    if (!ok) {
      return check("monotone", false,
                   "breaks between x = " + fmt(s[i - 1].first) + " and " + fmt(s[i].first));
    }
  }
  return check("monotone", true, mode + " over " + std::to_string(s.size()) + " points");
}

void add_monotone(const Params& a, RepOutput& out) {
  if (a.has("monotone")) out.checks.push_back(monotone(out.series, a.text("monotone", "")));
}

// ---- quasi-static sweeps ---------------------------------------------------

RepOutput elongation_sweep(const config::Config& cfg, const Params& p, const Params& a) {
  RepOutput out;
  csv::Table t{{"pressure_kPa", "elongation_mm", "axial_stretch", "chamber_volume_ml"}, {}};
  for (double pk : p.list("pressures_kPa")) {
    const auto r = actuator::axial_stretch_for_pressure(cfg.finger.actuator, pk * units::kPa);
    t.rows.push_back({fmt(pk), fmt(r.elongation / units::mm), fmt(r.axial_stretch),
                      fmt(r.chamber_volume * 1e6)});
    out.series.emplace_back(pk, r.elongation / units::mm);
  }
  out.rep.files.emplace_back("", std::move(t));
  add_monotone(a, out);
  return out;
}

RepOutput deflection_sweep(const config::Config& cfg, const Params& p, const Params& a) {
  RepOutput out;
  const auto& spec = cfg.finger.exoskeleton;
  const bool gravity = p.flag("gravity", true);
  csv::Table t{{"load_N", "displacement_m"}, {}};
  for (double load : p.list("loads_N")) {
    const auto s = exoskeleton::deflection_under_load(spec, load, gravity);
    t.rows.push_back({fmt(load), fmt(s.fingertip_vertical_displacement)});
    out.series.emplace_back(load, s.fingertip_vertical_displacement);
  }
  out.rep.files.emplace_back("", std::move(t));
  add_monotone(a, out);
  if (a.flag("gravity_sag", false)) {
    const double d = exoskeleton::deflection_under_load(spec, 0.0, true).fingertip_vertical_displacement;
    out.checks.push_back(check("gravity_sag", d > 0.0, "zero-load sag " + fmt(d * 1e3) + " mm"));
  }
  if (a.has("energy_balance")) {
    const double tol = a.number("energy_balance");
    double worst = 0.0;
    for (double load : p.list("loads_N")) {
      if (load <= 0.0) continue;
      const auto s = exoskeleton::deflection_under_load(spec, load, false);
      const double e = exoskeleton::spring_energy(spec, s.joint_angles);
      const double w = exoskeleton::loading_path_work(spec, load, 400);
      worst = std::max(worst, std::abs(w - e) / e);
    }
    out.checks.push_back(check("energy_balance", worst <= tol, "worst mismatch " + fmt(worst)));
  }
  return out;
}

RepOutput finger_sweep(const config::Config& cfg, const Params& p, const Params& a) {
  RepOutput out;
  csv::Table t{{"pressure_kPa", "angle_deg", "displacement_mm", "branch"}, {}};
  for (double pk : p.list("pressures_kPa")) {
    const auto s = finger::bend_with_hysteresis(cfg.finger, {0.0, pk * units::kPa});
    const double deg = units::degrees(s.bending_angle);
    t.rows.push_back({fmt(pk), fmt(deg), fmt(s.fingertip_displacement / units::mm),
                      finger::branch_name(s.branch)});
    out.series.emplace_back(pk, deg);
  }
  out.rep.files.emplace_back("", std::move(t));
  add_monotone(a, out);
  if (a.has("anchor")) {
    const Params an = a.child("anchor");
    const double pk = an.number("pressure_kPa");
    const double want = an.number("angle_deg"), tol = an.number("tolerance_deg");
    const double got =
        units::degrees(finger::bend_with_hysteresis(cfg.finger, {0.0, pk * units::kPa}).bending_angle);
    out.checks.push_back(check("anchor", std::abs(got - want) <= tol,
                               "angle at " + fmt(pk) + " kPa = " + fmt(got) + " deg"));
  }
  return out;
}

RepOutput force_sweep(const config::Config& cfg, const Params& p, const Params& a) {
  RepOutput out;
  const double d = p.number("obstacle_distance_mm", cfg.obstacle_distance / units::mm) * units::mm;
  csv::Table t{{"pressure_kPa", "force_N", "reachable"}, {}};
  for (double pk : p.list("pressures_kPa")) {
    const auto f = finger::fingertip_force(cfg.finger, pk * units::kPa, d);
    t.rows.push_back({fmt(pk), fmt(f.force), f.reachable ? "1" : "0"});
    out.series.emplace_back(pk, f.force);
  }
  out.rep.files.emplace_back("", std::move(t));
  add_monotone(a, out);
  if (a.has("plateau")) {
    const Params pl = a.child("plateau");
    const auto early = pl.list("early_kPa"), late = pl.list("late_kPa");
    if (early.size() != 2 || late.size() != 2) {
      throw ConfigError(pl.path(), "early_kPa and late_kPa need two pressures each");
    }
    const auto force = [&](double pk) {
      return finger::fingertip_force(cfg.finger, pk * units::kPa, d).force;
    };
    const double g_early = force(early[1]) - force(early[0]);
    const double g_late = force(late[1]) - force(late[0]);
    const double ratio = pl.number("max_ratio");
    out.checks.push_back(check("plateau", g_early > 0.0 && g_late < ratio * g_early,
                               "late gain " + fmt(g_late) + " N vs early gain " + fmt(g_early) +
                                   " N"));
  }
  return out;
}

RepOutput hysteresis_loop(const config::Config& cfg, const Params& p, const Params& a) {
  RepOutput out;
  const double peak = p.number("peak_kPa") * units::kPa;
  const double step = p.number("step_kPa") * units::kPa;
  if (!(peak > 0.0) || !(step > 0.0)) throw ConfigError(p.path(), "peak_kPa and step_kPa must be > 0");
  const long n = std::lround(peak / step);
  std::vector<double> history;
  for (long i = 0; i <= n; ++i) history.push_back(peak * static_cast<double>(i) / static_cast<double>(n));
  for (long i = n - 1; i >= 0; --i) history.push_back(history[static_cast<std::size_t>(i)]);

  const auto& spec = cfg.finger;
  const auto& h = spec.hysteresis;
  auto angle_of = [&](double q, double pr) {
    return h.inflate_gain *
           (finger::equilibrium_bend(spec, q).bending_angle - h.transition_slope * (q - pr));
  };
  csv::Table t{{"pressure_kPa", "angle_deg", "displacement_mm", "branch"}, {}};
  finger::HysteresisMemory m;
  std::vector<double> up(static_cast<std::size_t>(n + 1)), down(static_cast<std::size_t>(n + 1));
  for (std::size_t i = 0; i < history.size(); ++i) {
    m = finger::advance(h, m, history[i], angle_of);
    const auto s = finger::hysteresis_state(spec, m);
    const double deg = units::degrees(s.bending_angle);
    t.rows.push_back({fmt(history[i] / units::kPa), fmt(deg),
                      fmt(s.fingertip_displacement / units::mm), finger::branch_name(s.branch)});
    out.series.emplace_back(static_cast<double>(i), deg);
    const std::size_t k = i <= static_cast<std::size_t>(n) ? i : history.size() - 1 - i;
    (i <= static_cast<std::size_t>(n) ? up : down)[k] = deg;
  }
  down[static_cast<std::size_t>(n)] = up[static_cast<std::size_t>(n)];
  out.rep.files.emplace_back("", std::move(t));
  if (a.has("closure_deg")) {
    const double gap = std::abs(down[0] - up[0]);
    out.checks.push_back(check("closure_deg", gap <= a.number("closure_deg"),
                               "return gap " + fmt(gap) + " deg"));
  }
  if (a.flag("deflate_above_inflate", false)) {
    double worst = inf;
    for (std::size_t k = 0; k < up.size(); ++k) worst = std::min(worst, down[k] - up[k]);
    out.checks.push_back(check("deflate_above_inflate", worst >= 0.0,
                               "smallest branch gap " + fmt(worst) + " deg"));
  }
  if (a.has("peak_angle")) {
    const Params pa = a.child("peak_angle");
    const double got = up.back();
    out.checks.push_back(check("peak_angle",
                               std::abs(got - pa.number("angle_deg")) <= pa.number("tolerance_deg"),
                               "peak angle " + fmt(got) + " deg"));
  }
  return out;
}

// ---- closed loop -----------------------------------------------------------

struct LoopContext {
  controller::ElementSetup setup;
  controller::ElementModel model;
  int index = 0;
};

LoopContext loop_context(const config::Config& cfg, const Params& p, double leak) {
  LoopContext c;
  const auto name = p.text("element", cfg.elements.front().name);
  c.index = config::element_index(cfg, name);
  auto setups = config::element_setups(cfg);
  c.setup = setups[static_cast<std::size_t>(c.index)];
  if (leak >= 0.0) {
    c.setup.plant.leak_conductance = leak * cfg.elements[static_cast<std::size_t>(c.index)].plant_scale;
  }
  c.model = controller::build_element_model(c.setup);
  return c;
}

ElementTrace simulate(const LoopContext& c, const std::vector<controller::SetpointEvent>& sched,
                      const std::vector<controller::Disturbance>& dist, double duration,
                      std::uint64_t seed) {
  controller::ClosedLoopOptions o;
  o.duration = duration;
  o.seed = seed;
  return controller::simulate_element(c.setup, c.model, c.index, sched, dist, o);
}

void trace_output(const ElementTrace& tr, const LoopContext& c, RepOutput& out) {
  out.rep.files.emplace_back(c.setup.name, csv::trace_table(tr));
  const long every = std::max(1L, std::lround(c.setup.controller.period / c.setup.plant.plant_step));
  for (std::size_t k = 0; k < tr.rows.size(); k += static_cast<std::size_t>(every)) {
    out.series.emplace_back(tr.rows[k].t, tr.rows[k].true_pressure / units::kPa);
  }
  if (!mutual_exclusion(tr)) out.checks.push_back(check("mutual_exclusion", false, "both valves open"));
}

RepOutput staircase(const config::Config&, const LoopContext& c, const Params& p, const Params& a,
                    std::uint64_t seed) {
  RepOutput out;
  const double step = p.number("step_kPa") * units::kPa;
  const int up = static_cast<int>(p.number("steps_up"));
  const double dwell = p.number("dwell_s");
  const double duration = p.number("duration_s", dwell * (2 * up + 2));
  const auto sched = controller::staircase_schedule(c.index, step, up, dwell);
  const auto tr = simulate(c, sched, {}, duration, seed);
  trace_output(tr, c, out);

  if (a.has("step_band")) {
    const Params sb = a.child("step_band");
    const double below = sb.number("below_kPa") * units::kPa;
    const double above = sb.number("above_kPa") * units::kPa;
    const double settle = sb.number("settle_s");
    std::ostringstream os;
    bool ok = true;
    for (std::size_t i = 0; i < sched.size(); ++i) {
      const double sp = sched[i].setpoint;
      if (sp <= 0.0) continue;
      const double t0 = sched[i].t_start;
      const double t1 = i + 1 < sched.size() ? sched[i + 1].t_start : duration;
      const double ts = settle_time(tr, t0, t1, sp - below, sp + above);
      ok = ok && ts <= settle;
      os << fmt(sp / units::kPa) << " kPa@" << fmt(t0) << "s settles in " << fmt(ts) << " s; ";
    }
    out.checks.push_back(check("step_band", ok, os.str()));
  }
  if (a.flag("below_setpoint", false)) {
    bool ok = true;
    std::ostringstream os;
    for (std::size_t i = 0; i < sched.size(); ++i) {
      const double sp = sched[i].setpoint;
      if (sp <= 0.0) continue;
      const double t0 = sched[i].t_start;
      const double t1 = i + 1 < sched.size() ? sched[i + 1].t_start : duration;
      const double m = mean_true_pressure(tr, 0.5 * (t0 + t1), t1);
      ok = ok && m < sp;
      os << fmt(sp / units::kPa) << " -> " << fmt(m / units::kPa) << " kPa; ";
    }
    out.checks.push_back(check("below_setpoint", ok, os.str()));
  }
  return out;
}

RepOutput hold(const config::Config&, const LoopContext& c, const Params& p, const Params& a,
               std::uint64_t seed) {
  RepOutput out;
  const double sp = p.number("setpoint_kPa") * units::kPa;
  const double duration = p.number("duration_s");
  const auto tr = simulate(c, {{0.0, c.index, sp}}, {}, duration, seed);
  trace_output(tr, c, out);
  const double band = 2.0 * c.setup.controller.deadband;
  double settled = 0.0;
  if (a.has("band_capture_s")) {
    settled = settle_time(tr, 0.0, duration, sp - band, sp + band);
    out.checks.push_back(check("band_capture_s", settled <= a.number("band_capture_s"),
                               "in band for good after " + fmt(settled) + " s"));
  }
  if (a.has("max_transition_rate")) {
    const double t0 = std::isfinite(settled) ? settled : 0.0;
    const double rate = valve_transitions(tr, t0, duration) / std::max(1e-9, duration - t0);
    out.checks.push_back(check("max_transition_rate", rate < a.number("max_transition_rate"),
                               fmt(rate) + " transitions/s after settling"));
  }
  if (a.flag("valves_closed", false)) {
    const int n = valve_transitions(tr, 0.0, duration + 1.0);
    const bool opened = std::any_of(tr.rows.begin(), tr.rows.end(),
                                    [](const auto& r) { return r.valve_in || r.valve_out; });
    out.checks.push_back(check("valves_closed", !opened && n == 0,
                               std::to_string(n) + " valve transitions"));
  }
  if (a.has("flat_kPa")) {
    double dev = 0.0;
    for (const auto& r : tr.rows) dev = std::max(dev, std::abs(r.true_pressure - sp));
    out.checks.push_back(check("flat_kPa", dev <= a.number("flat_kPa") * units::kPa,
                               "max deviation " + fmt(dev / units::kPa) + " kPa"));
  }
  return out;
}

RepOutput leak_recovery(const config::Config&, const LoopContext& c, const Params& p,
                        const Params& a, std::uint64_t seed) {
  RepOutput out;
  const double sp = p.number("setpoint_kPa") * units::kPa;
  const double duration = p.number("duration_s");
  const double t_drop = p.number("disturbance_s", 0.5 * duration);
  const double drop = p.number("disturbance_kPa", 10.0) * units::kPa;
  std::vector<controller::Disturbance> dist;
  if (drop > 0.0) dist.push_back({t_drop, c.index, drop});
  const auto tr = simulate(c, {{0.0, c.index, sp}}, dist, duration, seed);
  trace_output(tr, c, out);
  const double band = 2.0 * c.setup.controller.deadband;
  if (a.has("predicate")) {
    const bool want = a.flag("predicate", true);
    const bool got = pneumatics::leak_tolerable(c.setup.plant, sp);
    out.checks.push_back(check("predicate", got == want,
                               std::string("leak tolerable: ") + (got ? "yes" : "no")));
  }
  if (a.has("mean_window")) {
    const Params mw = a.child("mean_window");
    const double w = mw.number("window_s");
    const double m = mean_true_pressure(tr, duration - w, duration + 1.0);
    out.checks.push_back(check("mean_window",
                               std::abs(m - sp) <= mw.number("tolerance_kPa") * units::kPa,
                               "mean " + fmt(m / units::kPa) + " kPa over the last " + fmt(w) + " s"));
  }
  if (a.has("settles_below_s")) {
    const double w = a.number("settles_below_s");
    const double m = mean_true_pressure(tr, duration - w, duration + 1.0);
    out.checks.push_back(check("settles_below_s", m < sp - band,
                               "mean " + fmt(m / units::kPa) + " kPa over the last " + fmt(w) + " s"));
  }
  const int reopen = std::max(0, inlet_openings(tr, 0.0, duration + 1.0) - 1);
  if (a.has("min_inlet_reactivations")) {
    out.checks.push_back(check("min_inlet_reactivations",
                               reopen >= static_cast<int>(a.number("min_inlet_reactivations")),
                               std::to_string(reopen) + " re-activations"));
  }
  if (a.has("max_inlet_reactivations")) {
    out.checks.push_back(check("max_inlet_reactivations",
                               reopen <= static_cast<int>(a.number("max_inlet_reactivations")),
                               std::to_string(reopen) + " re-activations"));
  }
  if (a.has("recovery_s") && drop > 0.0) {
    const double te = entry_time(tr, t_drop + 1e-9, duration + 1.0, sp - band, sp + band);
    out.checks.push_back(check("recovery_s", te <= a.number("recovery_s"),
                               "back in band " + fmt(te) + " s after the drop"));
  }
  return out;
}

std::vector<SummaryPoint> summarize(const std::vector<RepOutput>& reps) {
  std::map<double, std::vector<double>> by_x;
  for (const auto& r : reps) {
    for (const auto& [x, y] : r.series) by_x[x].push_back(y);
  }
  std::vector<SummaryPoint> out;
  for (const auto& [x, ys] : by_x) {
    SummaryPoint s;
    s.x = x;
    s.n = static_cast<int>(ys.size());
    // Offsets from the first value keep identical repetitions exact.
    double sum = 0.0;
    for (double y : ys) sum += y - ys.front();
    s.mean = ys.front() + sum / s.n;
    double ss = 0.0;
    for (double y : ys) ss += (y - s.mean) * (y - s.mean);
    s.std = s.n > 1 ? std::sqrt(ss / (s.n - 1)) : 0.0;
    out.push_back(s);
  }
  return out;
}

std::vector<AssertionResult> merge(const std::vector<RepOutput>& reps) {
  std::vector<AssertionResult> out;
  for (std::size_t r = 0; r < reps.size(); ++r) {
    for (const auto& c : reps[r].checks) {
      auto it = std::find_if(out.begin(), out.end(),
                             [&](const AssertionResult& a) { return a.name == c.name; });
      const std::string detail = "rep " + std::to_string(r) + ": " + c.detail;
      if (it == out.end()) {
        out.push_back({c.name, c.passed, detail});
      } else if (it->passed && !c.passed) {
        it->passed = false;
        it->detail = detail;
      }
    }
  }
  return out;
}

}  // namespace

RunReport run_scenario(const config::Config& cfg, const std::string& name,
                       std::optional<std::uint64_t> seed) {
  const auto& sc = config::find_scenario(cfg, name);
  const std::string path = "scenarios." + sc.name;
  const Params p(sc.parameters, path + ".parameters");
  const Params a(sc.assertions, path + ".assertions");
  const std::uint64_t base_seed = seed.value_or(sc.seed);

  using Kind = config::ScenarioKind;
  const bool closed_loop =
      sc.kind == Kind::staircase || sc.kind == Kind::hold || sc.kind == Kind::leak_recovery;
  LoopContext ctx;
  if (closed_loop) {
    ctx = loop_context(cfg, p, sc.kind == Kind::leak_recovery ? p.number("leak_conductance") : -1.0);
  }

  const auto one = [&](std::uint64_t s) -> RepOutput {
    switch (sc.kind) {
      case Kind::elongation_sweep: return elongation_sweep(cfg, p, a);
      case Kind::deflection_sweep: return deflection_sweep(cfg, p, a);
      case Kind::finger_sweep: return finger_sweep(cfg, p, a);
      case Kind::force_sweep: return force_sweep(cfg, p, a);
      case Kind::hysteresis_loop: return hysteresis_loop(cfg, p, a);
      case Kind::staircase: return staircase(cfg, ctx, p, a, s);
      case Kind::hold: return hold(cfg, ctx, p, a, s);
      case Kind::leak_recovery: return leak_recovery(cfg, ctx, p, a, s);
    }
    throw ConfigError(path, "unsupported kind");
  };

  std::vector<std::future<RepOutput>> jobs;
  for (int r = 0; r < sc.repetitions; ++r) {
    jobs.push_back(std::async(std::launch::async, one, base_seed + static_cast<std::uint64_t>(r)));
  }
  std::vector<RepOutput> reps;
  for (auto& j : jobs) reps.push_back(j.get());

  RunReport report;
  report.scenario = sc.name;
  report.kind = config::kind_name(sc.kind);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    reps[r].rep.seed = base_seed + r;
    for (auto& [stem, table] : reps[r].rep.files) {
      stem = sc.name + (stem.empty() ? "" : "_" + stem) + "_rep" + std::to_string(r);
    }
  }
  report.summary = summarize(reps);
  report.assertions = merge(reps);
  for (auto& r : reps) report.repetitions.push_back(std::move(r.rep));
  return report;
}

csv::Table summary_table(const std::vector<SummaryPoint>& s) {
  csv::Table t{{"x", "mean", "std", "n"}, {}};
  for (const auto& p : s) {
    t.rows.push_back({csv::number(p.x), csv::number(p.mean), csv::number(p.std),
                      std::to_string(p.n)});
  }
  return t;
}

std::vector<std::string> write_report(const RunReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  for (const auto& rep : report.repetitions) {
    for (const auto& [stem, table] : rep.files) {
      const auto path = (fs::path(out_dir) / (stem + ".csv")).string();
      csv::write_file(path, table);
      written.push_back(path);
    }
  }
  const auto path = (fs::path(out_dir) / (report.scenario + "_summary.csv")).string();
  csv::write_file(path, summary_table(report.summary));
  written.push_back(path);
  return written;
}

namespace {

template <class F>
void for_window(const ElementTrace& tr, double t0, double t1, F&& f) {
  for (const auto& r : tr.rows) {
    if (r.t >= t0 - 1e-9 && r.t < t1 - 1e-9) f(r);
  }
}

}  // namespace

double settle_time(const ElementTrace& tr, double t0, double t1, double lo, double hi) {
  double last_out = -inf, last_t = t0;
  for_window(tr, t0, t1, [&](const controller::TraceRow& r) {
    if (r.sensed < lo || r.sensed > hi) last_out = r.t;
    last_t = r.t;
  });
  if (last_out == -inf) return 0.0;
  if (last_out >= last_t) return inf;
  const double dt = tr.rows.size() > 1 ? tr.rows[1].t - tr.rows[0].t : 0.0;
  return last_out + dt - t0;
}

double entry_time(const ElementTrace& tr, double t0, double t1, double lo, double hi) {
  double first = inf;
  for_window(tr, t0, t1, [&](const controller::TraceRow& r) {
    if (first == inf && r.sensed >= lo && r.sensed <= hi) first = r.t - t0;
  });
  return first;
}

double mean_true_pressure(const ElementTrace& tr, double t0, double t1) {
  double sum = 0.0;
  long n = 0;
  for_window(tr, t0, t1, [&](const controller::TraceRow& r) {
    sum += r.true_pressure;
    ++n;
  });
  return n ? sum / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
}

int valve_transitions(const ElementTrace& tr, double t0, double t1) {
  int n = 0;
  const controller::TraceRow* prev = nullptr;
  for_window(tr, t0, t1, [&](const controller::TraceRow& r) {
    if (prev) n += (r.valve_in != prev->valve_in) + (r.valve_out != prev->valve_out);
    prev = &r;
  });
  return n;
}

int inlet_openings(const ElementTrace& tr, double t0, double t1) {
  int n = 0;
  bool prev = false;
  for_window(tr, t0, t1, [&](const controller::TraceRow& r) {
    if (r.valve_in && !prev) ++n;
    prev = r.valve_in;
  });
  return n;
}

bool mutual_exclusion(const ElementTrace& tr) {
  return std::none_of(tr.rows.begin(), tr.rows.end(),
                      [](const auto& r) { return r.valve_in && r.valve_out; });
}

}  // namespace softhand::scenario
