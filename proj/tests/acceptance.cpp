#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <variant>

#include "softhand/bindings.hpp"
#include "softhand/calibration.hpp"
#include "softhand/config.hpp"
#include "softhand/materials.hpp"
#include "softhand/scenario.hpp"
#include "softhand/units.hpp"

using namespace softhand;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double identity_stress_tol = 1e-9;
constexpr double fd_stress_tol = 1e-5;
constexpr double material_budget_s = 1.0;
constexpr double barreling_min = 1.02;
constexpr double barreling_oracle = 1.50087695489408;
constexpr double energy_balance_tol = 0.02;
constexpr double anchor_deg = 95.0, anchor_tol_deg = 10.0, closure_tol_deg = 0.5;
constexpr double calibration_budget_s = 60.0, check_budget_s = 1.0;
constexpr double plateau_ratio = 0.10;
constexpr double staircase_below_kPa = 2.0, staircase_settle_s = 2.0;
constexpr double max_transition_rate = 4.0, rate_window_s = 10.0;
constexpr double leak_mean_tol_kPa = 2.0, leak_case_budget_s = 10.0;
constexpr int sustained_openings = 10;
constexpr double round_trip_tol = 0.01;

const std::string config_path = std::string(SOFTHAND_SOURCE_DIR) + "/config/default.json";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome materials_check() {
  const auto t0 = Clock::now();
  double worst_identity = 0.0, worst_fd = 0.0;
  for (const char* name : {"ogden_set1", "ogden_set2", "ogden_set3", "mr_set1", "mr_set2",
                           "mr_set3"}) {
    const auto m = *materials::find_preset(name);
    const double mu0 = materials::small_strain_shear_modulus(m);
    auto w = [&](double l) {
      const auto s = materials::PrincipalStretches::uniaxial(l);
      if (auto* o = std::get_if<materials::OgdenParameters>(&m)) return materials::ogden_energy(*o, s);
      return materials::mr_energy(std::get<materials::MooneyRivlinParameters>(m), s);
    };
    auto sigma = [&](double l) {
      if (auto* o = std::get_if<materials::OgdenParameters>(&m)) {
        return materials::ogden_uniaxial_stress(*o, l);
      }
      return materials::mr_uniaxial_stress(std::get<materials::MooneyRivlinParameters>(m), l);
    };
    worst_identity = std::max(worst_identity, std::abs(sigma(1.0)) / mu0);
    for (int i = 0; i <= 180; ++i) {
      const double l = 0.7 + 0.01 * i;
      const double h = 1e-5 * l;
      const double fd = l * (w(l + h) - w(l - h)) / (2.0 * h);
      const double s = sigma(l);
      if (std::abs(s) < 1e-6 * mu0) continue;
      worst_fd = std::max(worst_fd, std::abs(fd - s) / std::abs(s));
    }
  }
  const double t = seconds_since(t0);
  return {worst_identity < identity_stress_tol && worst_fd < fd_stress_tol && t < material_budget_s,
          fmt("max |sigma(1)|/mu0 %.2e, max FD error %.2e, %.3f s", worst_identity, worst_fd, t)};
}

Outcome ordering_check() {
  using namespace materials;
  const double o1 = small_strain_shear_modulus(ogden_set1());
  const double o2 = small_strain_shear_modulus(ogden_set2());
  const double o3 = small_strain_shear_modulus(ogden_set3());
  const double m1 = small_strain_shear_modulus(mr_set1());
  const double m2 = small_strain_shear_modulus(mr_set2());
  const double m3 = small_strain_shear_modulus(mr_set3());
  double e[3];
  const OgdenParameters sets[] = {ogden_set1(), ogden_set2(), ogden_set3()};
  for (int i = 0; i < 3; ++i) {
    actuator::ActuatorSpec a;
    a.silicone = sets[i];
    e[i] = actuator::axial_stretch_for_pressure(a, 40e3).elongation / units::mm;
  }
  return {o1 > o2 && o2 > o3 && m1 > m2 && m2 > m3 && e[0] < e[1] && e[1] < e[2],
          fmt("Ogden mu0 %.0f > %.0f > %.0f Pa, MR mu0 %.3g > %.3g > %.3g Pa, "
              "elongation %.2f < %.2f < %.2f mm",
              o1, o2, o3, m1, m2, m3, e[0], e[1], e[2])};
}

Outcome reinforcement_check() {
  const actuator::ActuatorSpec a;
  const double on = actuator::barreling_check(a, 40e3, true);
  const double off = actuator::barreling_check(a, 40e3, false);
  const bool oracle = std::abs(off - barreling_oracle) < 1e-9 * barreling_oracle;
  return {on == 1.0 && off > barreling_min && oracle,
          fmt("radial stretch %.6f with rings, %.11f without (oracle %.11f)", on, off,
              barreling_oracle)};
}

Outcome exoskeleton_check(const config::Config& cfg) {
  const auto& spec = cfg.finger.exoskeleton;
  const double sag = exoskeleton::deflection_under_load(spec, 0.0, true).fingertip_vertical_displacement;
  bool increasing = sag > 0.0;
  double prev = sag, last = sag;
  for (int i = 1; i <= 8; ++i) {
    const double d = exoskeleton::deflection_under_load(spec, 0.07 * i, true)
                         .fingertip_vertical_displacement;
    increasing = increasing && d > prev;
    prev = last = d;
  }
  double worst = 0.0;
  for (int i = 1; i <= 8; ++i) {
    const double f = 0.07 * i;
    const auto st = exoskeleton::deflection_under_load(spec, f, false);
    const double stored = exoskeleton::spring_energy(spec, st.joint_angles);
    worst = std::max(worst, std::abs(exoskeleton::loading_path_work(spec, f, 400) - stored) / stored);
  }
  return {increasing && sag > 0.0 && worst < energy_balance_tol,
          fmt("deflection %.3f mm at 0 N -> %.3f mm at 0.56 N, strictly increasing: %s, "
              "energy mismatch %.2e",
              sag / units::mm, last / units::mm, increasing ? "yes" : "no", worst)};
}

std::vector<double> loop_history(double peak, double step) {
  std::vector<double> h;
  const int n = static_cast<int>(std::lround(peak / step));
  for (int i = 0; i <= n; ++i) h.push_back(step * i);
  for (int i = n - 1; i >= 0; --i) h.push_back(step * i);
  return h;
}

Outcome anchor_check() {
  auto cfg = config::load(config_path);
  const auto t0 = Clock::now();
  const auto& fit = config::find_fit(cfg, "finger_anchor");
  const auto result = calibration::fit(config::make_binding(cfg, fit), fit.bounds,
                                       config::load_fit_observations(cfg, fit), fit.options);
  config::apply_fit(cfg, fit, result.parameters);
  const double t_fit = seconds_since(t0);

  const auto t1 = Clock::now();
  const auto& spec = cfg.finger;
  const double angle = units::degrees(finger::equilibrium_bend(spec, 75e3).bending_angle);
  const double step = 1e3, peak = 100e3;
  const auto h = loop_history(peak, step);
  const int n = static_cast<int>(std::lround(peak / step));
  bool ordered = true;
  double closure = 0.0;
  std::vector<double> up(n + 1);
  std::vector<double> history;
  for (std::size_t i = 0; i < h.size(); ++i) {
    history.push_back(h[i]);
    const double a = finger::bend_with_hysteresis(spec, history).bending_angle;
    if (static_cast<int>(i) <= n) {
      up[i] = a;
    } else {
      ordered = ordered && a >= up[h.size() - 1 - i] - 1e-12;
    }
    if (i + 1 == h.size()) closure = std::abs(units::degrees(a));
  }
  const double t_check = seconds_since(t1);
  const bool pass = std::abs(angle - anchor_deg) <= anchor_tol_deg && closure <= closure_tol_deg &&
                    ordered && t_fit < calibration_budget_s && t_check < check_budget_s;
  return {pass, fmt("moment arm %.3f mm, %.2f deg at 75 kPa, loop returns to %.2e deg, "
                    "deflating >= inflating: %s, calibration %.2f s, check %.2f s",
                    result.parameters.at("moment_arm_mm"), angle, closure,
                    ordered ? "yes" : "no", t_fit, t_check)};
}

Outcome force_check(const config::Config& cfg) {
  const double d = cfg.obstacle_distance;
  auto force = [&](double kpa) { return finger::fingertip_force(cfg.finger, kpa * 1e3, d).force; };
  bool monotone = true;
  double prev = 0.0;
  for (double p = 0.0; p <= 100.0 + 1e-9; p += 2.5) {
    const double f = force(p);
    monotone = monotone && f >= prev;
    prev = f;
  }
  const double early = force(40) - force(35);
  const double late = force(85) - force(80);
  return {monotone && early > 0.0 && late < plateau_ratio * early,
          fmt("non-decreasing: %s, gain 35-40 kPa %.4f N, gain 80-85 kPa %.4f N (%.1f%%)",
              monotone ? "yes" : "no", early, late, 100.0 * late / early)};
}

controller::ElementSetup index_setup(const config::Config& cfg) {
  return config::element_setups(cfg)[config::element_index(cfg, "index")];
}

Outcome staircase_check(const config::Config& cfg) {
  const auto e = index_setup(cfg);
  const int idx = config::element_index(cfg, "index");
  const auto& sc = config::find_scenario(cfg, "staircase");
  const double dwell = 5.0;
  const auto schedule = controller::staircase_schedule(idx, 15e3, 3, dwell);
  const auto model = controller::build_element_model(e);
  controller::ClosedLoopOptions opt;
  opt.duration = dwell * static_cast<double>(schedule.size());
  opt.seed = sc.seed;
  const auto tr = controller::simulate_element(e, model, idx, schedule, {}, opt);
  bool pass = true;
  std::ostringstream detail;
  detail << "seed " << sc.seed << ":";
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    const double sp = schedule[s].setpoint / units::kPa;
    if (sp == 0.0) continue;
    const double t0 = schedule[s].t_start, t1 = t0 + dwell;
    const double settle =
        scenario::settle_time(tr, t0, t1, (sp - staircase_below_kPa) * units::kPa, sp * units::kPa);
    const double steady = scenario::mean_true_pressure(tr, t0 + 0.5 * dwell, t1) / units::kPa;
    const bool ok = settle <= staircase_settle_s && steady < sp;
    pass = pass && ok;
    detail << fmt(" %g kPa settles %.2f s at %.2f", sp, settle, steady);
  }
  return {pass, detail.str()};
}

Outcome hold_check(const config::Config& cfg) {
  const auto e = index_setup(cfg);
  const int idx = config::element_index(cfg, "index");
  const double sp = 45.0, duration = 120.0;
  controller::ClosedLoopOptions opt;
  opt.duration = duration;
  opt.seed = config::find_scenario(cfg, "long_hold").seed;
  const auto tr = controller::simulate_element(e, controller::build_element_model(e), idx,
                                               {{0.0, idx, sp * 1e3}}, {}, opt);
  const double band = 2.0 * e.controller.deadband / units::kPa;
  const double settle = scenario::settle_time(tr, 0.0, duration + 1.0, (sp - band) * units::kPa,
                                              (sp + band) * units::kPa);
  double worst_rate = 0.0;
  for (double t = settle; t + rate_window_s <= duration + 1e-9; t += 1.0) {
    worst_rate = std::max(worst_rate,
                          scenario::valve_transitions(tr, t, t + rate_window_s) / rate_window_s);
  }
  return {std::isfinite(settle) && worst_rate < max_transition_rate,
          fmt("inside %g +/- %g kPa from %.2f s to the end, worst %.0f s transition rate %.2f /s",
              sp, band, settle, rate_window_s, worst_rate)};
}

Outcome leak_check(const config::Config& cfg) {
  const auto base = index_setup(cfg);
  const int idx = config::element_index(cfg, "index");
  const auto model = controller::build_element_model(base);
  const double sp = 50.0, duration = 60.0;
  auto run = [&](double leak, double& wall) {
    auto e = base;
    e.plant.leak_conductance = leak;
    controller::ClosedLoopOptions opt;
    opt.duration = duration;
    opt.seed = 1;
    const auto t0 = Clock::now();
    auto tr = controller::simulate_element(e, model, idx, {{0.0, idx, sp * 1e3}}, {}, opt);
    wall = seconds_since(t0);
    return std::make_pair(pneumatics::leak_tolerable(e.plant, sp * 1e3), tr);
  };
  double w1 = 0.0, w2 = 0.0;
  const auto [ok_pred, tol] = run(1e-11, w1);
  const auto [bad_pred, over] = run(1e-10, w2);
  const double mean = scenario::mean_true_pressure(tol, duration - 30.0, duration) / units::kPa;
  const int openings = scenario::inlet_openings(tol, duration - 30.0, duration);
  const double s1 = scenario::mean_true_pressure(over, duration - 20.0, duration - 10.0) / units::kPa;
  const double s2 = scenario::mean_true_pressure(over, duration - 10.0, duration) / units::kPa;
  const bool settled = std::abs(s2 - s1) < 0.05;
  const bool pass = ok_pred && std::abs(mean - sp) <= leak_mean_tol_kPa &&
                    openings >= sustained_openings && !bad_pred && settled && s2 < sp &&
                    w1 < leak_case_budget_s && w2 < leak_case_budget_s;
  return {pass, fmt("tolerable leak: mean %.2f kPa, %d inlet openings in the last 30 s; "
                    "excess leak: steady %.2f kPa; %.2f s and %.2f s wall",
                    mean, openings, s2, w1, w2)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism_check(const config::Config& cfg) {
  const auto root = fs::temp_directory_path() / "softhand_acceptance";
  fs::remove_all(root);
  int files = 0;
  bool identical = true;
  for (const char* name : {"staircase", "leak", "hysteresis", "finger_bending"}) {
    std::vector<std::string> runs[2];
    for (int k = 0; k < 2; ++k) {
      const auto dir = root / std::to_string(k);
      fs::create_directories(dir);
      runs[k] = scenario::write_report(scenario::run_scenario(cfg, name), dir.string());
    }
    identical = identical && runs[0].size() == runs[1].size();
    for (std::size_t i = 0; identical && i < runs[0].size(); ++i) {
      identical = slurp(runs[0][i]) == slurp(runs[1][i]);
      ++files;
    }
  }
  fs::remove_all(root);

  auto spec = cfg.finger;
  calibration::ObservationSet design;
  for (double p : {20.0, 40.0, 60.0}) {
    design.records.push_back({{{"pressure_kPa", p}}, "bending_angle_deg", 0.0, 1.0});
    design.records.push_back({{{"pressure_kPa", p}, {"peak_kPa", 80}}, "bending_angle_deg", 0.0, 1.0});
  }
  const auto binding = bindings::finger_binding(spec);
  const calibration::ParameterMap truth{{"moment_arm_mm", 4.4}, {"deflate_offset_kPa", 6.0}};
  const auto r = calibration::fit(binding, {{"moment_arm_mm", 2, 8}, {"deflate_offset_kPa", 1, 20}},
                                  calibration::synthesize(binding, truth, design));
  double worst = 0.0;
  for (const auto& [k, v] : truth) worst = std::max(worst, std::abs(r.parameters.at(k) - v) / v);
  return {identical && files > 0 && worst < round_trip_tol,
          fmt("%d CSV files byte-identical: %s, round-trip worst relative error %.2e", files,
              identical ? "yes" : "no", worst)};
}

}  // namespace

int main() {
  const auto cfg = config::load(config_path);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"material correctness", materials_check},
      {"stiffness ordering", ordering_check},
      {"reinforcement effect", reinforcement_check},
      {"exoskeleton sweep", [&] { return exoskeleton_check(cfg); }},
      {"finger anchor", anchor_check},
      {"fingertip force shape", [&] { return force_check(cfg); }},
      {"staircase tracking", [&] { return staircase_check(cfg); }},
      {"long hold", [&] { return hold_check(cfg); }},
      {"leak tolerance", [&] { return leak_check(cfg); }},
      {"determinism and reproducibility", [&] { return determinism_check(cfg); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
