#include "softhand/finger.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "softhand/errors.hpp"
#include "softhand/units.hpp"

namespace softhand::finger {

namespace {

double compliance_sum(const FingerSpec& spec) {
  double s = 0.0;
  for (int j = 0; j < 3; ++j) {
    s += spec.moment_arms[j] * spec.moment_arms[j] / spec.exoskeleton.joint_stiffnesses[j];
  }
  return s;
}

void fill_kinematics(const FingerSpec& spec, FingerState& st) {
  st.bending_angle = st.joint_angles[0] + st.joint_angles[1] + st.joint_angles[2];
  st.fingertip_position = exoskeleton::forward_kinematics(spec.exoskeleton, st.joint_angles);
  st.fingertip_displacement = -st.fingertip_position.y;
}

// Push C solving thrust(p, C S) = C on [0, cap]; h is strictly decreasing.
double solve_push(const FingerSpec& spec, double p, double s) {
  const auto& act = spec.actuator;
  const double cap = actuator::cap_force(act, p);
  auto h = [&](double c) { return actuator::thrust(act, p, c * s) - c; };
  double lo = 0.0, hi = cap;
  double c = 0.5 * cap;
  const double tol = 1e-13 * cap;
  for (int it = 0; it < 200; ++it) {
    const double hc = h(c);
    if (std::abs(hc) <= tol) return c;
    if (hc > 0.0) {
      lo = c;
    } else {
      hi = c;
    }
    const double lz = 1.0 + c * s / act.rest_length;
    const double dh = -actuator::wall_force_derivative(act, lz) * s / act.rest_length - 1.0;
    double next = c - hc / dh;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 1e-16 * cap) return next;
    c = next;
  }
  return c;
}

}  // namespace

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::rest:
      return "rest";
    case Branch::inflating:
      return "inflate";
    case Branch::deflating:
      return "deflate";
  }
  return "rest";
}

std::vector<std::string> validate(const FingerSpec& spec) {
  std::vector<std::string> issues;
  for (auto& s : actuator::validate(spec.actuator)) issues.push_back("actuator: " + s);
  for (auto& s : exoskeleton::validate(spec.exoskeleton)) issues.push_back("exoskeleton: " + s);
  for (double r : spec.moment_arms) {
    if (!(r > 0.0)) {
      issues.emplace_back("moment arms must be positive");
      break;
    }
  }
  const auto& h = spec.hysteresis;
  if (!(h.inflate_gain > 0.0)) issues.emplace_back("hysteresis inflate_gain must be positive");
  if (!(h.deflate_offset >= 0.0)) issues.emplace_back("hysteresis deflate_offset must be >= 0");
  if (!(h.transition_slope >= 0.0)) {
    issues.emplace_back("hysteresis transition_slope must be >= 0");
  }
  if (!(spec.contact_thrust_limit > 0.0)) {
    issues.emplace_back("contact thrust limit must be positive");
  }
  return issues;
}

FingerState equilibrium_bend(const FingerSpec& spec, double p_gauge) {
  if (!(p_gauge >= 0.0) || !std::isfinite(p_gauge)) {
    throw DomainError("finger pressure must be a finite gauge value >= 0");
  }
  FingerState st;
  st.pressure = p_gauge;
  st.effective_pressure = p_gauge;
  if (p_gauge == 0.0) {
    fill_kinematics(spec, st);
    return st;
  }
  const double s = compliance_sum(spec);
  const double c = solve_push(spec, p_gauge, s);
  for (int j = 0; j < 3; ++j) {
    st.joint_angles[j] = c * spec.moment_arms[j] / spec.exoskeleton.joint_stiffnesses[j];
    if (st.joint_angles[j] > units::pi) {
      std::ostringstream os;
      os << "joint " << j << " passes pi at " << p_gauge / units::kPa << " kPa";
      throw SaturationError(os.str(), p_gauge);
    }
  }
  st.actuator_thrust = c;
  st.actuator_elongation = c * s;
  st.branch = Branch::inflating;
  fill_kinematics(spec, st);
  return st;
}

double deflate_edge(const HysteresisParameters& h, double p) {
  if (h.deflate_offset <= 0.0) return p;
  return p + h.deflate_offset * -std::expm1(-p / h.deflate_offset);
}

FingerState hysteresis_state(const FingerSpec& spec, const HysteresisMemory& memory) {
  const auto& h = spec.hysteresis;
  FingerState base = equilibrium_bend(spec, memory.effective_pressure);
  const double angle =
      h.inflate_gain * (base.bending_angle -
                        h.transition_slope * (memory.effective_pressure - memory.pressure));
  FingerState st = base;
  st.pressure = memory.pressure;
  st.effective_pressure = memory.effective_pressure;
  if (base.bending_angle > 0.0) {
    const double f = angle / base.bending_angle;
    for (double& th : st.joint_angles) th *= f;
  }
  st.branch = memory.branch;
  st.branch_memory = memory.last_reversal;
  fill_kinematics(spec, st);
  return st;
}

FingerState bend_with_hysteresis(const FingerSpec& spec, const std::vector<double>& history) {
  if (history.empty() || history.front() != 0.0) {
    throw DomainError("pressure history must start at 0 Pa");
  }
  const auto& h = spec.hysteresis;
  auto angle_of = [&](double q, double p) {
    return h.inflate_gain *
           (equilibrium_bend(spec, q).bending_angle - h.transition_slope * (q - p));
  };
  HysteresisMemory m;
  for (double p : history) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("history pressures must be >= 0");
    m = advance(h, m, p, angle_of);
  }
  return hysteresis_state(spec, m);
}

double backbone_min_slope(const FingerSpec& spec, double p_max, double step) {
  double prev = 0.0;
  double slope = std::numeric_limits<double>::infinity();
  for (double p = step; p <= p_max + 0.5 * step; p += step) {
    const double a = equilibrium_bend(spec, p).bending_angle;
    slope = std::min(slope, (a - prev) / step);
    prev = a;
  }
  return slope;
}

BackboneTable::BackboneTable(const FingerSpec& spec, double p_max, double step)
    : step_(step), p_max_(p_max) {
  if (!(step > 0.0 && p_max > 0.0)) throw DomainError("backbone table needs a positive range");
  const int n = static_cast<int>(std::ceil(p_max / step));
  p_max_ = n * step;
  angle_.reserve(n + 1);
  volume_.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const auto st = equilibrium_bend(spec, i * step);
    angle_.push_back(st.bending_angle);
    volume_.push_back(actuator::chamber_volume(
        spec.actuator, 1.0 + st.actuator_elongation / spec.actuator.rest_length));
  }
}

double BackboneTable::interp(const std::vector<double>& v, double p) const {
  if (v.empty()) throw DomainError("backbone table is empty");
  if (p <= 0.0) return v.front();
  const double x = p / step_;
  const auto i = static_cast<std::size_t>(x);
  if (i + 1 >= v.size()) return v.back();
  const double f = x - static_cast<double>(i);
  return v[i] + f * (v[i + 1] - v[i]);
}

double BackboneTable::angle(double p) const { return interp(angle_, p); }

double BackboneTable::chamber_volume(double p) const { return interp(volume_, p); }

double BackboneTable::angle(const HysteresisParameters& h, const HysteresisMemory& m) const {
  return h.inflate_gain *
         (angle(m.effective_pressure) - h.transition_slope * (m.effective_pressure - m.pressure));
}

namespace {

struct ContactSolution {
  Joint3 theta{};
  double force = 0.0;
  double thrust = 0.0;
};

// Residuals of the blocked finger: joint torque balance with the tip normal
// force, and the tip held on the plane y = -d.
Eigen::Vector4d contact_residual(const FingerSpec& spec, double p, double d, const Joint3& th,
                                 double f, double& thrust_out) {
  const auto& ex = spec.exoskeleton;
  const auto pts = exoskeleton::joint_positions(ex, th);
  double e = 0.0;
  for (int j = 0; j < 3; ++j) e += th[j] * spec.moment_arms[j];
  const double ct = std::min(actuator::thrust(spec.actuator, p, e), spec.contact_thrust_limit);
  thrust_out = ct;
  Eigen::Vector4d r;
  for (int j = 0; j < 3; ++j) {
    r[j] = ex.joint_stiffnesses[j] * th[j] - ct * spec.moment_arms[j] +
           f * (pts[4].x - pts[j + 1].x);
  }
  r[3] = pts[4].y + d;
  return r;
}

Eigen::Matrix4d contact_jacobian(const FingerSpec& spec, double p, const Joint3& th, double f) {
  const auto& ex = spec.exoskeleton;
  const auto& act = spec.actuator;
  const auto pts = exoskeleton::joint_positions(ex, th);
  double e = 0.0;
  for (int j = 0; j < 3; ++j) e += th[j] * spec.moment_arms[j];
  const bool limited = actuator::thrust(act, p, e) >= spec.contact_thrust_limit;
  const double dwall =
      limited ? 0.0
              : actuator::wall_force_derivative(act, 1.0 + e / act.rest_length) / act.rest_length;
  Eigen::Matrix4d jac = Eigen::Matrix4d::Zero();
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const int outer = std::max(j, k);
      // d(ct)/d(theta_k) = -dwall * r_k
      jac(j, k) = (j == k ? ex.joint_stiffnesses[j] : 0.0) +
                  spec.moment_arms[j] * dwall * spec.moment_arms[k] +
                  f * (pts[4].y - pts[outer + 1].y);
    }
    jac(j, 3) = pts[4].x - pts[j + 1].x;
    jac(3, j) = -(pts[4].x - pts[j + 1].x);
  }
  return jac;
}

double contact_norm(const FingerSpec& spec, const Eigen::Vector4d& r) {
  const auto& k = spec.exoskeleton.joint_stiffnesses;
  double n = 0.0;
  for (int j = 0; j < 3; ++j) n = std::max(n, std::abs(r[j]) / k[j]);
  double reach = 0.0;
  for (double l : spec.exoskeleton.segment_lengths) reach += l;
  return std::max(n, std::abs(r[3]) / reach);
}

bool contact_newton(const FingerSpec& spec, double p, double d, ContactSolution& sol) {
  double thrust = 0.0;
  Eigen::Vector4d r = contact_residual(spec, p, d, sol.theta, sol.force, thrust);
  double norm = contact_norm(spec, r);
  for (int it = 0; it < 100; ++it) {
    if (norm < 1e-13) {
      sol.thrust = thrust;
      return true;
    }
    const Eigen::Vector4d step = contact_jacobian(spec, p, sol.theta, sol.force).fullPivLu().solve(-r);
    if (!step.allFinite()) return false;
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      Joint3 th{sol.theta[0] + alpha * step[0], sol.theta[1] + alpha * step[1],
                sol.theta[2] + alpha * step[2]};
      const double f = sol.force + alpha * step[3];
      double tt = 0.0;
      const Eigen::Vector4d rt = contact_residual(spec, p, d, th, f, tt);
      const double nt = contact_norm(spec, rt);
      if (nt < norm) {
        sol.theta = th;
        sol.force = f;
        r = rt;
        norm = nt;
        thrust = tt;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
  }
  sol.thrust = thrust;
  return norm < 1e-10;
}

ForceResult free_result(const FingerState& st) {
  ForceResult out;
  out.actuator_thrust = st.actuator_thrust;
  out.joint_angles = st.joint_angles;
  out.fingertip_position = st.fingertip_position;
  return out;
}

}  // namespace

ForceResult fingertip_force(const FingerSpec& spec, double p_gauge, double obstacle_distance) {
  if (!(obstacle_distance > 0.0)) throw DomainError("obstacle distance must be positive");
  if (!(p_gauge >= 0.0)) throw DomainError("pressure must be >= 0");

  auto gap = [&](double p) {
    return equilibrium_bend(spec, p).fingertip_position.y + obstacle_distance;
  };
  // First crossing of the plane on a 1 kPa scan, refined by bisection.
  const double scan = 1.0e3;
  double lo = 0.0, hi = -1.0;
  for (double p = scan; p <= max_contact_pressure + 0.5 * scan; p += scan) {
    if (gap(p) <= 0.0) {
      hi = p;
      break;
    }
    lo = p;
  }
  if (hi < 0.0) {
    ForceResult out = free_result(equilibrium_bend(spec, std::min(p_gauge, max_contact_pressure)));
    out.reachable = false;
    out.contact_onset_pressure = std::numeric_limits<double>::infinity();
    return out;
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double onset = hi;
  if (p_gauge <= onset) {
    ForceResult out = free_result(equilibrium_bend(spec, p_gauge));
    out.contact_onset_pressure = onset;
    return out;
  }

  const auto start = equilibrium_bend(spec, onset);
  auto continue_to = [&](double target) {
    ContactSolution sol;
    sol.theta = start.joint_angles;
    const double max_step = 0.5e3;
    const int n = std::max(1, static_cast<int>(std::ceil((target - onset) / max_step)));
    for (int i = 1; i <= n; ++i) {
      const double p = onset + (target - onset) * i / n;
      if (!contact_newton(spec, p, obstacle_distance, sol)) {
        std::ostringstream os;
        os << "blocked finger did not converge at " << p / units::kPa << " kPa";
        throw ConvergenceError(os.str(), 0.0);
      }
    }
    return sol;
  };
  ContactSolution sol = continue_to(p_gauge);
  // Once the thrust limit binds the solution no longer depends on pressure;
  // solve it along one fixed path so every limited pressure gets the same bits.
  if (sol.thrust >= spec.contact_thrust_limit) {
    sol = continue_to(std::max(p_gauge, max_contact_pressure));
  }
  ForceResult out;
  out.force = std::max(0.0, sol.force);
  out.contact_onset_pressure = onset;
  out.actuator_thrust = sol.thrust;
  out.joint_angles = sol.theta;
  out.fingertip_position = exoskeleton::forward_kinematics(spec.exoskeleton, sol.theta);
  return out;
}

double contact_thrust(const FingerSpec& spec, double p_gauge, double obstacle_distance) {
  FingerSpec free_spec = spec;
  free_spec.contact_thrust_limit = std::numeric_limits<double>::infinity();
  return fingertip_force(free_spec, p_gauge, obstacle_distance).actuator_thrust;
}

}  // namespace softhand::finger
