#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "softhand/actuator.hpp"
#include "softhand/exoskeleton.hpp"

namespace softhand::finger {

using exoskeleton::Joint3;

/**
 * Rate-independent two-branch hysteresis.
 *
 * The backbone B is read at an effective pressure q that lags the applied
 * pressure p inside the band [p, p + d (1 - exp(-p / d))], d = deflate_offset.
 * Inflation drags q up with p, deflation leaves q on the upper edge, and a
 * reversal inside the band moves the angle along transition_slope:
 *
 *   angle = inflate_gain * (B(q) - transition_slope * (q - p))
 */
struct HysteresisParameters {
  double inflate_gain = 1.0;       // dimensionless
  double deflate_offset = 8.0e3;   // Pa
  double transition_slope = 0.0;   // rad/Pa
};

struct FingerSpec {
  actuator::ActuatorSpec actuator;
  exoskeleton::ExoskeletonSpec exoskeleton = exoskeleton::default_spec();
  Joint3 moment_arms{4.0e-3, 4.0e-3, 4.0e-3};
  HysteresisParameters hysteresis;
  /// Actuator push available once the fingertip is blocked, N.
  double contact_thrust_limit = std::numeric_limits<double>::infinity();
};

std::vector<std::string> validate(const FingerSpec& spec);

enum class Branch { rest, inflating, deflating };

const char* branch_name(Branch b);

struct ReversalRecord {
  double pressure = 0.0;
  double angle = 0.0;
};

struct FingerState {
  double pressure = 0.0;  // Pa gauge
  Joint3 joint_angles{};
  double bending_angle = 0.0;           // rad, sum of joint angles
  exoskeleton::Point2 fingertip_position;
  double fingertip_displacement = 0.0;  // m, vertical drop of the tip
  double actuator_thrust = 0.0;         // N
  double actuator_elongation = 0.0;     // m
  double effective_pressure = 0.0;      // Pa, hysteresis internal variable
  Branch branch = Branch::rest;
  ReversalRecord branch_memory;
};

/**
 * Hysteresis-free equilibrium. Kinematic compatibility e = sum theta_j r_j
 * and torque balance k_j theta_j = C r_j reduce to one scalar equation in
 * the actuator push C: thrust(p, C * sum r_j^2 / k_j) = C.
 */
FingerState equilibrium_bend(const FingerSpec& spec, double p_gauge);

/// Internal state of the hysteresis operator, advanced sample by sample.
struct HysteresisMemory {
  double pressure = 0.0;
  double effective_pressure = 0.0;
  int direction = 0;  // sign of the last nonzero pressure change
  Branch branch = Branch::rest;
  ReversalRecord last_reversal;
};

/// Upper edge of the play band at pressure p.
double deflate_edge(const HysteresisParameters& h, double p);

/// Advance the memory to the next pressure sample. `angle_of` maps an
/// (effective, applied) pressure pair to the angle reported on reversal.
template <class AngleOf>
HysteresisMemory advance(const HysteresisParameters& h, HysteresisMemory m, double p,
                         AngleOf&& angle_of) {
  const double dp = p - m.pressure;
  const int dir = dp > 0.0 ? 1 : (dp < 0.0 ? -1 : 0);
  if (dir != 0 && m.direction != 0 && dir != m.direction) {
    m.last_reversal = {m.pressure, angle_of(m.effective_pressure, m.pressure)};
  }
  if (dir != 0) m.direction = dir;
  const double hi = deflate_edge(h, p);
  m.effective_pressure = std::min(std::max(m.effective_pressure, p), hi);
  m.pressure = p;
  if (dir > 0) m.branch = Branch::inflating;
  if (dir < 0) m.branch = Branch::deflating;
  if (p == 0.0 && m.effective_pressure == 0.0) m.branch = Branch::rest;
  return m;
}

/// Fold a pressure history (starting at 0 Pa) through the hysteresis model.
FingerState bend_with_hysteresis(const FingerSpec& spec, const std::vector<double>& history);

/// Evaluate the finger state for a given hysteresis memory.
FingerState hysteresis_state(const FingerSpec& spec, const HysteresisMemory& memory);

/// Smallest backbone slope d(angle)/dp on a grid over [0, p_max], rad/Pa.
double backbone_min_slope(const FingerSpec& spec, double p_max, double step);

/// Backbone sampled on a uniform pressure grid for fast interpolation.
class BackboneTable {
 public:
  BackboneTable() = default;
  BackboneTable(const FingerSpec& spec, double p_max, double step);

  double angle(double p) const;
  double chamber_volume(double p) const;
  double max_pressure() const { return p_max_; }

  /// Hysteresis angle from a memory, using the tabulated backbone.
  double angle(const HysteresisParameters& h, const HysteresisMemory& m) const;

 private:
  double interp(const std::vector<double>& v, double p) const;
  double step_ = 1.0;
  double p_max_ = 0.0;
  std::vector<double> angle_;
  std::vector<double> volume_;
};

struct ForceResult {
  double force = 0.0;  // N, normal contact force at the fingertip
  bool reachable = true;
  double contact_onset_pressure = 0.0;  // Pa
  double actuator_thrust = 0.0;         // N, after the contact limit
  Joint3 joint_angles{};
  exoskeleton::Point2 fingertip_position;
};

/// Upper end of the pressure range used to search for obstacle contact.
inline constexpr double max_contact_pressure = 100.0e3;

/**
 * Blocked fingertip force against the plane y = -obstacle_distance. Below
 * contact onset the force is zero; beyond it the joint angles and the
 * normal force are continued in pressure with the tip held on the plane.
 */
ForceResult fingertip_force(const FingerSpec& spec, double p_gauge, double obstacle_distance);

/// Push delivered at contact for the given pressure, ignoring any limit.
double contact_thrust(const FingerSpec& spec, double p_gauge, double obstacle_distance);

}  // namespace softhand::finger
