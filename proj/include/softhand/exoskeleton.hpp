#pragma once

#include <array>
#include <string>
#include <vector>

#include "softhand/materials.hpp"

namespace softhand::exoskeleton {

using Joint3 = std::array<double, 3>;  // proximal, middle, distal
using Segment4 = std::array<double, 4>;  // base, proximal, middle, distal

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Rectangular flexure web of one compliant joint.
struct HingeGeometry {
  double width = 14.0e-3;
  double thickness = 3.0e-3;
  double length = 3.5e-3;
};

std::array<HingeGeometry, 3> default_hinges();

struct ExoskeletonSpec {
  Joint3 joint_stiffnesses{};  // N m/rad
  Segment4 segment_lengths{20.0e-3, 45.0e-3, 25.0e-3, 20.0e-3};
  Segment4 segment_masses{1.0e-3, 2.2e-3, 1.2e-3, 1.0e-3};
  materials::MooneyRivlinParameters material = materials::mr_set3();
  double gravity = 9.80665;
};

/// Default spec: MR set3 hinges at default geometry.
ExoskeletonSpec default_spec();

struct BendingState {
  Joint3 joint_angles{};  // flexion positive, rad
  Point2 fingertip_position;
  double fingertip_vertical_displacement = 0.0;  // m, positive downward
  double residual = 0.0;                         // max |torque residual|, N m
  int iterations = 0;
};

std::vector<std::string> validate(const ExoskeletonSpec& spec);

/// Base origin, the three joints and the fingertip. The base segment is
/// clamped along +x; flexion rotates the chain clockwise (toward -y).
std::array<Point2, 5> joint_positions(const ExoskeletonSpec& spec, const Joint3& angles);
Point2 forward_kinematics(const ExoskeletonSpec& spec, const Joint3& angles);

/// k = E0 I / l with E0 = 6 (c10 + c01) and I = w h^3 / 12.
Joint3 stiffness_from_material(const std::array<HingeGeometry, 3>& hinges,
                               const materials::MooneyRivlinParameters& material);

/// A vertical dead load hung from a point on the chain.
struct PointLoad {
  int segment = 3;          // 1..3, outboard of joint segment-1
  double fraction = 0.0;    // position along the segment, 0 = its inboard joint
  double force = 0.0;       // N, positive downward
};

struct SolveOptions {
  double tolerance = 1e-12;  // N m
  int max_iterations = 200;
};

/**
 * Static equilibrium of the spring chain under arbitrary dead loads:
 * k_j theta_j = sum of outboard load moments about joint j in the deformed
 * pose. Newton with the exact Jacobian and a load continuation fallback.
 */
BendingState solve_equilibrium(const ExoskeletonSpec& spec, const std::vector<PointLoad>& loads,
                               const SolveOptions& options = {});

/// Torque residual k_j theta_j - M_j(theta) for the given loads.
Joint3 equilibrium_residual(const ExoskeletonSpec& spec, const std::vector<PointLoad>& loads,
                            const Joint3& angles);

std::vector<PointLoad> gravity_loads(const ExoskeletonSpec& spec);

/// Cantilever test: load hung at the distal joint, displacement read at
/// the fingertip.
BendingState deflection_under_load(const ExoskeletonSpec& spec, double tip_load,
                                   bool include_gravity);

double spring_energy(const ExoskeletonSpec& spec, const Joint3& angles);

/// Work of a load at the distal joint ramped from 0 to `tip_load` in
/// `steps` increments (trapezoidal), gravity off.
double loading_path_work(const ExoskeletonSpec& spec, double tip_load, int steps);

/// Ratio of total mass to density times printed volume.
double mass_consistency_ratio(const ExoskeletonSpec& spec, double printed_volume);

}  // namespace softhand::exoskeleton
