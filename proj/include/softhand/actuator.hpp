#pragma once

#include <string>
#include <vector>

#include "softhand/materials.hpp"

namespace softhand::actuator {

inline constexpr double minimum_wall_thickness = 2.0e-3;  // m
inline constexpr double max_axial_stretch = 4.0;

struct ActuatorSpec {
  double inner_radius = 5.0e-3;
  double wall_thickness = 2.0e-3;
  double rest_length = 70.0e-3;
  int ring_count = 44;
  double ring_cross_section_area = 0.25e-6;
  materials::OgdenParameters silicone = materials::ogden_set3();
  materials::LinearElasticParameters reinforcement = materials::pet();
};

struct ActuatorResponse {
  double axial_stretch = 1.0;
  double elongation = 0.0;              // m
  double chamber_volume = 0.0;          // m^3
  double wall_hoop_constraint_force = 0.0;  // N, tension carried by one ring
};

std::vector<std::string> validate(const ActuatorSpec& spec);

/// Wall annulus area in the reference configuration.
double reference_wall_area(const ActuatorSpec& spec);

/// Pressure load on the end cap, p * pi * r_i^2.
double cap_force(const ActuatorSpec& spec, double p_gauge);

/// Axial tension carried by the wall at stretch lz, sigma_z(lz) * A0 / lz.
double wall_force(const ActuatorSpec& spec, double axial_stretch);
double wall_force_derivative(const ActuatorSpec& spec, double axial_stretch);

/**
 * Net axial push the actuator delivers when its length is held at
 * rest_length + elongation: cap force minus wall tension. Zero at the free
 * equilibrium, positive when the actuator is shorter than it wants to be.
 */
double thrust(const ActuatorSpec& spec, double p_gauge, double elongation);

/**
 * Free equilibrium of the capped, ring-reinforced tube. Bisection on
 * lz in [1, 4]; throws SaturationError when the pressure exceeds what the
 * wall can balance within that range.
 */
ActuatorResponse axial_stretch_for_pressure(const ActuatorSpec& spec, double p_gauge);

/// Largest gauge pressure with an equilibrium inside the stretch bracket.
double saturation_pressure(const ActuatorSpec& spec);

double chamber_volume(const ActuatorSpec& spec, double axial_stretch);

/// Radial stretch of the wall. Rings clamp it to 1; without rings the
/// unreinforced membrane balance sigma_theta(l) = p r_i / t is solved.
double barreling_check(const ActuatorSpec& spec, double p_gauge, bool rings_enabled);

}  // namespace softhand::actuator
