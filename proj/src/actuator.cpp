#include "softhand/actuator.hpp"

#include <cmath>
#include <sstream>

#include "roots.hpp"
#include "softhand/errors.hpp"
#include "softhand/units.hpp"

namespace softhand::actuator {

using units::pi;

std::vector<std::string> validate(const ActuatorSpec& spec) {
  std::vector<std::string> issues;
  if (!(spec.inner_radius > 0.0)) issues.emplace_back("inner_radius must be positive");
  if (!(spec.wall_thickness >= minimum_wall_thickness)) {
    std::ostringstream os;
    os << "wall_thickness " << spec.wall_thickness * 1e3
       << " mm is below the 2 mm minimum wall thickness";
    issues.push_back(os.str());
  }
  if (!(spec.rest_length > 0.0)) issues.emplace_back("rest_length must be positive");
  if (spec.ring_count < 1) issues.emplace_back("ring_count must be at least 1");
  if (!(spec.ring_cross_section_area > 0.0)) {
    issues.emplace_back("ring_cross_section_area must be positive");
  }
  for (auto& s : materials::validate(spec.silicone)) issues.push_back("silicone: " + s);
  for (auto& s : materials::validate(spec.reinforcement)) issues.push_back("reinforcement: " + s);
  return issues;
}

double reference_wall_area(const ActuatorSpec& spec) {
  const double ro = spec.inner_radius + spec.wall_thickness;
  return pi * (ro * ro - spec.inner_radius * spec.inner_radius);
}

double cap_force(const ActuatorSpec& spec, double p_gauge) {
  return p_gauge * pi * spec.inner_radius * spec.inner_radius;
}

double wall_force(const ActuatorSpec& spec, double axial_stretch) {
  return materials::ogden_planar_stress(spec.silicone, axial_stretch) * reference_wall_area(spec) /
         axial_stretch;
}

double wall_force_derivative(const ActuatorSpec& spec, double axial_stretch) {
  const double l = axial_stretch;
  const double s = materials::ogden_planar_stress(spec.silicone, l);
  const double ds = materials::ogden_planar_stress_derivative(spec.silicone, l);
  return reference_wall_area(spec) * (ds / l - s / (l * l));
}

double thrust(const ActuatorSpec& spec, double p_gauge, double elongation) {
  return cap_force(spec, p_gauge) - wall_force(spec, 1.0 + elongation / spec.rest_length);
}

double saturation_pressure(const ActuatorSpec& spec) {
  const double r = spec.inner_radius;
  return wall_force(spec, max_axial_stretch) / (pi * r * r);
}

ActuatorResponse axial_stretch_for_pressure(const ActuatorSpec& spec, double p_gauge) {
  if (!(p_gauge >= 0.0) || !std::isfinite(p_gauge)) {
    throw DomainError("actuator pressure must be a finite gauge value >= 0");
  }
  ActuatorResponse out;
  if (p_gauge == 0.0) {
    out.chamber_volume = chamber_volume(spec, 1.0);
    return out;
  }
  const double load = cap_force(spec, p_gauge);
  auto residual = [&](double l) { return wall_force(spec, l) - load; };
  if (residual(max_axial_stretch) < 0.0) {
    std::ostringstream os;
    os << "actuator has no equilibrium below stretch " << max_axial_stretch << " at "
       << p_gauge / units::kPa << " kPa";
    throw SaturationError(os.str(), p_gauge);
  }
  const double lz = detail::bisect(residual, 1.0, max_axial_stretch);

  out.axial_stretch = lz;
  out.elongation = (lz - 1.0) * spec.rest_length;
  out.chamber_volume = chamber_volume(spec, lz);
  const double hoop = materials::ogden_planar_transverse_stress(spec.silicone, lz);
  const double pitch = spec.rest_length * lz / spec.ring_count;
  out.wall_hoop_constraint_force =
      (p_gauge * spec.inner_radius - hoop * spec.wall_thickness / lz) * pitch;
  return out;
}

double chamber_volume(const ActuatorSpec& spec, double axial_stretch) {
  return pi * spec.inner_radius * spec.inner_radius * spec.rest_length * axial_stretch;
}

double barreling_check(const ActuatorSpec& spec, double p_gauge, bool rings_enabled) {
  if (!(p_gauge >= 0.0)) throw DomainError("barreling pressure must be >= 0");
  if (rings_enabled || p_gauge == 0.0) return 1.0;
  const double hoop_load = p_gauge * spec.inner_radius / spec.wall_thickness;
  auto residual = [&](double l) {
    return materials::ogden_planar_stress(spec.silicone, l) - hoop_load;
  };
  if (residual(max_axial_stretch) < 0.0) {
    std::ostringstream os;
    os << "unreinforced wall balloons past stretch " << max_axial_stretch << " at "
       << p_gauge / units::kPa << " kPa";
    throw SaturationError(os.str(), p_gauge);
  }
  return detail::bisect(residual, 1.0, max_axial_stretch);
}

}  // namespace softhand::actuator
