#pragma once

#include "softhand/calibration.hpp"
#include "softhand/finger.hpp"
#include "softhand/pneumatics.hpp"

namespace softhand::bindings {

// Each binding exposes a base spec to the optimizer. Parameters not being
// fitted keep their base values. Any parameter name may also be used as an
// observable, which turns the record into a prior on that parameter.

/**
 * Parameters: inner_radius_mm, wall_thickness_mm, rest_length_mm,
 * silicone_scale (multiplies every Ogden mu).
 * Observables at input pressure_kPa: elongation_mm, axial_stretch,
 * chamber_volume_ml.
 */
calibration::ModelBinding actuator_binding(const actuator::ActuatorSpec& base);

/**
 * Parameters: k_proximal, k_middle, k_distal (N mm/rad), stiffness_scale.
 * Observables at inputs load_N and gravity (0/1, default 1):
 * displacement_mm, angle_proximal_deg, angle_middle_deg, angle_distal_deg.
 */
calibration::ModelBinding exoskeleton_binding(const exoskeleton::ExoskeletonSpec& base);

/**
 * Parameters: moment_arm_mm (all joints), moment_arm_{proximal,middle,distal}_mm,
 * stiffness_scale, silicone_scale, deflate_offset_kPa, inflate_gain,
 * transition_slope_deg_per_kPa.
 * Observables at pressure_kPa: bending_angle_deg, fingertip_displacement_mm.
 * With input peak_kPa above pressure_kPa the angle is read on the way down
 * from that peak.
 */
calibration::ModelBinding finger_binding(const finger::FingerSpec& base);

/**
 * Parameters: inlet_conductance, outlet_conductance, line_conductance,
 * leak_conductance (kg/(s Pa)), tube_volume_ml.
 * Observable pressure_kPa (chamber, gauge) at t_s after starting at from_kPa
 * with mode 1 (inlet open), -1 (outlet open) or 0 (both closed).
 */
calibration::ModelBinding plant_binding(const pneumatics::PlantConfig& base,
                                        const finger::FingerSpec& finger, int finger_count);

/// Apply fitted parameters to a spec; unknown names are ignored.
actuator::ActuatorSpec apply(actuator::ActuatorSpec spec, const calibration::ParameterMap& p);
exoskeleton::ExoskeletonSpec apply(exoskeleton::ExoskeletonSpec spec,
                                   const calibration::ParameterMap& p);
finger::FingerSpec apply(finger::FingerSpec spec, const calibration::ParameterMap& p);
pneumatics::PlantConfig apply(pneumatics::PlantConfig cfg, const calibration::ParameterMap& p);

}  // namespace softhand::bindings
