#pragma once

#include <numbers>

// All internal quantities are SI. These factors convert the convenience units
// used in configuration files and reports.
namespace softhand::units {

inline constexpr double kPa = 1.0e3;
inline constexpr double MPa = 1.0e6;
inline constexpr double mm = 1.0e-3;
inline constexpr double mm2 = 1.0e-6;
inline constexpr double gram = 1.0e-3;
inline constexpr double g_per_cm3 = 1.0e3;  // to kg/m^3

inline constexpr double standard_atmosphere = 101325.0;  // Pa
inline constexpr double standard_gravity = 9.80665;      // m/s^2
inline constexpr double air_gas_constant = 287.05;       // J/(kg K)

inline constexpr double pi = std::numbers::pi;

constexpr double degrees(double radians) { return radians * 180.0 / pi; }
constexpr double radians(double degrees) { return degrees * pi / 180.0; }

}  // namespace softhand::units
