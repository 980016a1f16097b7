#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace softhand {

/// A constitutive model was evaluated outside the range where it is finite.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// No equilibrium exists inside the model's validity bracket at this pressure.
class SaturationError : public std::runtime_error {
 public:
  SaturationError(const std::string& what, double pressure)
      : std::runtime_error(what), pressure_(pressure) {}
  double pressure() const noexcept { return pressure_; }

 private:
  double pressure_;
};

/// An iterative solver hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Failure inside a time-stepped simulation; carries the simulated time.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, double time)
      : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

struct ConfigIssue {
  std::string key;  // dotted key path, e.g. "actuator.wall_thickness_mm"
  std::string message;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  ConfigError(std::string key, std::string message);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

}  // namespace softhand
