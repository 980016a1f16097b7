#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace softhand::calibration {

using ParameterMap = std::map<std::string, double>;

struct Observation {
  ParameterMap inputs;
  std::string observable;
  double value = 0.0;
  double weight = 1.0;
};

struct ObservationSet {
  std::vector<Observation> records;
};

/// CSV with header `inputs,observable,value,weight`; inputs are written as
/// `name=value;name=value` and may be empty.
ObservationSet parse_observations(std::istream& in);
ObservationSet load_observations(const std::string& path);
void write_observations(std::ostream& out, const ObservationSet& set);

struct ParameterBound {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
};

/// Maps a parameter vector and one observation record to a prediction.
struct ModelBinding {
  std::string name;
  std::vector<std::string> parameters;   // names accepted as free parameters
  std::vector<std::string> observables;  // names accepted as observables
  std::function<double(const ParameterMap&, const Observation&)> predict;
};

struct FitOptions {
  std::uint64_t seed = 1;
  int restarts = 3;
  int max_evaluations = 4000;  // per restart
  double x_tolerance = 1e-10;  // simplex diameter in the unit box
};

struct FitResult {
  ParameterMap parameters;
  double residual_rms = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Thrown when the objective is not finite; carries the offending point.
class ObjectiveError : public std::runtime_error {
 public:
  ObjectiveError(const std::string& what, ParameterMap parameters)
      : std::runtime_error(what), parameters_(std::move(parameters)) {}
  const ParameterMap& parameters() const noexcept { return parameters_; }

 private:
  ParameterMap parameters_;
};

std::vector<std::string> validate(const ModelBinding& binding,
                                  const std::vector<ParameterBound>& bounds,
                                  const ObservationSet& obs);

/// Weighted RMS of prediction - value. Weights are normalized to unit sum.
double residual_rms(const ModelBinding& binding, const ParameterMap& params,
                    const ObservationSet& obs);

/**
 * Bounded Nelder-Mead on the unit box with restarts. Every trial point is
 * projected onto the box before evaluation. The first start is the box
 * midpoint, so the result is never worse than the midpoint; the reported
 * residual is re-evaluated at the returned parameters.
 */
FitResult fit(const ModelBinding& binding, const std::vector<ParameterBound>& bounds,
              const ObservationSet& obs, const FitOptions& options = {});

/// Predictions of a binding at fixed parameters, one per record.
ObservationSet synthesize(const ModelBinding& binding, const ParameterMap& params,
                          const ObservationSet& design);

}  // namespace softhand::calibration
