#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "softhand/config.hpp"
#include "softhand/csv.hpp"

namespace softhand::scenario {

struct SummaryPoint {
  double x = 0.0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation across repetitions
  int n = 0;
};

struct AssertionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Repetition {
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, csv::Table>> files;  // file stem -> table
};

struct RunReport {
  std::string scenario;
  std::string kind;
  std::vector<Repetition> repetitions;
  std::vector<SummaryPoint> summary;
  std::vector<AssertionResult> assertions;

  bool passed() const;
};

/**
 * Run one scenario from the configuration. Repetition r uses seed + r and
 * repetitions run concurrently. Throws ConfigError for bad parameters and
 * lets simulation failures propagate.
 */
RunReport run_scenario(const config::Config& cfg, const std::string& name,
                       std::optional<std::uint64_t> seed = std::nullopt);

/// Writes `<stem>.csv` per repetition file and `<scenario>_summary.csv`.
std::vector<std::string> write_report(const RunReport& report, const std::string& out_dir);

csv::Table summary_table(const std::vector<SummaryPoint>& s);

// Trace measures shared by the runner, the tests and the acceptance checks.
// Windows are half-open [t0, t1) in seconds; pressures are gauge Pa.

/// Time from t0 until sensed stays inside [lo, hi] for the rest of the
/// window; +inf when it is outside at the end.
double settle_time(const controller::ElementTrace& tr, double t0, double t1, double lo, double hi);

/// First time after t0 at which sensed lies in [lo, hi], relative to t0.
double entry_time(const controller::ElementTrace& tr, double t0, double t1, double lo, double hi);

double mean_true_pressure(const controller::ElementTrace& tr, double t0, double t1);

/// Number of valve state changes (inlet and outlet counted separately).
int valve_transitions(const controller::ElementTrace& tr, double t0, double t1);

/// Number of closed -> open inlet transitions.
int inlet_openings(const controller::ElementTrace& tr, double t0, double t1);

bool mutual_exclusion(const controller::ElementTrace& tr);

}  // namespace softhand::scenario
