#include "softhand/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "softhand/errors.hpp"

namespace softhand::calibration {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw ConfigError(where, "'" + t + "' is not a finite number");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

// Round to 40 significant bits so that rescaling every weight by the same
// constant reproduces the normalized weights exactly.
double round_bits(double x) {
  int e = 0;
  const double m = std::frexp(x, &e);
  return std::ldexp(std::round(std::ldexp(m, 40)), e - 40);
}

std::vector<double> normalized_weights(const ObservationSet& obs) {
  double total = 0.0;
  for (const auto& r : obs.records) total += r.weight;
  std::vector<double> w;
  w.reserve(obs.records.size());
  for (const auto& r : obs.records) w.push_back(round_bits(r.weight / total));
  return w;
}

class Objective {
 public:
  Objective(const ModelBinding& b, const std::vector<ParameterBound>& bounds,
            const ObservationSet& obs)
      : binding_(b), bounds_(bounds), obs_(obs), weights_(normalized_weights(obs)) {}

  ParameterMap to_parameters(const std::vector<double>& u) const {
    ParameterMap p;
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
      const auto& b = bounds_[i];
      p[b.name] = std::clamp(b.lower + u[i] * (b.upper - b.lower), b.lower, b.upper);
    }
    return p;
  }

  double operator()(const std::vector<double>& u) {
    ++evaluations;
    const ParameterMap p = to_parameters(u);
    const double f = sum_squares(p);
    if (!std::isfinite(f)) {
      throw ObjectiveError("objective is not finite at the sampled parameters", p);
    }
    return f;
  }

  double sum_squares(const ParameterMap& p) const {
    double f = 0.0;
    for (std::size_t i = 0; i < obs_.records.size(); ++i) {
      const auto& r = obs_.records[i];
      const double d = binding_.predict(p, r) - r.value;
      f += weights_[i] * d * d;
    }
    return f;
  }

  int evaluations = 0;

 private:
  const ModelBinding& binding_;
  const std::vector<ParameterBound>& bounds_;
  const ObservationSet& obs_;
  std::vector<double> weights_;
};

struct Vertex {
  std::vector<double> u;
  double f = 0.0;
};

void project(std::vector<double>& u) {
  for (double& x : u) x = std::clamp(x, 0.0, 1.0);
}

double diameter(const std::vector<Vertex>& s) {
  double d = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s[i].u.size(); ++j) {
      d = std::max(d, std::abs(s[i].u[j] - s[0].u[j]));
    }
  }
  return d;
}

struct RunOutcome {
  Vertex best;
  int iterations = 0;
  bool converged = false;
};

RunOutcome nelder_mead(Objective& obj, Vertex start, const std::vector<double>& steps,
                       const FitOptions& opt) {
  const std::size_t n = start.u.size();
  std::vector<Vertex> s{start};
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v{start.u, 0.0};
    v.u[i] += steps[i];
    if (v.u[i] > 1.0 || v.u[i] < 0.0) v.u[i] = start.u[i] - steps[i];
    project(v.u);
    v.f = obj(v.u);
    s.push_back(std::move(v));
  }
  const auto by_f = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  const int budget_end = obj.evaluations + opt.max_evaluations;
  RunOutcome out;
  while (true) {
    std::stable_sort(s.begin(), s.end(), by_f);
    if (diameter(s) < opt.x_tolerance) {
      out.converged = true;
      break;
    }
    if (obj.evaluations >= budget_end) break;
    ++out.iterations;
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) c[j] += s[i].u[j] / static_cast<double>(n);
    }
    const auto along = [&](double t) {
      std::vector<double> u(n);
      for (std::size_t j = 0; j < n; ++j) u[j] = c[j] + t * (s[n].u[j] - c[j]);
      project(u);
      return Vertex{u, obj(u)};
    };
    Vertex r = along(-1.0);
    if (r.f < s[0].f) {
      Vertex e = along(-2.0);
      s[n] = e.f < r.f ? std::move(e) : std::move(r);
      continue;
    }
    if (r.f < s[n - 1].f) {
      s[n] = std::move(r);
      continue;
    }
    Vertex k = r.f < s[n].f ? along(-0.5) : along(0.5);
    if (k.f < std::min(r.f, s[n].f)) {
      s[n] = std::move(k);
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 0; j < n; ++j) s[i].u[j] = s[0].u[j] + 0.5 * (s[i].u[j] - s[0].u[j]);
      s[i].f = obj(s[i].u);
    }
  }
  out.best = s[0];
  return out;
}

}  // namespace

ObservationSet parse_observations(std::istream& in) {
  ObservationSet set;
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto where = "observations line " + std::to_string(line_no);
    if (!header) {
      if (t != "inputs,observable,value,weight") {
        throw ConfigError(where, "expected header 'inputs,observable,value,weight'");
      }
      header = true;
      continue;
    }
    const auto cols = split(t, ',');
    if (cols.size() != 4) throw ConfigError(where, "expected 4 columns");
    Observation o;
    for (const auto& item : split(cols[0], ';')) {
      if (trim(item).empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError(where, "input '" + item + "' lacks '='");
      o.inputs[trim(item.substr(0, eq))] = parse_number(item.substr(eq + 1), where);
    }
    o.observable = trim(cols[1]);
    o.value = parse_number(cols[2], where);
    o.weight = parse_number(cols[3], where);
    set.records.push_back(std::move(o));
  }
  if (!header) throw ConfigError("observations", "missing header");
  return set;
}

ObservationSet load_observations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open observation file");
  return parse_observations(in);
}

void write_observations(std::ostream& out, const ObservationSet& set) {
  out << "inputs,observable,value,weight\n";
  char buf[64];
  for (const auto& r : set.records) {
    bool first = true;
    for (const auto& [k, v] : r.inputs) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << (first ? "" : ";") << k << '=' << buf;
      first = false;
    }
    std::snprintf(buf, sizeof buf, "%.17g", r.value);
    out << ',' << r.observable << ',' << buf;
    std::snprintf(buf, sizeof buf, "%.17g", r.weight);
    out << ',' << buf << '\n';
  }
}

std::vector<std::string> validate(const ModelBinding& binding,
                                  const std::vector<ParameterBound>& bounds,
                                  const ObservationSet& obs) {
  std::vector<std::string> issues;
  const auto known = [](const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  if (bounds.empty()) issues.emplace_back("no free parameters");
  for (const auto& b : bounds) {
    if (!known(binding.parameters, b.name)) {
      issues.push_back("binding '" + binding.name + "' has no parameter '" + b.name + "'");
    }
    if (!std::isfinite(b.lower) || !std::isfinite(b.upper) || !(b.lower < b.upper)) {
      issues.push_back("bounds of '" + b.name + "' must be finite with lower < upper");
    }
  }
  if (obs.records.size() < bounds.size()) {
    issues.emplace_back("fewer observation records than free parameters");
  }
  for (const auto& r : obs.records) {
    if (!(r.weight > 0.0)) issues.push_back("weight of '" + r.observable + "' must be > 0");
    if (!known(binding.observables, r.observable) && !known(binding.parameters, r.observable)) {
      issues.push_back("binding '" + binding.name + "' cannot predict '" + r.observable + "'");
    }
  }
  return issues;
}

double residual_rms(const ModelBinding& binding, const ParameterMap& params,
                    const ObservationSet& obs) {
  const auto w = normalized_weights(obs);
  double f = 0.0;
  for (std::size_t i = 0; i < obs.records.size(); ++i) {
    const auto& r = obs.records[i];
    const double d = binding.predict(params, r) - r.value;
    f += w[i] * d * d;
  }
  return std::sqrt(f);
}

FitResult fit(const ModelBinding& binding, const std::vector<ParameterBound>& bounds,
              const ObservationSet& obs, const FitOptions& options) {
  if (const auto issues = validate(binding, bounds, obs); !issues.empty()) {
    std::vector<ConfigIssue> ci;
    for (const auto& m : issues) ci.push_back({"calibration." + binding.name, m});
    throw ConfigError(std::move(ci));
  }
  Objective obj(binding, bounds, obs);
  const std::size_t n = bounds.size();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Vertex best{std::vector<double>(n, 0.5), 0.0};
  best.f = obj(best.u);
  FitResult result;
  std::vector<double> steps(n, 0.25);
  for (int r = 0; r <= std::max(0, options.restarts); ++r) {
    if (r > 0) {
      for (auto& s : steps) s = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.05 + 0.15 * unit(rng));
    }
    RunOutcome run = nelder_mead(obj, best, steps, options);
    result.iterations += run.iterations;
    result.converged = run.converged;
    if (run.best.f <= best.f) best = std::move(run.best);
  }
  result.parameters = obj.to_parameters(best.u);
  result.evaluations = obj.evaluations;
  result.residual_rms = residual_rms(binding, result.parameters, obs);
  return result;
}

ObservationSet synthesize(const ModelBinding& binding, const ParameterMap& params,
                          const ObservationSet& design) {
  ObservationSet out = design;
  for (auto& r : out.records) r.value = binding.predict(params, r);
  return out;
}

}  // namespace softhand::calibration
