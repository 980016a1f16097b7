#include "softhand/materials.hpp"

#include <cmath>
#include <sstream>

#include "softhand/errors.hpp"
#include "softhand/units.hpp"

namespace softhand::materials {

namespace {

void require_positive_stretches(const PrincipalStretches& s) {
  if (!(s.l1 > 0.0 && s.l2 > 0.0 && s.l3 > 0.0)) {
    std::ostringstream os;
    os << "principal stretches must be positive, got (" << s.l1 << ", " << s.l2 << ", " << s.l3
       << ")";
    throw DomainError(os.str());
  }
}

double finite_or_throw(double value, const char* what, double stretch) {
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << what << " is not finite at stretch " << stretch;
    throw DomainError(os.str());
  }
  return value;
}

}  // namespace

PrincipalStretches PrincipalStretches::uniaxial(double stretch) {
  const double lateral = 1.0 / std::sqrt(stretch);
  return {stretch, lateral, lateral};
}

PrincipalStretches PrincipalStretches::equibiaxial(double stretch) {
  return {stretch, stretch, 1.0 / (stretch * stretch)};
}

PrincipalStretches PrincipalStretches::planar(double stretch) {
  return {stretch, 1.0, 1.0 / stretch};
}

std::vector<std::string> validate(const OgdenParameters& p) {
  std::vector<std::string> issues;
  if (p.terms.empty() || p.terms.size() > 3) {
    issues.emplace_back("Ogden model needs between 1 and 3 terms");
  }
  for (const auto& t : p.terms) {
    if (!std::isfinite(t.mu) || !std::isfinite(t.alpha)) {
      issues.emplace_back("Ogden term has a non-finite coefficient");
    }
    if (t.alpha == 0.0) issues.emplace_back("Ogden exponent alpha must be nonzero");
  }
  if (issues.empty() && !(small_strain_shear_modulus(p) > 0.0)) {
    issues.emplace_back("Ogden small-strain shear modulus 1/2 sum(alpha*mu) must be positive");
  }
  if (!(p.density > 0.0)) issues.emplace_back("density must be positive");
  return issues;
}

std::vector<std::string> validate(const MooneyRivlinParameters& p) {
  std::vector<std::string> issues;
  if (!(small_strain_shear_modulus(p) > 0.0)) {
    issues.emplace_back("Mooney-Rivlin shear modulus 2(c10 + c01) must be positive");
  }
  if (!(p.density > 0.0)) issues.emplace_back("density must be positive");
  return issues;
}

std::vector<std::string> validate(const LinearElasticParameters& p) {
  std::vector<std::string> issues;
  if (!(p.youngs_modulus > 0.0)) issues.emplace_back("Young's modulus must be positive");
  if (!(p.poisson_ratio > 0.0 && p.poisson_ratio < 0.5)) {
    issues.emplace_back("Poisson ratio must lie in (0, 0.5)");
  }
  if (!(p.density > 0.0)) issues.emplace_back("density must be positive");
  return issues;
}

double ogden_energy(const OgdenParameters& p, const PrincipalStretches& s) {
  require_positive_stretches(s);
  double w = 0.0;
  for (const auto& t : p.terms) {
    w += t.mu / t.alpha *
         (std::pow(s.l1, t.alpha) + std::pow(s.l2, t.alpha) + std::pow(s.l3, t.alpha) - 3.0);
  }
  return finite_or_throw(w, "Ogden energy", s.l1);
}

double mr_energy(const MooneyRivlinParameters& p, const PrincipalStretches& s) {
  require_positive_stretches(s);
  const double a = s.l1 * s.l1, b = s.l2 * s.l2, c = s.l3 * s.l3;
  const double i1 = a + b + c;
  const double i2 = a * b + b * c + a * c;
  return finite_or_throw(p.c10 * (i1 - 3.0) + p.c01 * (i2 - 3.0), "Mooney-Rivlin energy", s.l1);
}

double ogden_uniaxial_stress(const OgdenParameters& p, double l) {
  if (!(l > 0.0)) throw DomainError("stretch must be positive");
  double sigma = 0.0;
  for (const auto& t : p.terms) {
    sigma += t.mu * (std::pow(l, t.alpha) - std::pow(l, -0.5 * t.alpha));
  }
  return finite_or_throw(sigma, "Ogden uniaxial stress", l);
}

double mr_uniaxial_stress(const MooneyRivlinParameters& p, double l) {
  if (!(l > 0.0)) throw DomainError("stretch must be positive");
  return finite_or_throw(2.0 * (p.c10 + p.c01 / l) * (l * l - 1.0 / l), "Mooney-Rivlin stress", l);
}

double ogden_planar_stress(const OgdenParameters& p, double l) {
  if (!(l > 0.0)) throw DomainError("stretch must be positive");
  double sigma = 0.0;
  for (const auto& t : p.terms) {
    sigma += t.mu * (std::pow(l, t.alpha) - std::pow(l, -t.alpha));
  }
  return finite_or_throw(sigma, "Ogden planar stress", l);
}

double ogden_planar_stress_derivative(const OgdenParameters& p, double l) {
  if (!(l > 0.0)) throw DomainError("stretch must be positive");
  double d = 0.0;
  for (const auto& t : p.terms) {
    d += t.mu * t.alpha * (std::pow(l, t.alpha - 1.0) + std::pow(l, -t.alpha - 1.0));
  }
  return finite_or_throw(d, "Ogden planar stiffness", l);
}

double ogden_planar_transverse_stress(const OgdenParameters& p, double l) {
  if (!(l > 0.0)) throw DomainError("stretch must be positive");
  double sigma = 0.0;
  for (const auto& t : p.terms) sigma += t.mu * (1.0 - std::pow(l, -t.alpha));
  return finite_or_throw(sigma, "Ogden transverse stress", l);
}

double small_strain_shear_modulus(const OgdenParameters& p) {
  double sum = 0.0;
  for (const auto& t : p.terms) sum += t.alpha * t.mu;
  return 0.5 * sum;
}

double small_strain_shear_modulus(const MooneyRivlinParameters& p) {
  return 2.0 * (p.c10 + p.c01);
}

double small_strain_shear_modulus(const LinearElasticParameters& p) {
  return p.youngs_modulus / (2.0 * (1.0 + p.poisson_ratio));
}

double small_strain_shear_modulus(const MaterialModel& m) {
  return std::visit([](const auto& p) { return small_strain_shear_modulus(p); }, m);
}

// Silicone sets. The tabulated D1 = 1e5 has no stated units.
OgdenParameters ogden_set1() {
  return {{{1.55, 107900.00}, {7.86, 21.47}, {-1.91, -87100.00}}, 1.0e5, 1070.0};
}

OgdenParameters ogden_set2() {
  return {{{1.05, 1.50e5}, {4.00, 60.00}, {-1.60, -1300.00}}, 1.0e5, 1070.0};
}

OgdenParameters ogden_set3() {
  return {{{1.05, 1.12e5}, {4.00, 45.00}, {-1.60, -975.00}}, 1.0e5, 1070.0};
}

// Thermoplastic polyurethane sets, table values in MPa and g/cm^3.
MooneyRivlinParameters mr_set1() {
  return {0.677 * units::MPa, 1.621 * units::MPa, 1.19 * units::g_per_cm3};
}

MooneyRivlinParameters mr_set2() {
  return {0.300 * units::MPa, 0.750 * units::MPa, 0.83 * units::g_per_cm3};
}

MooneyRivlinParameters mr_set3() {
  return {0.210 * units::MPa, 0.525 * units::MPa, 0.83 * units::g_per_cm3};
}

LinearElasticParameters pet() { return {2.76e9, 0.417, 5.44e9, 1541.0}; }

std::optional<MaterialModel> find_preset(std::string_view name) {
  if (name == "ogden_set1") return ogden_set1();
  if (name == "ogden_set2") return ogden_set2();
  if (name == "ogden_set3") return ogden_set3();
  if (name == "mr_set1") return mr_set1();
  if (name == "mr_set2") return mr_set2();
  if (name == "mr_set3") return mr_set3();
  if (name == "pet") return pet();
  return std::nullopt;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"ogden_set1", "ogden_set2", "ogden_set3",
                                                 "mr_set1",    "mr_set2",    "mr_set3",
                                                 "pet"};
  return names;
}

}  // namespace softhand::materials
