#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace softhand::materials {

struct OgdenTerm {
  double alpha;  // dimensionless exponent, never 0
  double mu;     // Pa
};

/**
 * Incompressible Ogden model
 *
 *   W = sum_i (mu_i / alpha_i) (l1^alpha_i + l2^alpha_i + l3^alpha_i - 3)
 *
 * with between one and three terms. `d1` is the tabulated volumetric
 * parameter; the reduced-order models treat the material as exactly
 * incompressible so it is carried for reference only.
 */
struct OgdenParameters {
  std::vector<OgdenTerm> terms;
  double d1 = 0.0;
  double density = 0.0;  // kg/m^3
};

/// W = c10 (I1 - 3) + c01 (I2 - 3), incompressible.
struct MooneyRivlinParameters {
  double c10 = 0.0;  // Pa
  double c01 = 0.0;  // Pa
  double density = 0.0;
};

struct LinearElasticParameters {
  double youngs_modulus = 0.0;  // Pa
  double poisson_ratio = 0.0;
  double yield_stress = 0.0;  // Pa
  double density = 0.0;
};

struct PrincipalStretches {
  double l1 = 1.0;
  double l2 = 1.0;
  double l3 = 1.0;

  static PrincipalStretches uniaxial(double stretch);
  static PrincipalStretches equibiaxial(double stretch);
  /// (l, 1, 1/l): one direction held, the other free.
  static PrincipalStretches planar(double stretch);
};

// Validation returns human-readable violations; an empty vector means valid.
std::vector<std::string> validate(const OgdenParameters& p);
std::vector<std::string> validate(const MooneyRivlinParameters& p);
std::vector<std::string> validate(const LinearElasticParameters& p);

double ogden_energy(const OgdenParameters& p, const PrincipalStretches& s);
double mr_energy(const MooneyRivlinParameters& p, const PrincipalStretches& s);

/// Cauchy stress under incompressible uniaxial tension at stretch `l`.
double ogden_uniaxial_stress(const OgdenParameters& p, double l);
double mr_uniaxial_stress(const MooneyRivlinParameters& p, double l);

/// Cauchy stress along the stretched axis of the planar state (l, 1, 1/l)
/// with zero stress through the thickness.
double ogden_planar_stress(const OgdenParameters& p, double l);
double ogden_planar_stress_derivative(const OgdenParameters& p, double l);

/// Cauchy stress in the held direction of the planar state (l, 1, 1/l).
double ogden_planar_transverse_stress(const OgdenParameters& p, double l);

/// mu0 = 1/2 sum alpha_i mu_i for Ogden, 2 (c10 + c01) for Mooney-Rivlin,
/// E / (2 (1 + nu)) for linear elastic.
double small_strain_shear_modulus(const OgdenParameters& p);
double small_strain_shear_modulus(const MooneyRivlinParameters& p);
double small_strain_shear_modulus(const LinearElasticParameters& p);

using MaterialModel =
    std::variant<OgdenParameters, MooneyRivlinParameters, LinearElasticParameters>;

double small_strain_shear_modulus(const MaterialModel& m);

// Named presets. Table values are converted to SI here.
OgdenParameters ogden_set1();
OgdenParameters ogden_set2();
OgdenParameters ogden_set3();
MooneyRivlinParameters mr_set1();
MooneyRivlinParameters mr_set2();
MooneyRivlinParameters mr_set3();
LinearElasticParameters pet();

std::optional<MaterialModel> find_preset(std::string_view name);
const std::vector<std::string>& preset_names();

}  // namespace softhand::materials
