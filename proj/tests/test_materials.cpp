#include <doctest.h>

#include <cmath>
#include <variant>

#include "softhand/materials.hpp"

using namespace softhand::materials;

namespace {

double energy(const MaterialModel& m, const PrincipalStretches& s) {
  if (const auto* o = std::get_if<OgdenParameters>(&m)) return ogden_energy(*o, s);
  return mr_energy(std::get<MooneyRivlinParameters>(m), s);
}

double uniaxial_stress(const MaterialModel& m, double l) {
  if (const auto* o = std::get_if<OgdenParameters>(&m)) return ogden_uniaxial_stress(*o, l);
  return mr_uniaxial_stress(std::get<MooneyRivlinParameters>(m), l);
}

const char* hyperelastic[] = {"ogden_set1", "ogden_set2", "ogden_set3",
                              "mr_set1",    "mr_set2",    "mr_set3"};

}  // namespace

TEST_CASE("frozen energies and stresses") {
  CHECK(ogden_energy(ogden_set3(), PrincipalStretches::uniaxial(1.5)) ==
        doctest::Approx(15915.350652109382).epsilon(1e-12));
  CHECK(ogden_uniaxial_stress(ogden_set3(), 1.5) ==
        doctest::Approx(81962.097932373592).epsilon(1e-12));
  CHECK(mr_energy(mr_set1(), PrincipalStretches::uniaxial(1.2)) ==
        doctest::Approx(225307.77777777778).epsilon(1e-12));
  CHECK(mr_energy(mr_set2(), PrincipalStretches::equibiaxial(1.1)) ==
        doctest::Approx(118648.45809712451).epsilon(1e-12));
  CHECK(mr_uniaxial_stress(mr_set3(), 1.3) == doctest::Approx(1130421.3017751479).epsilon(1e-12));
  CHECK(ogden_uniaxial_stress(ogden_set1(), 1.0 + 1e-6) ==
        doctest::Approx(0.50066185952180677).epsilon(1e-7));
}

TEST_CASE("stretch states are incompressible") {
  for (double l : {0.5, 0.9, 1.0, 1.7, 3.0}) {
    for (const auto& s : {PrincipalStretches::uniaxial(l), PrincipalStretches::equibiaxial(l),
                          PrincipalStretches::planar(l)}) {
      CHECK(s.l1 * s.l2 * s.l3 == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("undeformed state carries no energy or stress") {
  for (const char* name : hyperelastic) {
    CAPTURE(name);
    const auto m = *find_preset(name);
    const double mu0 = small_strain_shear_modulus(m);
    CHECK(std::abs(energy(m, {})) < 1e-9 * mu0);
    CHECK(std::abs(uniaxial_stress(m, 1.0)) / mu0 < 1e-9);
  }
  for (auto p : {ogden_set1(), ogden_set2(), ogden_set3()}) {
    CHECK(std::abs(ogden_planar_stress(p, 1.0)) < 1e-9);
  }
}

TEST_CASE("uniaxial stress is the energy derivative") {
  for (const char* name : hyperelastic) {
    CAPTURE(name);
    const auto m = *find_preset(name);
    const double mu0 = small_strain_shear_modulus(m);
    for (int i = 0; i <= 36; ++i) {
      const double l = 0.7 + 0.05 * i;
      CAPTURE(l);
      const double h = 1e-5 * l;
      const double dw = (energy(m, PrincipalStretches::uniaxial(l + h)) -
                         energy(m, PrincipalStretches::uniaxial(l - h))) /
                        (2.0 * h);
      const double sigma = uniaxial_stress(m, l);
      CHECK(std::abs(l * dw - sigma) <= 1e-5 * std::abs(sigma) + 1e-9 * mu0);
    }
  }
}

TEST_CASE("planar stress derivative matches finite differences") {
  for (auto p : {ogden_set1(), ogden_set2(), ogden_set3()}) {
    for (double l : {0.9, 1.0, 1.3, 2.0}) {
      const double h = 1e-6;
      const double fd = (ogden_planar_stress(p, l + h) - ogden_planar_stress(p, l - h)) / (2 * h);
      CHECK(ogden_planar_stress_derivative(p, l) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("set1 is the stiffest in both families") {
  CHECK(small_strain_shear_modulus(ogden_set1()) > small_strain_shear_modulus(ogden_set2()));
  CHECK(small_strain_shear_modulus(ogden_set2()) > small_strain_shear_modulus(ogden_set3()));
  CHECK(small_strain_shear_modulus(mr_set1()) > small_strain_shear_modulus(mr_set2()));
  CHECK(small_strain_shear_modulus(mr_set2()) > small_strain_shear_modulus(mr_set3()));
}

TEST_CASE("small-strain shear moduli") {
  CHECK(small_strain_shear_modulus(mr_set3()) == doctest::Approx(2.0 * (0.21e6 + 0.525e6)));
  CHECK(small_strain_shear_modulus(pet()) == doctest::Approx(2.76e9 / (2.0 * 1.417)));
}

TEST_CASE("preset lookup") {
  CHECK(preset_names().size() == 7);
  for (const auto& n : preset_names()) CHECK(find_preset(n).has_value());
  CHECK_FALSE(find_preset("rubber").has_value());
  CHECK(std::holds_alternative<LinearElasticParameters>(*find_preset("pet")));
}

TEST_CASE("validation rejects unphysical parameters") {
  auto o = ogden_set3();
  CHECK(validate(o).empty());
  o.terms[0].alpha = 0.0;
  CHECK_FALSE(validate(o).empty());
  auto mr = mr_set3();
  CHECK(validate(mr).empty());
  mr.c10 = -mr.c01;
  CHECK_FALSE(validate(mr).empty());
  auto e = pet();
  CHECK(validate(e).empty());
  e.poisson_ratio = 0.5;
  CHECK_FALSE(validate(e).empty());
}
