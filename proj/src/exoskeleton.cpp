#include "softhand/exoskeleton.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "softhand/errors.hpp"

namespace softhand::exoskeleton {

std::array<HingeGeometry, 3> default_hinges() {
  return {HingeGeometry{14.0e-3, 2.5e-3, 3.5e-3}, HingeGeometry{14.0e-3, 3.0e-3, 3.5e-3},
          HingeGeometry{14.0e-3, 3.0e-3, 3.5e-3}};
}

ExoskeletonSpec default_spec() {
  ExoskeletonSpec spec;
  spec.joint_stiffnesses = stiffness_from_material(default_hinges(), spec.material);
  return spec;
}

std::vector<std::string> validate(const ExoskeletonSpec& spec) {
  std::vector<std::string> issues;
  for (double k : spec.joint_stiffnesses) {
    if (!(k > 0.0)) {
      issues.emplace_back("joint stiffnesses must be positive");
      break;
    }
  }
  for (double l : spec.segment_lengths) {
    if (!(l > 0.0)) {
      issues.emplace_back("segment lengths must be positive");
      break;
    }
  }
  for (double m : spec.segment_masses) {
    if (!(m >= 0.0)) {
      issues.emplace_back("segment masses must be non-negative");
      break;
    }
  }
  if (!(spec.gravity >= 0.0)) issues.emplace_back("gravity must be non-negative");
  for (auto& s : materials::validate(spec.material)) issues.push_back("material: " + s);
  return issues;
}

std::array<Point2, 5> joint_positions(const ExoskeletonSpec& spec, const Joint3& angles) {
  std::array<Point2, 5> pts;
  pts[1] = {spec.segment_lengths[0], 0.0};
  double phi = 0.0;
  for (int j = 0; j < 3; ++j) {
    phi -= angles[j];
    pts[j + 2] = {pts[j + 1].x + spec.segment_lengths[j + 1] * std::cos(phi),
                  pts[j + 1].y + spec.segment_lengths[j + 1] * std::sin(phi)};
  }
  return pts;
}

Point2 forward_kinematics(const ExoskeletonSpec& spec, const Joint3& angles) {
  return joint_positions(spec, angles)[4];
}

Joint3 stiffness_from_material(const std::array<HingeGeometry, 3>& hinges,
                               const materials::MooneyRivlinParameters& material) {
  const double e0 = 6.0 * (material.c10 + material.c01);
  Joint3 k{};
  for (int j = 0; j < 3; ++j) {
    const auto& h = hinges[j];
    if (!(h.width > 0.0 && h.thickness > 0.0 && h.length > 0.0)) {
      throw DomainError("hinge width, thickness and length must be positive");
    }
    k[j] = e0 * h.width * h.thickness * h.thickness * h.thickness / 12.0 / h.length;
  }
  return k;
}

std::vector<PointLoad> gravity_loads(const ExoskeletonSpec& spec) {
  std::vector<PointLoad> loads;
  for (int s = 1; s <= 3; ++s) {
    loads.push_back({s, 0.5, spec.segment_masses[s] * spec.gravity});
  }
  return loads;
}

namespace {

Point2 load_point(const std::array<Point2, 5>& pts, const PointLoad& load) {
  const Point2& a = pts[load.segment];
  const Point2& b = pts[load.segment + 1];
  return {a.x + load.fraction * (b.x - a.x), a.y + load.fraction * (b.y - a.y)};
}

void check_loads(const std::vector<PointLoad>& loads) {
  for (const auto& l : loads) {
    if (l.segment < 1 || l.segment > 3) throw DomainError("load segment must be 1, 2 or 3");
    if (!(l.fraction >= 0.0 && l.fraction <= 1.0)) {
      throw DomainError("load position must lie on its segment");
    }
    if (!std::isfinite(l.force)) throw DomainError("load must be finite");
  }
}

Eigen::Vector3d residual_vec(const ExoskeletonSpec& spec, const std::vector<PointLoad>& loads,
                             const Joint3& th, double scale) {
  const auto pts = joint_positions(spec, th);
  Eigen::Vector3d r;
  for (int j = 0; j < 3; ++j) {
    double m = 0.0;
    for (const auto& l : loads) {
      if (l.segment < j + 1) continue;
      m += scale * l.force * (load_point(pts, l).x - pts[j + 1].x);
    }
    r[j] = spec.joint_stiffnesses[j] * th[j] - m;
  }
  return r;
}

Eigen::Matrix3d jacobian(const ExoskeletonSpec& spec, const std::vector<PointLoad>& loads,
                         const Joint3& th, double scale) {
  const auto pts = joint_positions(spec, th);
  Eigen::Matrix3d jac = Eigen::Matrix3d::Zero();
  for (int j = 0; j < 3; ++j) {
    jac(j, j) = spec.joint_stiffnesses[j];
    for (int k = 0; k < 3; ++k) {
      const int outer = std::max(j, k);
      double sum = 0.0;
      for (const auto& l : loads) {
        if (l.segment < outer + 1) continue;
        sum += scale * l.force * (load_point(pts, l).y - pts[outer + 1].y);
      }
      jac(j, k) -= sum;
    }
  }
  return jac;
}

bool newton(const ExoskeletonSpec& spec, const std::vector<PointLoad>& loads, double scale,
            Joint3& th, const SolveOptions& opt, int& iterations, double& res_norm) {
  Eigen::Vector3d r = residual_vec(spec, loads, th, scale);
  res_norm = r.cwiseAbs().maxCoeff();
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (res_norm < opt.tolerance) return true;
    ++iterations;
    const Eigen::Vector3d step = jacobian(spec, loads, th, scale).partialPivLu().solve(-r);
    if (!step.allFinite()) return false;
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls) {
      Joint3 trial{th[0] + alpha * step[0], th[1] + alpha * step[1], th[2] + alpha * step[2]};
      const Eigen::Vector3d rt = residual_vec(spec, loads, trial, scale);
      const double nt = rt.cwiseAbs().maxCoeff();
      if (nt < res_norm || nt < opt.tolerance) {
        th = trial;
        r = rt;
        res_norm = nt;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) return res_norm < opt.tolerance;
  }
  return res_norm < opt.tolerance;
}

BendingState make_state(const ExoskeletonSpec& spec, const Joint3& th, double res, int iters) {
  BendingState s;
  s.joint_angles = th;
  s.fingertip_position = forward_kinematics(spec, th);
  s.fingertip_vertical_displacement = -s.fingertip_position.y;
  s.residual = res;
  s.iterations = iters;
  return s;
}

}  // namespace

Joint3 equilibrium_residual(const ExoskeletonSpec& spec, const std::vector<PointLoad>& loads,
                            const Joint3& angles) {
  check_loads(loads);
  const Eigen::Vector3d r = residual_vec(spec, loads, angles, 1.0);
  return {r[0], r[1], r[2]};
}

BendingState solve_equilibrium(const ExoskeletonSpec& spec, const std::vector<PointLoad>& loads,
                               const SolveOptions& options) {
  check_loads(loads);
  int iterations = 0;
  double res = 0.0;
  Joint3 th{};
  if (newton(spec, loads, 1.0, th, options, iterations, res)) {
    return make_state(spec, th, res, iterations);
  }
  for (int n = 4; n <= 256; n *= 2) {
    th = {};
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i) {
      ok = newton(spec, loads, static_cast<double>(i) / n, th, options, iterations, res);
    }
    if (ok) return make_state(spec, th, res, iterations);
  }
  std::ostringstream os;
  os << "exoskeleton equilibrium did not converge, residual " << res << " N m";
  throw ConvergenceError(os.str(), res);
}

BendingState deflection_under_load(const ExoskeletonSpec& spec, double tip_load,
                                   bool include_gravity) {
  if (!(tip_load >= 0.0)) throw DomainError("tip load must be >= 0");
  std::vector<PointLoad> loads;
  if (include_gravity) loads = gravity_loads(spec);
  loads.push_back({3, 0.0, tip_load});
  return solve_equilibrium(spec, loads);
}

double spring_energy(const ExoskeletonSpec& spec, const Joint3& angles) {
  double e = 0.0;
  for (int j = 0; j < 3; ++j) e += 0.5 * spec.joint_stiffnesses[j] * angles[j] * angles[j];
  return e;
}

double loading_path_work(const ExoskeletonSpec& spec, double tip_load, int steps) {
  if (steps < 1) throw DomainError("loading path needs at least one step");
  double work = 0.0;
  double prev_force = 0.0;
  double prev_drop = 0.0;
  for (int i = 1; i <= steps; ++i) {
    const double f = tip_load * i / steps;
    const auto st = deflection_under_load(spec, f, false);
    const double drop = -joint_positions(spec, st.joint_angles)[3].y;
    work += 0.5 * (prev_force + f) * (drop - prev_drop);
    prev_force = f;
    prev_drop = drop;
  }
  return work;
}

double mass_consistency_ratio(const ExoskeletonSpec& spec, double printed_volume) {
  if (!(printed_volume > 0.0)) throw DomainError("printed volume must be positive");
  double total = 0.0;
  for (double m : spec.segment_masses) total += m;
  return total / (spec.material.density * printed_volume);
}

}  // namespace softhand::exoskeleton
