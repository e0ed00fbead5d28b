#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hartogs/metric.hpp"
#include "hartogs/profile.hpp"

namespace hartogs {

// Brioschi formula on the slice metric with analytic derivatives. Equals -1/2
// for every admissible profile.
double gauss_curvature_slice(const Profile& p, const SlicePoint& sp);

// Brioschi formula for an arbitrary 2-D metric jet.
double brioschi(const SliceMetricJet& j);

// The Beltrami-Klein metric with its analytic jet.
SliceMetricJet beltrami_klein_jet(double x, double y);

// Curvature of the base {z = 0}, i.e. of the conformal metric -2 kcond(|z0|^2) |dz0|^2,
// at |z0|^2 = x.
double gauss_curvature_base(const Profile& p, double x);

// Monge-Ampere determinant J = -F^2 (x F'/F)' at x = |z0|^2.
double monge_ampere_J(const Profile& p, double x);

struct EinsteinReport {
  bool is_einstein = false;
  double max_relative_variation = 0.0;
  double mean_J = 0.0;
  std::size_t grid_size = 0;
};

inline constexpr double kConstancyTolerance = 1e-8;
inline constexpr double kFitTolerance = 1e-6;

// J constant on the grid (relative variation < 1e-8) iff g_F is Kahler-Einstein.
EinsteinReport einstein_check(const Profile& p, std::size_t grid = 64, double t_max = 50.0);

enum class ProfileClass { Hyperbolic, Spring, PowerPosCurv, PowerNegCurv, Generic };

std::string to_string(ProfileClass c);

struct ClassificationResult {
  ProfileClass family = ProfileClass::Generic;
  // Hyperbolic: F = c1 - c2 t.  Spring: F = c1 e^{-c2 t}.
  // Power: F = (c1 + c2 t)^{-2/K0}.
  double c1 = 0.0;
  double c2 = 0.0;
  double K0 = 0.0;
  // max |F - F_fit| / max |F| on the grid
  double fit_residual = 0.0;
};

// Tested in order: residual ODE vanishes (Hyperbolic), flat base (Spring),
// constant base curvature (power families), else Generic.
ClassificationResult classify_profile(const Profile& p, std::size_t grid = 64, double t_max = 50.0);

}  // namespace hartogs
