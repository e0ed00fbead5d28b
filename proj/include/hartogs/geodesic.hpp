#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hartogs/metric.hpp"
#include "hartogs/profile.hpp"

namespace hartogs {

// Embedded Dormand-Prince 5(4) step control. The local error is measured in the
// metric norm of the slice and compared against atol + rtol (the speed is 1).
struct StepControl {
  double atol = 1e-10;
  double rtol = 1e-9;
  double h_init = 1e-3;
  double h_min = 1e-13;
  double h_max = 0.05;
  std::size_t max_steps = 2'000'000;
  // Stop once F(u^2) - v^2 < boundary_guard * F(u^2) (or u^2 >= b (1 - boundary_guard)).
  double boundary_guard = 1e-8;
  // Stop once kcond(u^2) is computed with a cancellation factor above this (far out along
  // the base of an incomplete domain the geodesic runs off to infinity in finite length).
  double condition_limit = 1e5;
};

enum class StopReason { Completed, BoundaryHit, StepUnderflow, PrecisionLoss };

struct TraceSample {
  double s = 0.0;  // arc length
  SlicePoint point;
  double du = 0.0;
  double dv = 0.0;
  double ddu = 0.0;
  double ddv = 0.0;
  double energy = 0.0;  // g(gamma', gamma')
};

// Geodesic on M sampled at the accepted integrator steps, unit speed.
struct GeodesicTrace {
  std::vector<TraceSample> samples;
  double energy = 1.0;
  StopReason stop = StopReason::Completed;
  // Geodesics through the origin are the ones the completeness and
  // non-self-intersection results speak about.
  bool from_origin = false;
  std::size_t rejected_steps = 0;

  double length() const { return samples.empty() ? 0.0 : samples.back().s; }
  double max_energy_drift() const;
  // Cubic Hermite dense output; s is clamped to the sampled range.
  TraceSample at(double s) const;
  std::vector<SlicePoint> polyline() const;
};

// Integrates u'' + Gamma^1_jk x^j' x^k' = 0, v'' + Gamma^2_jk x^j' x^k' = 0 from start
// with initial direction dir rescaled to unit speed, for arc length `length`.
// Stops early (without throwing) at the boundary guard or on step-size underflow.
GeodesicTrace integrate_geodesic(const Profile& p, const SlicePoint& start,
                                 const std::array<double, 2>& dir, double length,
                                 const StepControl& ctl = {});

// Element of U(1) x U(n-1) acting by (z0, z) -> (e^{i theta} z0, U z).
struct SliceIsometry {
  double theta = 0.0;
  Eigen::MatrixXcd unitary;

  DomainPoint apply(const DomainPoint& pt) const;
  DomainPoint apply_inverse(const DomainPoint& pt) const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& tangent) const;
};

struct SliceReduction {
  std::array<double, 2> dir{};
  SliceIsometry isometry;
};

// Maps a tangent vector at the origin (w0, w) to the slice direction (|w0|, |w|)
// and the isometry that carries it there.
SliceReduction reduce_to_slice(std::span<const cplx> dir);

// Full-domain points of the geodesic whose slice image is `trace`.
std::vector<DomainPoint> lift_trace(const GeodesicTrace& trace, const SliceIsometry& iso, int n);

struct SelfIntersectionReport {
  bool pass = true;
  double min_distance = 0.0;
  // smallest distance / local spacing over all screened segment pairs
  double min_ratio = 0.0;
  std::size_t segment_a = 0;
  std::size_t segment_b = 0;
};

// Screens non-adjacent polyline segments (index gap > window) for contact:
// fails when some pair is closer than guard times the shorter of the two segments.
SelfIntersectionReport self_intersection_check(std::span<const SlicePoint> polyline,
                                               double guard = 0.5, std::size_t window = 2);
SelfIntersectionReport self_intersection_check(const GeodesicTrace& trace, double guard = 0.5,
                                               std::size_t window = 2);

}  // namespace hartogs
