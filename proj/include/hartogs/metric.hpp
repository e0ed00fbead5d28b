#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "hartogs/profile.hpp"

namespace hartogs {

using cplx = std::complex<double>;

// Points with F - |z|^2 below this fraction of F are treated as lying on the boundary.
inline constexpr double kBoundaryGuard = 1e-12;

// (u, v) = (Re z0, Re z1) on the totally geodesic surface M = {Im z0 = Im z1 = 0, z2.. = 0}.
struct SlicePoint {
  double u = 0.0;
  double v = 0.0;
};

struct SliceMetric {
  double g11 = 0.0;
  double g12 = 0.0;
  double g22 = 0.0;

  double det() const { return g11 * g22 - g12 * g12; }
  double norm2(double a, double b) const { return g11 * a * a + 2.0 * g12 * a * b + g22 * b * b; }
};

// Metric on M with the derivatives needed by the connection and the curvature.
struct SliceMetricJet {
  SliceMetric g;
  SliceMetric du;
  SliceMetric dv;
  double g11_vv = 0.0;
  double g12_uv = 0.0;
  double g22_uu = 0.0;
};

struct DomainPoint {
  cplx z0;
  std::vector<cplx> z;  // length n - 1
};

DomainPoint origin(int n);
DomainPoint embed(const SlicePoint& sp, int n);

// F(|z0|^2) - |z|^2; throws DomainError when |z0|^2 >= b or the dimension is wrong.
double boundary_gap(const Profile& p, const DomainPoint& pt);
bool inside(const Profile& p, const DomainPoint& pt);
bool inside(const Profile& p, const SlicePoint& sp);

// -log(F(|z0|^2) - |z|^2)
double potential(const Profile& p, const DomainPoint& pt);

// h[i][j] = d^2 potential / dz_i dzbar_j, indices 0..n-1 with z_0 = z0.
Eigen::MatrixXcd hermitian_metric(const Profile& p, const DomainPoint& pt);

// Real 2n x 2n metric on coordinates (x0, y0, x1, y1, ...), z_k = x_k + i y_k:
// g(X, Y) = 2 Re sum h_ij X_i conj(Y_j).
Eigen::MatrixXd riemannian_metric(const Eigen::MatrixXcd& h);

// Induced metric on M in closed form:
//   g = 2/(F - v^2)^2 [[C, -F'uv], [-F'uv, F]],  C = F'^2 u^2 - (F' + F'' u^2)(F - v^2).
SliceMetric slice_metric(const Profile& p, const SlicePoint& sp);

// Same quantity obtained by restricting riemannian_metric(hermitian_metric(...)) to M.
SliceMetric slice_metric_generic(const Profile& p, const SlicePoint& sp);

SliceMetricJet slice_metric_jet(const Profile& p, const SlicePoint& sp);

// Beltrami-Klein metric of curvature -1/2 on the unit disk.
SliceMetric beltrami_klein(double x, double y);

}  // namespace hartogs
