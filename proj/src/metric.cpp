#include "hartogs/metric.hpp"

#include <cmath>
#include <string>

#include "hartogs/error.hpp"

namespace hartogs {

DomainPoint origin(int n) { return DomainPoint{cplx{}, std::vector<cplx>(static_cast<std::size_t>(n - 1))}; }

DomainPoint embed(const SlicePoint& sp, int n) {
  DomainPoint pt = origin(n);
  pt.z0 = sp.u;
  pt.z[0] = sp.v;
  return pt;
}

double boundary_gap(const Profile& p, const DomainPoint& pt) {
  if (static_cast<int>(pt.z.size()) != p.n() - 1)
    throw DomainError("point has " + std::to_string(pt.z.size() + 1) + " coordinates, expected " +
                      std::to_string(p.n()));
  const double x = std::norm(pt.z0);
  if (!p.contains(x)) throw DomainError("|z0|^2 outside [0, b)");
  double zz = 0.0;
  for (const cplx& w : pt.z) zz += std::norm(w);
  return p.f(x) - zz;
}

namespace {

bool clear_of_boundary(double f, double gap) { return f > 0.0 && gap >= kBoundaryGuard * f; }

}  // namespace

bool inside(const Profile& p, const DomainPoint& pt) {
  try {
    const double gap = boundary_gap(p, pt);
    return clear_of_boundary(p.f(std::norm(pt.z0)), gap);
  } catch (const Error&) {
    return false;
  }
}

bool inside(const Profile& p, const SlicePoint& sp) {
  const double x = sp.u * sp.u;
  if (!p.contains(x)) return false;
  try {
    const double f = p.f(x);
    return clear_of_boundary(f, f - sp.v * sp.v);
  } catch (const Error&) {
    return false;
  }
}

namespace {

double checked_gap(const Profile& p, const DomainPoint& pt) {
  const double gap = boundary_gap(p, pt);
  if (!clear_of_boundary(p.f(std::norm(pt.z0)), gap)) throw DomainError("point on or outside the boundary of D_F");
  return gap;
}

void require_inside(const Profile& p, const SlicePoint& sp) {
  if (!inside(p, sp))
    throw DomainError("slice point (" + std::to_string(sp.u) + ", " + std::to_string(sp.v) +
                      ") outside M");
}

}  // namespace

double potential(const Profile& p, const DomainPoint& pt) { return -std::log(checked_gap(p, pt)); }

Eigen::MatrixXcd hermitian_metric(const Profile& p, const DomainPoint& pt) {
  const double g = checked_gap(p, pt);
  const double x = std::norm(pt.z0);
  const double f1 = p.f1(x);
  const double f2 = p.f2(x);
  const int n = p.n();
  Eigen::MatrixXcd h(n, n);
  h(0, 0) = -(f1 + x * f2) / g + f1 * f1 * x / (g * g);
  for (int j = 1; j < n; ++j) {
    const cplx zj = pt.z[static_cast<std::size_t>(j - 1)];
    h(0, j) = -f1 * std::conj(pt.z0) * zj / (g * g);
    h(j, 0) = std::conj(h(0, j));
  }
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) {
      const cplx zi = pt.z[static_cast<std::size_t>(i - 1)];
      const cplx zj = pt.z[static_cast<std::size_t>(j - 1)];
      h(i, j) = (i == j ? 1.0 / g : 0.0) + std::conj(zi) * zj / (g * g);
    }
  }
  return h;
}

Eigen::MatrixXd riemannian_metric(const Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd g(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = 2.0 * h(i, j).real();
      const double im = 2.0 * h(i, j).imag();
      g(2 * i, 2 * j) = re;
      g(2 * i + 1, 2 * j + 1) = re;
      g(2 * i, 2 * j + 1) = im;
      g(2 * i + 1, 2 * j) = -im;
    }
  }
  return g;
}

SliceMetric slice_metric(const Profile& p, const SlicePoint& sp) {
  require_inside(p, sp);
  const double u = sp.u;
  const double v = sp.v;
  const double x = u * u;
  const auto [f, f1, f2, f3] = p.at(x);
  const double s = f - v * v;
  const double c = f1 * f1 * x - (f1 + f2 * x) * s;
  const double k = 2.0 / (s * s);
  return {k * c, -k * f1 * u * v, k * f};
}

SliceMetric slice_metric_generic(const Profile& p, const SlicePoint& sp) {
  require_inside(p, sp);
  const Eigen::MatrixXd g = riemannian_metric(hermitian_metric(p, embed(sp, p.n())));
  // Re z0 is real coordinate 0, Re z1 is real coordinate 2.
  return {g(0, 0), g(0, 2), g(2, 2)};
}

SliceMetricJet slice_metric_jet(const Profile& p, const SlicePoint& sp) {
  require_inside(p, sp);
  const double u = sp.u;
  const double v = sp.v;
  const double x = u * u;
  const auto [f, f1, f2, f3] = p.at(x);
  const double s = f - v * v;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double s4 = s3 * s;
  const double s_u = 2.0 * u * f1;

  const double c = f1 * f1 * x - (f1 + f2 * x) * s;
  const double c_u = 2.0 * u * (f1 * f2 * x - (2.0 * f2 + f3 * x) * s);
  const double c_v = 2.0 * v * (f1 + f2 * x);
  const double c_vv = 2.0 * (f1 + f2 * x);

  const double a = f1 * u;
  const double a_u = f1 + 2.0 * x * f2;

  SliceMetricJet j;
  j.g = {2.0 * c / s2, -2.0 * a * v / s2, 2.0 * f / s2};

  j.du.g11 = 2.0 * c_u / s2 - 4.0 * c * s_u / s3;
  j.dv.g11 = 2.0 * c_v / s2 + 8.0 * c * v / s3;
  j.g11_vv = 2.0 * c_vv / s2 + 16.0 * v * c_v / s3 + 8.0 * c / s3 + 48.0 * c * v * v / s4;

  const double b12 = a_u / s2 - 2.0 * a * s_u / s3;
  j.du.g12 = -2.0 * v * b12;
  j.dv.g12 = -2.0 * a * (1.0 / s2 + 4.0 * v * v / s3);
  j.g12_uv = -2.0 * b12 - 2.0 * v * (4.0 * v * a_u / s3 - 12.0 * v * a * s_u / s4);

  j.du.g22 = 4.0 * u * f1 / s2 - 8.0 * u * f * f1 / s3;
  j.dv.g22 = 8.0 * f * v / s3;
  // g22 as a function of x = u^2: d/du = 2u d/dx, d2/du2 = 2 d/dx + 4x d2/dx2.
  const double h_x = 2.0 * f1 / s2 - 4.0 * f * f1 / s3;
  const double h_xx =
      2.0 * f2 / s2 - 8.0 * f1 * f1 / s3 - 4.0 * f * f2 / s3 + 12.0 * f * f1 * f1 / s4;
  j.g22_uu = 2.0 * h_x + 4.0 * x * h_xx;
  return j;
}

SliceMetric beltrami_klein(double x, double y) {
  const double w = 1.0 - x * x - y * y;
  if (!(w > 0.0)) throw DomainError("point outside the unit disk");
  const double k = 2.0 / (w * w);
  return {k * (1.0 - y * y), k * x * y, k * (1.0 - x * x)};
}

}  // namespace hartogs
