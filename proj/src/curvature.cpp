#include "hartogs/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "hartogs/connection.hpp"
#include "hartogs/error.hpp"

namespace hartogs {

double brioschi(const SliceMetricJet& j) {
  const double E = j.g.g11;
  const double F = j.g.g12;
  const double G = j.g.g22;
  const double Eu = j.du.g11, Ev = j.dv.g11;
  const double Fu = j.du.g12, Fv = j.dv.g12;
  const double Gu = j.du.g22, Gv = j.dv.g22;

  auto det3 = [](double a11, double a12, double a13, double a21, double a22, double a23, double a31,
                 double a32, double a33) {
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
           a13 * (a21 * a32 - a22 * a31);
  };
  const double a = det3(-0.5 * j.g11_vv + j.g12_uv - 0.5 * j.g22_uu, 0.5 * Eu, Fu - 0.5 * Ev,  //
                        Fv - 0.5 * Gu, E, F,                                                  //
                        0.5 * Gv, F, G);
  const double b = det3(0.0, 0.5 * Ev, 0.5 * Gu,  //
                        0.5 * Ev, E, F,           //
                        0.5 * Gu, F, G);
  const double d = E * G - F * F;
  if (!(d > 0.0)) throw DegenerateMetric("metric is not positive definite");
  return (a - b) / (d * d);
}

double gauss_curvature_slice(const Profile& p, const SlicePoint& sp) {
  return brioschi(slice_metric_jet(p, sp));
}

SliceMetricJet beltrami_klein_jet(double x, double y) {
  const double w = 1.0 - x * x - y * y;
  if (!(w > 0.0)) throw DomainError("point outside the unit disk");
  // g = 2 w^{-2} (m11, m12, m22) with m = (1 - y^2, x y, 1 - x^2); w_x = -2x, w_y = -2y.
  const double k = 2.0 / (w * w);
  const double k_x = 8.0 * x / (w * w * w);
  const double k_y = 8.0 * y / (w * w * w);
  const double k_xx = 8.0 / (w * w * w) + 48.0 * x * x / (w * w * w * w);
  const double k_yy = 8.0 / (w * w * w) + 48.0 * y * y / (w * w * w * w);
  const double k_xy = 48.0 * x * y / (w * w * w * w);

  SliceMetricJet j;
  j.g = {k * (1.0 - y * y), k * x * y, k * (1.0 - x * x)};
  j.du = {k_x * (1.0 - y * y), k_x * x * y + k * y, k_x * (1.0 - x * x) - 2.0 * k * x};
  j.dv = {k_y * (1.0 - y * y) - 2.0 * k * y, k_y * x * y + k * x, k_y * (1.0 - x * x)};
  j.g11_vv = k_yy * (1.0 - y * y) - 4.0 * k_y * y - 2.0 * k;
  j.g12_uv = k_xy * x * y + k_x * x + k_y * y + k;
  j.g22_uu = k_xx * (1.0 - x * x) - 4.0 * k_x * x - 2.0 * k;
  return j;
}

double gauss_curvature_base(const Profile& p, double x) {
  const KcondJet j = kcond_jet(p, x);
  if (!(j.k0 < 0.0)) throw DegenerateMetric("base metric is not positive at this radius");
  // Conformal factor lambda = -2 kcond(|z0|^2); K = -(2/lambda) (x (log lambda)')'.
  const double r1 = j.k1 / j.k0;
  const double r2 = j.k2 / j.k0;
  return (r1 + x * r2 - x * r1 * r1) / j.k0;
}

double monge_ampere_J(const Profile& p, double x) {
  const double k = kcond(p, x);
  const double f = p.f(x);
  return -f * f * k;
}

EinsteinReport einstein_check(const Profile& p, std::size_t grid, double t_max) {
  const auto ts = chebyshev_grid(p, grid, t_max);
  std::vector<double> js;
  js.reserve(ts.size());
  for (double t : ts) js.push_back(monge_ampere_J(p, t));
  double mean = 0.0;
  for (double j : js) mean += j;
  mean /= static_cast<double>(js.size());
  double var = 0.0;
  for (double j : js) var = std::max(var, std::abs(j - mean) / std::abs(mean));
  EinsteinReport r;
  r.grid_size = js.size();
  r.mean_J = mean;
  r.max_relative_variation = var;
  r.is_einstein = var < kConstancyTolerance;
  return r;
}

std::string to_string(ProfileClass c) {
  switch (c) {
    case ProfileClass::Hyperbolic: return "Hyperbolic";
    case ProfileClass::Spring: return "Spring";
    case ProfileClass::PowerPosCurv: return "PowerPosCurv";
    case ProfileClass::PowerNegCurv: return "PowerNegCurv";
    case ProfileClass::Generic: return "Generic";
  }
  return "Generic";
}

namespace {

// Scaled by max |F| rather than pointwise: near a finite b the profile vanishes and a
// pointwise ratio would only measure roundoff in the fitted parameters.
template <class Fit>
double fit_deviation(const Profile& p, const std::vector<double>& ts, Fit&& fit) {
  double worst = 0.0;
  double top = 0.0;
  for (double t : ts) {
    const double f = p.f(t);
    worst = std::max(worst, std::abs(f - fit(t)));
    top = std::max(top, std::abs(f));
  }
  return worst / top;
}

}  // namespace

ClassificationResult classify_profile(const Profile& p, std::size_t grid, double t_max) {
  const auto ts = chebyshev_grid(p, grid, t_max);
  const double f0 = p.f(0.0);
  const double f10 = p.f1(0.0);
  ClassificationResult r;

  double worst_r = 0.0;
  for (double t : ts) worst_r = std::max(worst_r, std::abs(residual_ode(p, t)));
  if (worst_r <= 1e-9 * std::max(1.0, f0 * f0) && f10 < 0.0) {
    const double c1 = f0;
    const double c2 = -f10;
    const double dev = fit_deviation(p, ts, [&](double t) { return c1 - c2 * t; });
    if (dev < kFitTolerance) {
      r.family = ProfileClass::Hyperbolic;
      r.c1 = c1;
      r.c2 = c2;
      r.K0 = -2.0;
      r.fit_residual = dev;
      return r;
    }
  }

  std::vector<double> ks;
  ks.reserve(ts.size());
  try {
    for (double t : ts) ks.push_back(gauss_curvature_base(p, t));
  } catch (const Error&) {
    return r;
  }
  double mean = 0.0;
  double max_abs = 0.0;
  for (double k : ks) {
    mean += k;
    max_abs = std::max(max_abs, std::abs(k));
  }
  mean /= static_cast<double>(ks.size());

  if (max_abs < kConstancyTolerance) {
    const double c = f0;
    const double k = -f10 / f0;
    const double dev = fit_deviation(p, ts, [&](double t) { return c * std::exp(-k * t); });
    r.fit_residual = dev;
    if (c > 0.0 && k > 0.0 && dev < kFitTolerance) {
      r.family = ProfileClass::Spring;
      r.c1 = c;
      r.c2 = k;
      r.K0 = 0.0;
    }
    return r;
  }

  double var = 0.0;
  for (double k : ks) var = std::max(var, std::abs(k - mean) / std::abs(mean));
  if (var < kConstancyTolerance) {
    const double q = -2.0 / mean;
    const double c1 = std::pow(f0, 1.0 / q);
    const double c2 = f10 * std::pow(f0, 1.0 / q - 1.0) / q;
    const double dev = fit_deviation(p, ts, [&](double t) { return std::pow(c1 + c2 * t, q); });
    r.fit_residual = dev;
    const bool pos = mean > 0.0 && c2 > 0.0;
    const bool neg = mean < 0.0 && c2 < 0.0;
    if (c1 > 0.0 && (pos || neg) && dev < kFitTolerance) {
      r.family = pos ? ProfileClass::PowerPosCurv : ProfileClass::PowerNegCurv;
      r.c1 = c1;
      r.c2 = c2;
      r.K0 = mean;
    }
    return r;
  }
  r.fit_residual = var;
  return r;
}

}  // namespace hartogs
