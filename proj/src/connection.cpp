#include "hartogs/connection.hpp"

#include <cmath>

#include "hartogs/error.hpp"

namespace hartogs {

namespace {

void require_nondegenerate(double d, const SliceMetric& g) {
  if (!(d > 1e-14 * std::abs(g.g11 * g.g22)) || !std::isfinite(d))
    throw DegenerateMetric("slice metric is degenerate (D = " + std::to_string(d) + ")");
}

}  // namespace

double slice_determinant(const Profile& p, const SlicePoint& sp) {
  const SliceMetric g = slice_metric(p, sp);  // checks sp
  const double u = sp.u;
  const double v = sp.v;
  const double x = u * u;
  const auto [f, f1, f2, f3] = p.at(x);
  const double s = f - v * v;
  // C F - F'^2 u^2 v^2 = s (F'^2 u^2 - (F' + F'' u^2) F), which avoids the cancellation as v^2 -> F
  const double d = 4.0 * (f1 * f1 * x - (f1 + f2 * x) * f) / (s * s * s);
  require_nondegenerate(d, g);
  return d;
}

ChristoffelSlice christoffel_closed(const Profile& p, const SlicePoint& sp, ClosedForm form) {
  const double d = slice_determinant(p, sp);
  const double u = sp.u;
  const double v = sp.v;
  const double x = u * u;
  const auto [f, f1, f2, f3] = p.at(x);
  const double w = v * v - f;  // appears as (v^2 - F) in every denominator
  const double w3 = w * w * w;
  const double w4 = w3 * w;
  const double common = -x * f1 * f1 + f * (f1 + x * f2);
  const double lead = form == ClosedForm::Corrected ? f1 : 1.0;

  ChristoffelSlice g;
  g.G111 = -4.0 * u / (d * w4) *
           (x * lead * (2.0 * f1 * f1 + v * v * f2) - f * w * (2.0 * f2 + x * f3) -
            f * f1 * (2.0 * f1 + 3.0 * x * f2));
  g.G211 = 4.0 * x * v / (d * w3) * (-x * f2 * f2 + f1 * (f2 + x * f3));
  g.G112 = -4.0 * v / (d * w4) * common;
  g.G212 = 4.0 * u * f1 / (d * w4) * common;
  g.G122 = 0.0;
  g.G222 = -8.0 * v / (d * w4) * common;
  return g;
}

ChristoffelSlice christoffel_generic(const Profile& p, const SlicePoint& sp) {
  const SliceMetricJet j = slice_metric_jet(p, sp);
  const double d = j.g.det();
  require_nondegenerate(d, j.g);

  // dg[i][k][l] = d_l g_ik, indices 0 = u, 1 = v
  const double inv[2][2] = {{j.g.g22 / d, -j.g.g12 / d}, {-j.g.g12 / d, j.g.g11 / d}};
  const double dg[2][2][2] = {
      {{j.du.g11, j.dv.g11}, {j.du.g12, j.dv.g12}},
      {{j.du.g12, j.dv.g12}, {j.du.g22, j.dv.g22}},
  };
  auto gamma = [&](int k, int a, int b) {
    double sum = 0.0;
    for (int l = 0; l < 2; ++l)
      sum += inv[k][l] * (dg[b][l][a] + dg[a][l][b] - dg[a][b][l]);
    return 0.5 * sum;
  };
  ChristoffelSlice c;
  c.G111 = gamma(0, 0, 0);
  c.G211 = gamma(1, 0, 0);
  c.G112 = gamma(0, 0, 1);
  c.G212 = gamma(1, 0, 1);
  c.G122 = gamma(0, 1, 1);
  c.G222 = gamma(1, 1, 1);
  return c;
}

double residual_ode(const Profile& p, double t) {
  if (!p.contains(t)) throw DomainError("t = " + std::to_string(t) + " outside [0, b)");
  const auto [f, f1, f2, f3] = p.at(t);
  return t * t * f2 * f2 + f * (2.0 * f2 + t * f3) - f1 * (2.0 * t * f2 + t * t * f3);
}

double straightline_residual(const Profile& p, double k, double u) {
  if (k == 0.0) throw DomainError("slope k must be nonzero");
  const ChristoffelSlice g = christoffel_closed(p, {u, k * u});
  return g.G211 + k * (2.0 * g.G212 - g.G111) + k * k * (g.G222 - 2.0 * g.G112) -
         k * k * k * g.G122;
}

namespace {

double residual_form(const Profile& p, double k, double u, double factor) {
  if (k == 0.0) throw DomainError("slope k must be nonzero");
  const SlicePoint sp{u, k * u};
  const double d = slice_determinant(p, sp);
  const double x = u * u;
  const double w = k * k * x - p.f(x);
  return factor * k * u * residual_ode(p, x) / (d * w * w * w);
}

}  // namespace

double straightline_residual_algebraic(const Profile& p, double k, double u) {
  return residual_form(p, k, u, -4.0);
}

double straightline_residual_as_printed(const Profile& p, double k, double u) {
  return residual_form(p, k, u, 8.0);
}

}  // namespace hartogs
