#include "hartogs/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hartogs/connection.hpp"
#include "hartogs/error.hpp"

namespace hartogs {

namespace {

using State = std::array<double, 4>;  // u, v, u', v'

// The closed form stays accurate where the metric is nearly degenerate (v^2 close to F at
// large u); solving against the metric there loses up to half the digits.
State rhs(const Profile& p, const State& y) {
  const ChristoffelSlice g = christoffel_closed(p, {y[0], y[1]});
  const double a = y[2];
  const double b = y[3];
  return {a, b, -(g.G111 * a * a + 2.0 * g.G112 * a * b + g.G122 * b * b),
          -(g.G211 * a * a + 2.0 * g.G212 * a * b + g.G222 * b * b)};
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

State combine(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [c, k] : terms)
    for (std::size_t i = 0; i < 4; ++i) out[i] += h * c * (*k)[i];
  return out;
}

bool near_boundary(const Profile& p, const State& y, double guard) {
  const double x = y[0] * y[0];
  if (p.bounded() && x >= p.b() * (1.0 - guard)) return true;
  try {
    const double f = p.f(x);
    return !(f - y[1] * y[1] >= guard * f);
  } catch (const Error&) {
    return true;
  }
}

TraceSample make_sample(const Profile& p, double s, const State& y, const State& dy) {
  TraceSample t;
  t.s = s;
  t.point = {y[0], y[1]};
  t.du = y[2];
  t.dv = y[3];
  t.ddu = dy[2];
  t.ddv = dy[3];
  t.energy = slice_metric(p, t.point).norm2(y[2], y[3]);
  return t;
}

}  // namespace

double GeodesicTrace::max_energy_drift() const {
  double drift = 0.0;
  for (const auto& s : samples) drift = std::max(drift, std::abs(s.energy - energy) / energy);
  return drift;
}

TraceSample GeodesicTrace::at(double s) const {
  if (samples.empty()) throw DomainError("empty trace");
  if (s <= samples.front().s) return samples.front();
  if (s >= samples.back().s) return samples.back();
  const auto it = std::upper_bound(samples.begin(), samples.end(), s,
                                   [](double v, const TraceSample& t) { return v < t.s; });
  const TraceSample& a = *(it - 1);
  const TraceSample& b = *it;
  const double h = b.s - a.s;
  const double th = (s - a.s) / h;
  // Hermite basis
  const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
  const double h10 = th * (1 - th) * (1 - th);
  const double h01 = th * th * (3 - 2 * th);
  const double h11 = th * th * (th - 1);
  auto interp = [&](double p0, double m0, double p1, double m1) {
    return h00 * p0 + h10 * h * m0 + h01 * p1 + h11 * h * m1;
  };
  TraceSample out;
  out.s = s;
  out.point = {interp(a.point.u, a.du, b.point.u, b.du), interp(a.point.v, a.dv, b.point.v, b.dv)};
  out.du = interp(a.du, a.ddu, b.du, b.ddu);
  out.dv = interp(a.dv, a.ddv, b.dv, b.ddv);
  out.ddu = a.ddu + th * (b.ddu - a.ddu);
  out.ddv = a.ddv + th * (b.ddv - a.ddv);
  out.energy = a.energy + th * (b.energy - a.energy);
  return out;
}

std::vector<SlicePoint> GeodesicTrace::polyline() const {
  std::vector<SlicePoint> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples) pts.push_back(s.point);
  return pts;
}

GeodesicTrace integrate_geodesic(const Profile& p, const SlicePoint& start,
                                 const std::array<double, 2>& dir, double length,
                                 const StepControl& ctl) {
  if (!(length > 0.0)) throw DomainError("geodesic length must be positive");
  if (!std::isfinite(dir[0]) || !std::isfinite(dir[1]) || (dir[0] == 0.0 && dir[1] == 0.0))
    throw DomainError("geodesic direction must be finite and nonzero");
  const SliceMetric g0 = slice_metric(p, start);
  const double speed = std::sqrt(g0.norm2(dir[0], dir[1]));

  GeodesicTrace trace;
  trace.from_origin = start.u == 0.0 && start.v == 0.0;
  trace.energy = 1.0;

  State y{start.u, start.v, dir[0] / speed, dir[1] / speed};
  State k1 = rhs(p, y);
  double s = 0.0;
  double h = std::min(ctl.h_init, length);
  trace.samples.push_back(make_sample(p, s, y, k1));
  bool boundary_rejection = false;

  for (std::size_t step = 0; step < ctl.max_steps && s < length; ++step) {
    h = std::min({h, ctl.h_max, length - s});
    if (h < ctl.h_min) {
      trace.stop = boundary_rejection ? StopReason::BoundaryHit : StopReason::StepUnderflow;
      return trace;
    }

    State y5;
    State k7;
    double err = 0.0;
    try {
      const State k2 = rhs(p, combine(y, h, {{a21, &k1}}));
      const State k3 = rhs(p, combine(y, h, {{a31, &k1}, {a32, &k2}}));
      const State k4 = rhs(p, combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const State k5 = rhs(p, combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
      const State k6 =
          rhs(p, combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
      y5 = combine(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      if (near_boundary(p, y5, ctl.boundary_guard)) throw DomainError("boundary guard");
      k7 = rhs(p, y5);
      State e{};
      for (std::size_t i = 0; i < 4; ++i)
        e[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      // Local error in the metric norm at the new point; coordinates shrink like sqrt(F)
      // near the fibre boundary, so componentwise tolerances would be meaningless there.
      const SliceMetric g = slice_metric(p, {y5[0], y5[1]});
      const double pos = std::sqrt(std::max(0.0, g.norm2(e[0], e[1])));
      const double vel = std::sqrt(std::max(0.0, g.norm2(e[2], e[3])));
      err = std::max(pos, vel) / (ctl.atol + ctl.rtol);
      if (!std::isfinite(err)) throw DomainError("non-finite error estimate");
    } catch (const Error&) {
      boundary_rejection = true;
      ++trace.rejected_steps;
      h *= 0.5;
      continue;
    }

    if (err <= 1.0) {
      s = (length - s - h <= 1e-14 * length) ? length : s + h;
      y = y5;
      k1 = k7;
      trace.samples.push_back(make_sample(p, s, y, k1));
      boundary_rejection = false;
      if (!(kcond_condition(p, y[0] * y[0]) <= ctl.condition_limit)) {
        trace.stop = s < length ? StopReason::PrecisionLoss : StopReason::Completed;
        return trace;
      }
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      h *= grow;
    } else {
      ++trace.rejected_steps;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  if (s < length) trace.stop = StopReason::StepUnderflow;
  return trace;
}

// ---------------------------------------------------------------------------

DomainPoint SliceIsometry::apply(const DomainPoint& pt) const {
  DomainPoint out;
  out.z0 = std::polar(1.0, theta) * pt.z0;
  const Eigen::Map<const Eigen::VectorXcd> z(pt.z.data(), static_cast<Eigen::Index>(pt.z.size()));
  const Eigen::VectorXcd w = unitary * z;
  out.z.assign(w.data(), w.data() + w.size());
  return out;
}

DomainPoint SliceIsometry::apply_inverse(const DomainPoint& pt) const {
  DomainPoint out;
  out.z0 = std::polar(1.0, -theta) * pt.z0;
  const Eigen::Map<const Eigen::VectorXcd> z(pt.z.data(), static_cast<Eigen::Index>(pt.z.size()));
  const Eigen::VectorXcd w = unitary.adjoint() * z;
  out.z.assign(w.data(), w.data() + w.size());
  return out;
}

Eigen::VectorXcd SliceIsometry::apply(const Eigen::VectorXcd& tangent) const {
  Eigen::VectorXcd out(tangent.size());
  out(0) = std::polar(1.0, theta) * tangent(0);
  out.tail(tangent.size() - 1) = unitary * tangent.tail(tangent.size() - 1);
  return out;
}

SliceReduction reduce_to_slice(std::span<const cplx> dir) {
  if (dir.size() < 2) throw DomainError("direction needs n >= 2 complex components");
  const Eigen::Index m = static_cast<Eigen::Index>(dir.size() - 1);
  Eigen::VectorXcd w(m);
  for (Eigen::Index i = 0; i < m; ++i) w(i) = dir[static_cast<std::size_t>(i + 1)];
  const double a = std::abs(dir[0]);
  const double b = w.norm();
  if (!(a > 0.0 || b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("zero or non-finite direction");

  SliceReduction r;
  r.dir = {a, b};
  r.isometry.theta = a > 0.0 ? -std::arg(dir[0]) : 0.0;
  r.isometry.unitary = Eigen::MatrixXcd::Identity(m, m);
  if (b > 0.0) {
    const Eigen::VectorXcd x = w / b;
    // Phase the first component to be real and non-negative, then reflect onto e1.
    Eigen::MatrixXcd phase = Eigen::MatrixXcd::Identity(m, m);
    if (std::abs(x(0)) > 0.0) phase(0, 0) = std::polar(1.0, -std::arg(x(0)));
    const Eigen::VectorXcd xp = phase * x;
    Eigen::VectorXcd v = xp;
    v(0) -= 1.0;
    const double vn = v.squaredNorm();
    Eigen::MatrixXcd house = Eigen::MatrixXcd::Identity(m, m);
    if (vn > 1e-30) house -= (2.0 / vn) * v * v.adjoint();
    r.isometry.unitary = house * phase;
  }
  return r;
}

std::vector<DomainPoint> lift_trace(const GeodesicTrace& trace, const SliceIsometry& iso, int n) {
  std::vector<DomainPoint> out;
  out.reserve(trace.samples.size());
  for (const auto& s : trace.samples) out.push_back(iso.apply_inverse(embed(s.point, n)));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

double point_segment(const SlicePoint& p, const SlicePoint& a, const SlicePoint& b) {
  const double dx = b.u - a.u;
  const double dy = b.v - a.v;
  const double l2 = dx * dx + dy * dy;
  double t = l2 > 0.0 ? ((p.u - a.u) * dx + (p.v - a.v) * dy) / l2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.u - (a.u + t * dx), p.v - (a.v + t * dy));
}

double orient(const SlicePoint& a, const SlicePoint& b, const SlicePoint& c) {
  return (b.u - a.u) * (c.v - a.v) - (b.v - a.v) * (c.u - a.u);
}

double segment_distance(const SlicePoint& a, const SlicePoint& b, const SlicePoint& c,
                        const SlicePoint& d) {
  const double o1 = orient(a, b, c);
  const double o2 = orient(a, b, d);
  const double o3 = orient(c, d, a);
  const double o4 = orient(c, d, b);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
    return 0.0;
  return std::min({point_segment(a, c, d), point_segment(b, c, d), point_segment(c, a, b),
                   point_segment(d, a, b)});
}

}  // namespace

SelfIntersectionReport self_intersection_check(std::span<const SlicePoint> pts, double guard,
                                               std::size_t window) {
  if (pts.size() < 4) throw DomainError("self-intersection check needs at least 4 samples");
  SelfIntersectionReport r;
  r.min_distance = std::numeric_limits<double>::infinity();
  r.min_ratio = std::numeric_limits<double>::infinity();
  const std::size_t segs = pts.size() - 1;
  std::vector<double> len(segs);
  for (std::size_t i = 0; i < segs; ++i)
    len[i] = std::hypot(pts[i + 1].u - pts[i].u, pts[i + 1].v - pts[i].v);
  for (std::size_t i = 0; i < segs; ++i) {
    for (std::size_t j = i + window + 1; j < segs; ++j) {
      const double dist = segment_distance(pts[i], pts[i + 1], pts[j], pts[j + 1]);
      const double spacing = std::min(len[i], len[j]);
      const double ratio = spacing > 0.0 ? dist / spacing : (dist > 0.0 ? kInf : 0.0);
      r.min_distance = std::min(r.min_distance, dist);
      if (ratio < r.min_ratio) {
        r.min_ratio = ratio;
        r.segment_a = i;
        r.segment_b = j;
      }
    }
  }
  r.pass = !(r.min_ratio <= guard);
  return r;
}

SelfIntersectionReport self_intersection_check(const GeodesicTrace& trace, double guard,
                                               std::size_t window) {
  const auto pts = trace.polyline();
  return self_intersection_check(pts, guard, window);
}

}  // namespace hartogs
