// Acceptance run: one PASS/FAIL line per criterion AC1..AC10, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hartogs/connection.hpp"
#include "hartogs/curvature.hpp"
#include "hartogs/families.hpp"
#include "hartogs/geodesic.hpp"
#include "hartogs/hyperbolic.hpp"
#include "hartogs/sampling.hpp"

using namespace hartogs;

namespace {

constexpr Family kFamilies[] = {Family::Linear, Family::Spring, Family::PowerPos, Family::PowerNeg};

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;  // printed indented below the verdict line
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 4 families x 3 seeded draws
std::vector<Profile> battery(std::uint64_t seed, int n = 2) {
  std::mt19937_64 rng(seed);
  std::vector<Profile> out;
  for (Family f : kFamilies)
    for (int k = 0; k < 3; ++k) out.push_back(random_profile(f, rng, n));
  return out;
}

double rel_diff(const SliceMetric& a, const SliceMetric& b) {
  const double s = std::abs(b.g11) + std::abs(b.g22);
  return std::max({std::abs(a.g11 - b.g11), std::abs(a.g12 - b.g12), std::abs(a.g22 - b.g22)}) / s;
}

Outcome ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (const Profile& p : battery(1))
    for (int k = 0; k < 100; ++k)
      worst = std::max(worst, std::abs(gauss_curvature_slice(p, random_slice_point(p, rng)) + 0.5));
  const double dt = seconds_since(t0);
  return {worst <= 1e-6 && dt < 5.0,
          "max |K + 1/2| = " + fmt("%.2e", worst) + " over 1200 points, " + fmt("%.3f", dt) + " s",
          {}};
}

Outcome ac2() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> coef(0.5, 2.5);
  double worst = 0.0;
  bool all_incomplete = true;
  for (int p = 1; p <= 4; ++p) {
    for (int draw = 0; draw < 2; ++draw) {
      const double c1 = draw == 0 ? 1.0 : coef(rng);
      const double c2 = draw == 0 ? 1.0 : coef(rng);
      const CompletenessReport r = completeness(power_pos_profile(c1, c2, p));
      all_incomplete = all_incomplete && r.verdict == Verdict::Incomplete;
      worst = std::max(worst, std::abs(r.integral_value - std::numbers::pi / 2 * std::sqrt(p)));
    }
  }
  const double dt = seconds_since(t0);
  return {all_incomplete && worst <= 1e-6 && dt < 1.0,
          "max |I - (pi/2) sqrt p| = " + fmt("%.2e", worst) + " for p = 1..4, " + fmt("%.3f", dt) + " s",
          {}};
}

Outcome ac3() {
  std::mt19937_64 rng(103);
  Outcome o;
  int spring = 0, power = 0;
  for (int k = 0; k < 3; ++k) {
    spring += completeness(random_profile(Family::Spring, rng)).verdict == Verdict::Complete;
    power += completeness(random_profile(Family::PowerPos, rng)).verdict == Verdict::Incomplete;
  }
  const bool ball = completeness(Profile::parse("1 - t", 1.0, 2)).verdict == Verdict::Complete;
  o.pass = spring == 3 && power == 3 && ball;
  o.detail = "Spring Complete " + std::to_string(spring) + "/3, 1 - t " +
             (ball ? "Complete" : "not Complete") + ", (c1 + c2 t)^(-p) Incomplete " +
             std::to_string(power) + "/3";
  int neg = 0;
  for (int k = 0; k < 3; ++k)
    neg += completeness(random_profile(Family::PowerNeg, rng)).verdict == Verdict::Complete;
  o.notes.push_back("(c1 + c2 t)^q with c2 < 0: Complete " + std::to_string(neg) +
                    "/3 (integrand ~ 1/(sqrt b - u) at the boundary)");
  return o;
}

Outcome ac4() {
  std::mt19937_64 rng(104);
  double worst = 0.0;
  double worst_g122 = 0.0;
  double printed = 0.0;
  for (Family f : kFamilies) {
    const Profile p = random_profile(f, rng);
    for (int k = 0; k < 100; ++k) {
      const SlicePoint sp = random_slice_point(p, rng);
      const ChristoffelSlice g = christoffel_generic(p, sp);
      const ChristoffelSlice c = christoffel_closed(p, sp);
      const ChristoffelSlice t = christoffel_closed(p, sp, ClosedForm::AsPrinted);
      const double s = std::max({std::abs(g.G111), std::abs(g.G211), std::abs(g.G112),
                                 std::abs(g.G212), std::abs(g.G122), std::abs(g.G222)});
      worst = std::max({worst, std::abs(g.G111 - c.G111) / s, std::abs(g.G211 - c.G211) / s,
                        std::abs(g.G112 - c.G112) / s, std::abs(g.G212 - c.G212) / s,
                        std::abs(g.G122 - c.G122) / s, std::abs(g.G222 - c.G222) / s});
      worst_g122 = std::max({worst_g122, std::abs(c.G122), std::abs(g.G122) / s});
      printed = std::max(printed, std::abs(g.G111 - t.G111) / s);
    }
  }
  Outcome o;
  o.pass = worst <= 1e-6 && worst_g122 <= 1e-13;
  o.detail = "max rel |closed - generic| = " + fmt("%.2e", worst) + ", max |G^1_22| = " +
             fmt("%.2e", worst_g122);
  o.notes.push_back("typeset G^1_11 (missing factor F'): max rel deviation " + fmt("%.2e", printed) +
                    "; the corrected term is used, generic symbols are ground truth");
  return o;
}

Outcome ac5() {
  std::mt19937_64 rng(105);
  double worst = 0.0;
  for (Family f : kFamilies) {
    const Profile p = random_profile(f, rng);
    for (int k = 0; k < 100; ++k) {
      const SlicePoint sp = random_slice_point(p, rng);
      worst = std::max(worst, rel_diff(pullback_beltrami_klein(p, sp), slice_metric(p, sp)));
    }
  }
  const Profile ball = Profile::parse("1 - t", 1.0, 2);
  double ident = 0.0;
  for (int k = 0; k < 100; ++k) {
    const SlicePoint sp = random_slice_point(ball, rng);
    const DiskPoint d = psi_map(ball, sp);
    ident = std::max({ident, std::abs(d.x - sp.u), std::abs(d.y - sp.v)});
  }
  return {worst <= 1e-6 && ident <= 1e-12,
          "max rel |Psi* g_BK - g| = " + fmt("%.2e", worst) + ", 1 - t: max |Psi - id| = " +
              fmt("%.2e", ident),
          {}};
}

Outcome ac6() {
  Outcome o;
  // residual_ode vanishes on the grid exactly for the linear members of the battery
  bool dichotomy = true;
  for (const Profile& p : battery(106)) {
    double worst = 0.0;
    for (double t : chebyshev_grid(p, 64)) worst = std::max(worst, std::abs(residual_ode(p, t)));
    const bool linear = p.expr(2).is_number(0.0);
    dichotomy = dichotomy && ((worst < 1e-9) == linear);
  }
  const double r0 = residual_ode(Profile::parse("exp(-t)", kInf, 2), 0.0);
  const bool exact = std::abs(r0 - 2.0) <= 1e-12;

  // straight-line residual against the typeset 8ku R / (D (k^2u^2 - F)^3)
  std::mt19937_64 rng(206);
  std::uniform_real_distribution<double> slope(-3.0, 3.0), frac(0.05, 0.95);
  double worst_printed = 0.0, worst_corrected = 0.0;
  double ratio_lo = kInf, ratio_hi = -kInf;
  for (Family f : {Family::Spring, Family::PowerPos, Family::PowerNeg}) {
    const Profile p = random_profile(f, rng);
    for (int k = 0; k < 50; ++k) {
      const double kk = slope(rng);
      double lo = 0.0, hi = std::min(std::sqrt(p.b()), 3.0);
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (inside(p, SlicePoint{mid, kk * mid}) ? lo : hi) = mid;
      }
      const double u = frac(rng) * lo;
      const double a = straightline_residual(p, kk, u);
      const double b = straightline_residual_as_printed(p, kk, u);
      const double c = straightline_residual_algebraic(p, kk, u);
      const double s = std::max(std::abs(a), std::abs(b));
      if (s < 1e-12) continue;
      worst_printed = std::max(worst_printed, std::abs(a - b) / s);
      worst_corrected = std::max(worst_corrected, std::abs(a - c) / std::max(std::abs(a), std::abs(c)));
      ratio_lo = std::min(ratio_lo, a / b);
      ratio_hi = std::max(ratio_hi, a / b);
    }
  }
  const bool eq19 = worst_printed <= 1e-6;
  o.pass = dichotomy && exact && eq19;
  o.detail = std::string("R == 0 iff linear: ") + (dichotomy ? "yes" : "no") + ", R(0) for exp(-t) = " +
             fmt("%.15g", r0) + ", 8ku form: max rel deviation " + fmt("%.2e", worst_printed);
  o.notes.push_back("ratio straightline / 8ku form in [" + fmt("%.12f", ratio_lo) + ", " +
                    fmt("%.12f", ratio_hi) + "]");
  o.notes.push_back("-4ku R / (D (k^2u^2 - F)^3): max rel deviation " + fmt("%.2e", worst_corrected));
  return o;
}

struct GeodesicSweep {
  std::size_t traces = 0;
  std::size_t screen_pass = 0;
  std::size_t full_length = 0;
  std::size_t precision_stops = 0;  // only on domains the completeness test calls Incomplete
  std::size_t unexplained_stops = 0;
  double worst_drift = 0.0;
  double min_ratio = kInf;
};

const GeodesicSweep& sweep() {
  static const GeodesicSweep result = [] {
    GeodesicSweep s;
    std::mt19937_64 rng(107);
    for (Family f : kFamilies) {
      const Profile p = random_profile(f, rng);
      const bool incomplete = completeness(p).verdict == Verdict::Incomplete;
      for (int k = 0; k < 50; ++k) {
        const GeodesicTrace tr = integrate_geodesic(p, {0, 0}, random_direction(rng), 10.0);
        ++s.traces;
        s.worst_drift = std::max(s.worst_drift, tr.max_energy_drift());
        if (tr.stop == StopReason::Completed) ++s.full_length;
        else if (tr.stop == StopReason::PrecisionLoss && incomplete) ++s.precision_stops;
        else ++s.unexplained_stops;
        if (tr.samples.size() >= 4) {
          const SelfIntersectionReport r = self_intersection_check(tr);
          s.screen_pass += r.pass;
          s.min_ratio = std::min(s.min_ratio, r.min_ratio);
        }
      }
    }
    return s;
  }();
  return result;
}

Outcome ac7() {
  const GeodesicSweep& s = sweep();
  std::vector<SlicePoint> eight;
  for (int k = 0; k <= 400; ++k) {
    const double a = 2 * std::numbers::pi * k / 400.0;
    eight.push_back({std::sin(a), std::sin(a) * std::cos(a)});
  }
  const bool control = !self_intersection_check(eight).pass;
  Outcome o;
  o.pass = s.screen_pass == s.traces && control;
  o.detail = std::to_string(s.screen_pass) + "/" + std::to_string(s.traces) +
             " origin geodesics pass (min distance/spacing " + fmt("%.3f", s.min_ratio) +
             "), figure-eight " + (control ? "rejected" : "accepted");
  return o;
}

Outcome ac8() {
  const GeodesicSweep& s = sweep();
  Outcome o;
  o.pass = s.worst_drift <= 1e-6 && s.unexplained_stops == 0;
  o.detail = "max relative energy drift " + fmt("%.2e", s.worst_drift) + " over " +
             std::to_string(s.traces) + " traces";
  o.notes.push_back(std::to_string(s.full_length) + " reached length 10; " +
                    std::to_string(s.precision_stops) +
                    " left every compact set before length 10 on an incomplete domain; " +
                    std::to_string(s.unexplained_stops) + " other early stops");
  return o;
}

Outcome ac9() {
  bool linear_constant = true;
  bool others_vary = true;
  bool agree = true;
  double worst_var = 0.0;
  for (const Profile& p : battery(109)) {
    const EinsteinReport e = einstein_check(p);
    const bool linear = p.expr(2).is_number(0.0);
    const bool hyperbolic = classify_profile(p).family == ProfileClass::Hyperbolic;
    if (linear) {
      const double c1c2 = -p.f(0) * p.f1(0);
      worst_var = std::max(worst_var, e.max_relative_variation);
      linear_constant = linear_constant && e.is_einstein &&
                        std::abs(e.mean_J - c1c2) <= 1e-8 * c1c2;
    } else {
      others_vary = others_vary && !e.is_einstein;
    }
    agree = agree && (e.is_einstein == hyperbolic);
  }
  return {linear_constant && others_vary && agree,
          std::string("J == c1 c2 on linear (max variation ") + fmt("%.1e", worst_var) +
              "), non-constant otherwise: " + (others_vary ? "yes" : "no") +
              ", einstein <=> Hyperbolic: " + (agree ? "yes" : "no"),
          {}};
}

Outcome ac10() {
  std::mt19937_64 rng(110);
  double worst = 0.0;
  double max_norm = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Profile p = random_profile(Family::Linear, rng, 3);
    const BallEmbedding phi = BallEmbedding::of(p);
    for (int j = 0; j < 50; ++j) {
      const DomainPoint pt = random_domain_point(p, rng);
      const DomainPoint img = phi_embed(p, pt);
      double n2 = std::norm(img.z0);
      for (const cplx& z : img.z) n2 += std::norm(z);
      max_norm = std::max(max_norm, std::sqrt(n2));
      const Eigen::MatrixXcd h = hermitian_metric(p, pt);
      worst = std::max(worst, (pullback_ball_metric(phi, pt) - h).cwiseAbs().maxCoeff() /
                                  h.cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-8 && max_norm < 1.0,
          "max rel |phi* h_ball - h| = " + fmt("%.2e", worst) + ", max image norm " +
              fmt("%.6f", max_norm),
          {}};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), {}};
    }
    std::printf("%-5s %s  %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    for (const std::string& n : o.notes) std::printf("        %s\n", n.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
