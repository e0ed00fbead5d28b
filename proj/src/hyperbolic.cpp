#include "hartogs/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hartogs/curvature.hpp"
#include "hartogs/error.hpp"
#include "hartogs/quadrature.hpp"

namespace hartogs {

double psi_integrand(const Profile& p, double u) {
  const double k = kcond(p, u * u);
  if (!(k < 0.0)) throw EvaluationError("kcond is not negative", u * u);
  return std::sqrt(-k);
}

double psi(const Profile& p, double u) {
  const double a = std::abs(u);
  if (p.bounded() && !(a * a < p.b())) throw DomainError("|u| must be below sqrt(b)");
  if (a == 0.0) return 0.0;
  const auto r = integrate([&](double s) { return psi_integrand(p, s); }, 0.0, a, 1e-15, 1e-14);
  if (!r.converged && r.error > 1e-10 * std::max(1.0, std::abs(r.value)))
    throw EvaluationError("psi quadrature did not converge", a * a);
  return u < 0.0 ? -r.value : r.value;
}

double psi_derivative(const Profile& p, double u) { return psi_integrand(p, u); }

DiskPoint psi_map(const Profile& p, const SlicePoint& sp) {
  if (!inside(p, sp)) throw DomainError("slice point outside M");
  const double ps = psi(p, sp.u);
  return {std::tanh(ps), sp.v / (std::cosh(ps) * std::sqrt(p.f(sp.u * sp.u)))};
}

Eigen::Matrix2d psi_map_jacobian(const Profile& p, const SlicePoint& sp) {
  if (!inside(p, sp)) throw DomainError("slice point outside M");
  const double t = sp.u * sp.u;
  const double ps = psi(p, sp.u);
  const double dps = psi_derivative(p, sp.u);
  const double f = p.f(t);
  const double ch = std::cosh(ps);
  const double y = sp.v / (ch * std::sqrt(f));
  Eigen::Matrix2d j;
  j(0, 0) = dps / (ch * ch);
  j(0, 1) = 0.0;
  j(1, 0) = -y * (std::tanh(ps) * dps + sp.u * p.f1(t) / f);
  j(1, 1) = 1.0 / (ch * std::sqrt(f));
  return j;
}

SliceMetric pullback_beltrami_klein(const Profile& p, const SlicePoint& sp) {
  const DiskPoint d = psi_map(p, sp);
  const SliceMetric bk = beltrami_klein(d.x, d.y);
  Eigen::Matrix2d g;
  g << bk.g11, bk.g12, bk.g12, bk.g22;
  const Eigen::Matrix2d j = psi_map_jacobian(p, sp);
  const Eigen::Matrix2d pb = j.transpose() * g * j;
  return {pb(0, 0), pb(0, 1), pb(1, 1)};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Complete: return "Complete";
    case Verdict::Incomplete: return "Incomplete";
    case Verdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

constexpr int kFiniteRungs = 30;
constexpr int kInfiniteRungs = 60;
constexpr std::size_t kDecisionWindow = 4;
// Rungs where kcond loses more than about eight digits to cancellation are not used.
constexpr double kLadderConditionLimit = 1e8;

bool rung(const Profile& p, double u, double scale, CompletenessReport& r) {
  double wu = 0.0;
  try {
    if (!(kcond_condition(p, u * u) <= kLadderConditionLimit)) return false;
    wu = psi_integrand(p, u);
  } catch (const Error&) {
    return false;
  }
  if (!std::isfinite(wu) || wu <= 0.0) return false;
  r.ladder.push_back({u, wu, scale * wu});
  return true;
}

void build_ladder(const Profile& p, CompletenessReport& r) {
  if (p.bounded()) {
    const double root = std::sqrt(p.b());
    for (int k = 2; k <= kFiniteRungs; ++k) {
      const double delta = std::ldexp(root, -k);
      if (!rung(p, root - delta, delta, r)) break;
    }
  } else {
    for (int k = 0; k <= kInfiniteRungs; ++k) {
      const double u = std::exp2(0.5 * k);
      if (!rung(p, u, u, r)) break;
    }
  }
  const double log_step = p.bounded() ? std::log(2.0) : 0.5 * std::log(2.0);
  for (std::size_t k = 0; k + 1 < r.ladder.size(); ++k)
    r.decay.push_back(std::log(r.ladder[k].mass / r.ladder[k + 1].mass) / log_step);
}

QuadratureResult finite_integral(const Profile& p, const CompletenessReport& r) {
  auto w = [&](double u) { return psi_integrand(p, u); };
  constexpr double atol = 1e-12;
  constexpr double rtol = 1e-12;
  if (p.bounded()) {
    // u = r (1 - (1 - s)^2) absorbs inverse square-root singularities at sqrt(b)
    const double root = std::sqrt(p.b());
    auto g = [&](double s) {
      const double one_minus = 1.0 - s;
      return w(root * (1.0 - one_minus * one_minus)) * 2.0 * root * one_minus;
    };
    return integrate(g, 0.0, 1.0, atol, rtol);
  }
  // Up to the last trusted rung, then the power-law tail u^{-1-d} implied by the
  // final decay rate: int_U^inf w = U w(U) / d.
  const TailSample& last = r.ladder.back();
  QuadratureResult q = integrate(w, 0.0, last.u, atol, rtol);
  q.value += last.mass / r.decay.back();
  return q;
}

}  // namespace

CompletenessReport completeness(const Profile& p) {
  CompletenessReport r;
  r.integral_value = std::numeric_limits<double>::quiet_NaN();
  build_ladder(p, r);
  if (r.decay.size() < kDecisionWindow) {
    r.note = "tail ladder too short (" + std::to_string(r.ladder.size()) + " evaluable rungs)";
    return r;
  }
  const auto last = r.decay.end() - static_cast<std::ptrdiff_t>(kDecisionWindow);
  const double lo = *std::min_element(last, r.decay.end());
  const double hi = *std::max_element(last, r.decay.end());

  if (hi <= kDivergentDecay) {
    r.verdict = Verdict::Complete;
    r.integral_value = std::numeric_limits<double>::infinity();
    r.note = "tail mass does not decay";
    return r;
  }
  if (lo < kConvergentDecay) {
    r.note = "tail decay rate between thresholds or oscillating";
    return r;
  }
  try {
    const QuadratureResult q = finite_integral(p, r);
    r.error = q.error;
    r.quadrature_intervals = q.intervals;
    if (!q.converged) {
      r.note = "tail decays but quadrature did not converge";
      return r;
    }
    r.verdict = Verdict::Incomplete;
    r.integral_value = q.value;
    r.note = "tail decays geometrically";
  } catch (const Error& e) {
    r.note = std::string("quadrature failed: ") + e.what();
  }
  return r;
}

BallEmbedding BallEmbedding::of(const Profile& p) {
  const ClassificationResult c = classify_profile(p);
  if (c.family != ProfileClass::Hyperbolic)
    throw DomainError("profile is not of the form c1 - c2 t");
  return {c.c1, c.c2, p.n()};
}

double BallEmbedding::scale0() const { return std::sqrt(c2 / c1); }
double BallEmbedding::scale() const { return 1.0 / std::sqrt(c1); }

DomainPoint BallEmbedding::apply(const DomainPoint& pt) const {
  DomainPoint out;
  out.z0 = pt.z0 * scale0();
  out.z.reserve(pt.z.size());
  for (const cplx& zj : pt.z) out.z.push_back(zj * scale());
  return out;
}

SlicePoint BallEmbedding::apply(const SlicePoint& sp) const {
  return {sp.u * scale0(), sp.v * scale()};
}

DomainPoint phi_embed(const Profile& p, const DomainPoint& pt) {
  if (!inside(p, pt)) throw DomainError("point outside the domain");
  return BallEmbedding::of(p).apply(pt);
}

Eigen::MatrixXcd pullback_ball_metric(const BallEmbedding& phi, const DomainPoint& pt) {
  const Profile ball = Profile::parse("1 - t", 1.0, phi.n);
  Eigen::MatrixXcd h = hermitian_metric(ball, phi.apply(pt));
  Eigen::VectorXd a = Eigen::VectorXd::Constant(phi.n, phi.scale());
  a(0) = phi.scale0();
  return a.asDiagonal() * h * a.asDiagonal();
}

}  // namespace hartogs
