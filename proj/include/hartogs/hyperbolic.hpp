#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hartogs/metric.hpp"
#include "hartogs/profile.hpp"

namespace hartogs {

// Point of the Beltrami-Klein disk.
struct DiskPoint {
  double x = 0.0;
  double y = 0.0;
};

// sqrt(-kcond(u^2)), the integrand of psi and of the completeness integral.
double psi_integrand(const Profile& p, double u);

// psi(u) = int_0^u sqrt(-kcond(s^2)) ds, odd in u. Requires |u| < sqrt(b).
double psi(const Profile& p, double u);
double psi_derivative(const Profile& p, double u);

// Psi(u, v) = (tanh psi(u), v / (cosh psi(u) sqrt F(u^2))).
DiskPoint psi_map(const Profile& p, const SlicePoint& sp);

// d(x, y) / d(u, v)
Eigen::Matrix2d psi_map_jacobian(const Profile& p, const SlicePoint& sp);

// (D Psi)^T g_BK(Psi(sp)) (D Psi)
SliceMetric pullback_beltrami_klein(const Profile& p, const SlicePoint& sp);

enum class Verdict { Complete, Incomplete, Unknown };

std::string to_string(Verdict v);

struct TailSample {
  double u = 0.0;
  double integrand = 0.0;
  // integrand times the local scale (distance to sqrt(b), or u itself when b is infinite)
  double mass = 0.0;
};

struct CompletenessReport {
  Verdict verdict = Verdict::Unknown;
  // +inf for Complete, NaN for Unknown
  double integral_value = 0.0;
  double error = 0.0;
  std::size_t quadrature_intervals = 0;
  std::vector<TailSample> ladder;
  // log(mass_k / mass_{k+1}) / log(step): > 0 when the tail decays geometrically
  std::vector<double> decay;
  std::string note;
};

inline constexpr double kDivergentDecay = 1e-3;
inline constexpr double kConvergentDecay = 0.05;

// Divergence test for int_0^sqrt(b) sqrt(-kcond(u^2)) du. The tail is probed on a geometric
// ladder approaching sqrt(b) (or infinity); the last four decay rates decide:
// all <= 1e-3 is divergent (Complete), all >= 0.05 is convergent (Incomplete, with value),
// anything else is Unknown. Rungs where kcond is dominated by cancellation are dropped. For
// infinite b the value is the quadrature up to the last rung U plus the tail U w(U) / d
// implied by the final decay rate d.
CompletenessReport completeness(const Profile& p);

// The holomorphic map (z0, z) -> (z0 / sqrt(c1/c2), z / sqrt(c1)) of D_F with
// F = c1 - c2 t onto the unit ball.
struct BallEmbedding {
  double c1 = 1.0;
  double c2 = 1.0;
  int n = 2;

  // Throws DomainError unless p classifies as Hyperbolic.
  static BallEmbedding of(const Profile& p);

  double scale0() const;  // sqrt(c2 / c1)
  double scale() const;   // 1 / sqrt(c1)
  DomainPoint apply(const DomainPoint& pt) const;
  SlicePoint apply(const SlicePoint& sp) const;
};

DomainPoint phi_embed(const Profile& p, const DomainPoint& pt);

// Hermitian metric of the unit ball (F = 1 - t) pulled back through the embedding.
Eigen::MatrixXcd pullback_ball_metric(const BallEmbedding& phi, const DomainPoint& pt);

}  // namespace hartogs
