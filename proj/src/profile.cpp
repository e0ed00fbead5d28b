#include "hartogs/profile.hpp"

#include <cmath>
#include <numbers>

#include "hartogs/error.hpp"

namespace hartogs {

Profile::Profile(Expr f, double b, int n, ProfileOptions options)
    : b_(b), n_(n), options_(options) {
  if (!(b > 0.0)) throw DomainError("domain bound b must be positive");
  if (n < 2) throw DomainError("complex dimension n must be at least 2");
  d_[0] = std::move(f);
  for (std::size_t k = 1; k < d_.size(); ++k) d_[k] = derivative(d_[k - 1]);
}

Profile Profile::parse(std::string_view src, double b, int n, ProfileOptions options) {
  return Profile(parse_expr(src), b, n, options);
}

namespace {

void require_in_range(const Profile& p, double t) {
  if (!p.contains(t))
    throw DomainError("t = " + std::to_string(t) + " outside [0, b)");
}

}  // namespace

double kcond(const Profile& p, double t) {
  require_in_range(p, t);
  const auto [f, f1, f2, f3] = p.at(t);
  if (!(f > 0.0)) throw EvaluationError("F is not positive", t);
  // (t F'/F)' = F'/F + t F''/F - t (F'/F)^2, in ratios so that tiny F does not underflow
  const double r1 = f1 / f;
  const double r2 = f2 / f;
  return r1 + t * r2 - t * r1 * r1;
}

double kcond_condition(const Profile& p, double t) {
  require_in_range(p, t);
  const auto [f, f1, f2, f3] = p.at(t);
  if (!(f > 0.0)) throw EvaluationError("F is not positive", t);
  const double r1 = f1 / f;
  const double r2 = f2 / f;
  const double k = r1 + t * r2 - t * r1 * r1;
  return (std::abs(r1) + t * std::abs(r2) + t * r1 * r1) / std::abs(k);
}

KcondJet kcond_jet(const Profile& p, double t) {
  require_in_range(p, t);
  const auto [f, f1, f2, f3] = p.at(t);
  const double f4 = p.f4(t);
  if (!(f > 0.0)) throw EvaluationError("F is not positive", t);
  const double r1 = f1 / f;
  const double r2 = f2 / f;
  const double r3 = f3 / f;
  const double r4 = f4 / f;
  // kcond = N / F^2 with N = F'F + t F''F - t F'^2; n_k below are N^(k) / F^2.
  const double n0 = r1 + t * r2 - t * r1 * r1;
  const double n1 = 2.0 * r2 + t * r3 - t * r1 * r2;
  const double n2 = 3.0 * r3 + r1 * r2 + t * r4 - t * r2 * r2;
  KcondJet j;
  j.k0 = n0;
  j.k1 = n1 - 2.0 * n0 * r1;
  j.k2 = n2 - 4.0 * n1 * r1 - 2.0 * n0 * r2 + 6.0 * n0 * r1 * r1;
  return j;
}

std::vector<double> chebyshev_grid(const Profile& p, std::size_t size, double t_max) {
  if (size < 2) throw DomainError("grid needs at least two points");
  const double top = p.bounded() ? p.b() * (1.0 - 1e-9) : t_max;
  std::vector<double> grid(size);
  for (std::size_t k = 0; k < size; ++k) {
    const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(size - 1);
    grid[k] = 0.5 * top * (1.0 - std::cos(theta));
  }
  grid.front() = 0.0;
  grid.back() = top;
  return grid;
}

ValidationReport validate(const Profile& p, std::size_t grid_size, double t_max) {
  ValidationReport r;
  const auto grid = chebyshev_grid(p, grid_size, t_max);
  r.grid_size = grid.size();
  r.t_max = grid.back();
  for (double t : grid) {
    try {
      const double f = p.f(t);
      const double f1 = p.f1(t);
      if (!(f > 0.0)) {
        r.f_nonpositive.push_back(t);
        continue;
      }
      if (p.options().require_nonincreasing && f1 > 0.0) r.f1_positive.push_back(t);
      if (!(kcond(p, t) < 0.0)) r.kcond_nonnegative.push_back(t);
    } catch (const EvaluationError& e) {
      r.failures.push_back({t, e.what()});
    }
  }
  r.valid = r.kcond_nonnegative.empty() && r.f_nonpositive.empty() && r.f1_positive.empty() &&
            r.failures.empty();
  return r;
}

}  // namespace hartogs
