#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "hartogs/expr.hpp"

namespace hartogs {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct ProfileOptions {
  // F' <= 0 is assumed throughout; relaxing it only affects validation.
  bool require_nonincreasing = true;
};

// F and its first three derivatives at one t.
struct ProfileValues {
  double f = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
};

// The profile F : [0, b) -> (0, inf) of a Hartogs domain in C^n, with its
// derivatives obtained by symbolic differentiation. Immutable.
class Profile {
 public:
  static constexpr int kMaxOrder = 4;

  Profile(Expr f, double b, int n, ProfileOptions options = {});

  static Profile parse(std::string_view src, double b, int n, ProfileOptions options = {});

  double b() const { return b_; }
  bool bounded() const { return b_ < kInf; }
  int n() const { return n_; }
  const ProfileOptions& options() const { return options_; }
  std::string source() const { return to_string(d_[0]); }

  // order in [0, kMaxOrder]
  const Expr& expr(int order = 0) const { return d_.at(static_cast<std::size_t>(order)); }

  double f(double t) const { return d_[0](t); }
  double f1(double t) const { return d_[1](t); }
  double f2(double t) const { return d_[2](t); }
  double f3(double t) const { return d_[3](t); }
  double f4(double t) const { return d_[4](t); }
  ProfileValues at(double t) const { return {f(t), f1(t), f2(t), f3(t)}; }

  bool contains(double t) const { return t >= 0.0 && t < b_; }

 private:
  std::array<Expr, kMaxOrder + 1> d_;
  double b_;
  int n_;
  ProfileOptions options_;
};

// d/dt (t F'/F); negative everywhere on [0, b) iff D_F is strongly pseudoconvex.
// Throws DomainError outside [0, b).
double kcond(const Profile& p, double t);

// Cancellation factor of kcond: (|F'/F| + t |F''/F| + t (F'/F)^2) / |kcond|. Its product with
// the unit roundoff bounds the relative error of kcond.
double kcond_condition(const Profile& p, double t);

// kcond and its first two t-derivatives (the second needs F'''').
struct KcondJet {
  double k0 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
};
KcondJet kcond_jet(const Profile& p, double t);

// Chebyshev-Lobatto points on [0, T] with T = b(1 - 1e-9), or t_max when b is infinite.
std::vector<double> chebyshev_grid(const Profile& p, std::size_t size, double t_max = 50.0);

struct EvaluationFailure {
  double t = 0.0;
  std::string what;
};

struct ValidationReport {
  bool valid = false;
  std::size_t grid_size = 0;
  double t_max = 0.0;
  std::vector<double> kcond_nonnegative;  // (tF'/F)' >= 0
  std::vector<double> f_nonpositive;      // F <= 0
  std::vector<double> f1_positive;        // F' > 0 (skipped when monotonicity is relaxed)
  std::vector<EvaluationFailure> failures;
};

// Grid certification of positivity, monotonicity and strong pseudoconvexity.
ValidationReport validate(const Profile& p, std::size_t grid_size = 1024, double t_max = 50.0);

}  // namespace hartogs
