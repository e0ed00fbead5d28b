#include "hartogs/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hartogs {

namespace {

double t_window(const Profile& p) { return std::min(0.95 * p.b(), kSampleTCap); }

}  // namespace

SlicePoint random_slice_point(const Profile& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  const double t = t_window(p) * unit(rng);
  const double u = std::sqrt(t) * (unit(rng) < 0.5 ? -1.0 : 1.0);
  const double v = 0.95 * std::sqrt(p.f(t)) * sym(rng);
  return {u, v};
}

DomainPoint random_domain_point(const Profile& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double t = t_window(p) * unit(rng);
  const double arg = 2.0 * std::numbers::pi * unit(rng);
  DomainPoint pt;
  pt.z0 = std::polar(std::sqrt(t), arg);
  const auto m = static_cast<std::size_t>(p.n() - 1);
  pt.z.resize(m);
  double norm2 = 0.0;
  for (auto& zj : pt.z) {
    zj = {gauss(rng), gauss(rng)};
    norm2 += std::norm(zj);
  }
  // radius uniform in the fibre ball volume, capped at 0.95 of the fibre radius
  const double radius = 0.95 * std::sqrt(p.f(t)) * std::pow(unit(rng), 0.5 / static_cast<double>(m));
  const double scale = norm2 > 0.0 ? radius / std::sqrt(norm2) : 0.0;
  for (auto& zj : pt.z) zj *= scale;
  return pt;
}

std::array<double, 2> random_direction(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double a = 2.0 * std::numbers::pi * unit(rng);
  return {std::cos(a), std::sin(a)};
}

}  // namespace hartogs
