#pragma once

// Independent numerical oracles shared by the test binaries. Nothing here calls the
// quantity it is used to check.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "hartogs/families.hpp"
#include "hartogs/metric.hpp"
#include "hartogs/profile.hpp"

namespace oracle {

inline constexpr std::array<hartogs::Family, 4> kFamilies = {
    hartogs::Family::Linear, hartogs::Family::Spring, hartogs::Family::PowerPos,
    hartogs::Family::PowerNeg};

// Fourth-order central difference.
inline double d1(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

inline double d2(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

inline bool close_rel(double a, double b, double rel, double floor = 1.0) {
  return std::abs(a - b) <= rel * std::max(floor, std::max(std::abs(a), std::abs(b)));
}

// Hermitian Hessian d^2 phi / dz_i dzbar_j of a real function of 2n real coordinates
// (x0, y0, x1, y1, ...) by central differences: 4 h_ij = (dxi dxj + dyi dyj) + i (dxi dyj - dyi dxj).
inline std::vector<std::vector<std::complex<double>>> complex_hessian(
    const std::function<double(const std::vector<double>&)>& phi, std::vector<double> x, double h) {
  const std::size_t m = x.size();
  std::vector<std::vector<double>> H(m, std::vector<double>(m));
  auto at = [&](std::size_t a, double da, std::size_t b, double db) {
    std::vector<double> y = x;
    y[a] += da;
    y[b] += db;
    return phi(y);
  };
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      double v;
      if (a == b) {
        auto f = [&](double s) {
          std::vector<double> y = x;
          y[a] += s;
          return phi(y);
        };
        v = d2(f, 0.0, h);
      } else {
        v = (at(a, h, b, h) - at(a, h, b, -h) - at(a, -h, b, h) + at(a, -h, b, -h)) / (4 * h * h);
      }
      H[a][b] = H[b][a] = v;
    }
  const std::size_t n = m / 2;
  std::vector<std::vector<std::complex<double>>> out(n, std::vector<std::complex<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = H[2 * i][2 * j] + H[2 * i + 1][2 * j + 1];
      const double im = H[2 * i][2 * j + 1] - H[2 * i + 1][2 * j];
      out[i][j] = {0.25 * re, 0.25 * im};
    }
  return out;
}

// Interior point sampler written independently of the library's own sampler:
// u^2 uniform in [0, 0.9 min(b, 3)), v uniform in 0.9 of the fibre.
inline hartogs::SlicePoint slice_point(const hartogs::Profile& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double tmax = 0.9 * std::min(p.b(), 3.0);
  const double u = std::sqrt(tmax * unit(rng)) * (unit(rng) < 0.5 ? -1.0 : 1.0);
  const double v = 0.9 * std::sqrt(p.f(u * u)) * (2.0 * unit(rng) - 1.0);
  return {u, v};
}

}  // namespace oracle
