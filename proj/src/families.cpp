#include "hartogs/families.hpp"

#include <charconv>
#include <cmath>

#include "hartogs/error.hpp"

namespace hartogs {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Linear: return "linear";
    case Family::Spring: return "spring";
    case Family::PowerPos: return "power_pos";
    case Family::PowerNeg: return "power_neg";
  }
  return "?";
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Profile linear_profile(double c1, double c2, int n) {
  if (!(c1 > 0.0 && c2 > 0.0)) throw DomainError("linear profile needs c1, c2 > 0");
  return Profile::parse(format_real(c1) + " - " + format_real(c2) + "*t", c1 / c2, n);
}

Profile spring_profile(double c, double k, int n) {
  if (!(c > 0.0 && k > 0.0)) throw DomainError("spring profile needs c, k > 0");
  return Profile::parse(format_real(c) + "*exp(-" + format_real(k) + "*t)", kInf, n);
}

Profile power_pos_profile(double c1, double c2, double p, int n) {
  if (!(c1 > 0.0 && c2 > 0.0 && p > 0.0)) throw DomainError("power profile needs c1, c2, p > 0");
  return Profile::parse("(" + format_real(c1) + " + " + format_real(c2) + "*t)^(-" + format_real(p) + ")",
                        kInf, n);
}

Profile power_neg_profile(double c1, double c2, double q, int n) {
  if (!(c1 > 0.0 && c2 < 0.0 && q > 0.0))
    throw DomainError("power profile needs c1 > 0, c2 < 0, q > 0");
  return Profile::parse("(" + format_real(c1) + " - " + format_real(-c2) + "*t)^" + format_real(q),
                        -c1 / c2, n);
}

Profile random_profile(Family family, std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> coef(0.5, 2.5);
  std::uniform_real_distribution<double> rate(0.2, 2.0);
  std::uniform_real_distribution<double> expo(0.5, 4.0);
  switch (family) {
    case Family::Linear: {
      const double c1 = coef(rng);
      return linear_profile(c1, coef(rng), n);
    }
    case Family::Spring: {
      const double c = coef(rng);
      return spring_profile(c, rate(rng), n);
    }
    case Family::PowerPos: {
      const double c1 = coef(rng);
      const double c2 = coef(rng);
      return power_pos_profile(c1, c2, expo(rng), n);
    }
    case Family::PowerNeg: {
      const double c1 = coef(rng);
      const double c2 = -coef(rng);
      return power_neg_profile(c1, c2, expo(rng), n);
    }
  }
  throw DomainError("unknown family");
}

}  // namespace hartogs
