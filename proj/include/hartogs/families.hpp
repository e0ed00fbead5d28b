#pragma once

// Closed-form profile families: the complex hyperbolic profile, Spring domains
// and the two power families with constant base curvature.

#include <random>
#include <string>
#include <string_view>

#include "hartogs/profile.hpp"

namespace hartogs {

enum class Family { Linear, Spring, PowerPos, PowerNeg };

std::string_view family_name(Family f);

// F = c1 - c2 t on [0, c1/c2), c1, c2 > 0.
Profile linear_profile(double c1, double c2, int n = 2);
// F = c e^{-k t} on [0, inf), c, k > 0.
Profile spring_profile(double c, double k, int n = 2);
// F = (c1 + c2 t)^{-p} on [0, inf), c1, c2, p > 0. Base curvature 2/p.
Profile power_pos_profile(double c1, double c2, double p, int n = 2);
// F = (c1 + c2 t)^{q} on [0, -c1/c2), c1 > 0, c2 < 0, q > 0. Base curvature -2/q.
Profile power_neg_profile(double c1, double c2, double q, int n = 2);

// Exact decimal rendering used when building family expressions.
std::string format_real(double v);

// A random admissible member of the family.
Profile random_profile(Family family, std::mt19937_64& rng, int n = 2);

}  // namespace hartogs
