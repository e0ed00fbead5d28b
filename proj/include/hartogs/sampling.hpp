#pragma once

#include <array>
#include <random>

#include "hartogs/metric.hpp"
#include "hartogs/profile.hpp"

namespace hartogs {

// Interior sampling window: |z0|^2 uniform on [0, min(0.95 b, t_cap)) and the
// fibre coordinates strictly inside 0.95 of the fibre radius.
inline constexpr double kSampleTCap = 4.0;

SlicePoint random_slice_point(const Profile& p, std::mt19937_64& rng);
DomainPoint random_domain_point(const Profile& p, std::mt19937_64& rng);

// Uniform direction on the unit circle.
std::array<double, 2> random_direction(std::mt19937_64& rng);

}  // namespace hartogs
