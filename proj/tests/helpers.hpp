#pragma once

#include "hvx/sl2.hpp"

#include <random>

// Small deterministic generators shared by the test binaries.

namespace hvx_test {

inline std::mt19937& rng()
{
    static std::mt19937 gen(20240817);
    return gen;
}

inline double uniform(double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline hvx::Vec3 random_vec3(double scale = 1.0)
{
    return hvx::Vec3(uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale));
}

inline hvx::HPoint random_point(double chart_scale = 1.0)
{
    return hvx::lift(uniform(-chart_scale, chart_scale), uniform(-chart_scale, chart_scale));
}

/// Random group element as the exponential of a random algebra element.
inline hvx::GroupElement random_group(double scale = 0.7)
{
    return hvx::algebra_exp(hvx::AlgebraElement(random_vec3(scale)), 1.0);
}

/// Nonzero strength bounded away from zero.
inline double random_gamma(double lo = 0.2, double hi = 2.0)
{
    const double mag = uniform(lo, hi);
    return uniform(-1.0, 1.0) < 0.0 ? -mag : mag;
}

} // namespace hvx_test
