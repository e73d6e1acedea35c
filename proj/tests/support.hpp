#pragma once

#include "gasp/kernel.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace testing_support {

inline constexpr double alphas[] = {0.1, 0.25, 0.3, 0.45};

inline double rel(double got, double want)
{
    return std::abs(got - want) / std::abs(want);
}

inline double dist(const gasp::Vec3& a, const gasp::Vec3& b)
{
    return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

// Points in the box (0, 2] x [-2, 2]² of the half-space.
inline gasp::Vec3 random_point(std::mt19937_64& gen, double min_x1 = 0.0)
{
    std::uniform_real_distribution<double> x1(min_x1, 2.0), xt(-2.0, 2.0);
    return {x1(gen), xt(gen), xt(gen)};
}

struct Pair {
    gasp::Vec3 x, xi;
};

inline std::vector<Pair> random_pairs(int n, std::uint64_t seed, double min_sep, double min_x1 = 0.0)
{
    std::mt19937_64 gen(seed);
    std::vector<Pair> out;
    while (static_cast<int>(out.size()) < n) {
        Pair p{random_point(gen, min_x1), random_point(gen, min_x1)};
        if (dist(p.x, p.xi) >= min_sep) {
            out.push_back(p);
        }
    }
    return out;
}

} // namespace testing_support
