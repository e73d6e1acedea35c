#pragma once

#include "gasp/kernel.hpp"
#include "gasp/surface.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace gasp {

/// Random points with |x| <= max_radius·a and x₁ >= min_x1·a.
std::vector<Vec3> interior_probes(int n, std::uint64_t seed, double a = 1.0, double max_radius = 0.8,
                                  double min_x1 = 0.1);

/// Random points with lo·a <= |x| <= hi·a and x₁ >= min_x1·a.
std::vector<Vec3> exterior_probes(int n, std::uint64_t seed, double a = 1.0, double lo = 1.25, double hi = 2.0,
                                  double min_x1 = 0.05);

/// Random points (0, x′) with |x′| <= max_radius·R.
std::vector<Vec3> base_probes(int n, std::uint64_t seed, double radius = 1.0, double max_radius = 0.8);

/// n points on the rim circle, each at the azimuth midway between two node columns.
std::vector<Vec3> rim_probes(const SurfaceMesh& mesh, int n);

/// Interior pairs separated by at least min_sep·a.
std::vector<std::pair<Vec3, Vec3>> interior_pairs(int n, std::uint64_t seed, double a = 1.0,
                                                  double max_radius = 0.7, double min_x1 = 0.15,
                                                  double min_sep = 0.2);

} // namespace gasp
