#include "gasp/probes.hpp"

#include "gasp/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace gasp {

namespace {

double norm(const Vec3& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

Vec3 draw(std::mt19937_64& rng, double r)
{
    std::uniform_real_distribution<double> u(-r, r);
    Vec3 x{u(rng), u(rng), u(rng)};
    x[0] = std::abs(x[0]);
    return x;
}

void check_count(int n)
{
    if (n < 0) {
        throw ParameterError("probe count must be non-negative");
    }
}

} // namespace

std::vector<Vec3> interior_probes(int n, std::uint64_t seed, double a, double max_radius, double min_x1)
{
    check_count(n);
    std::mt19937_64 rng(seed);
    std::vector<Vec3> out;
    while (static_cast<int>(out.size()) < n) {
        const Vec3 x = draw(rng, max_radius * a);
        if (norm(x) <= max_radius * a && x[0] >= min_x1 * a) {
            out.push_back(x);
        }
    }
    return out;
}

std::vector<Vec3> exterior_probes(int n, std::uint64_t seed, double a, double lo, double hi, double min_x1)
{
    check_count(n);
    std::mt19937_64 rng(seed);
    std::vector<Vec3> out;
    while (static_cast<int>(out.size()) < n) {
        const Vec3 x = draw(rng, hi * a);
        const double r = norm(x);
        if (r >= lo * a && r <= hi * a && x[0] >= min_x1 * a) {
            out.push_back(x);
        }
    }
    return out;
}

std::vector<Vec3> base_probes(int n, std::uint64_t seed, double radius, double max_radius)
{
    check_count(n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-max_radius * radius, max_radius * radius);
    std::vector<Vec3> out;
    while (static_cast<int>(out.size()) < n) {
        const Vec3 x{0.0, u(rng), u(rng)};
        if (norm(x) <= max_radius * radius) {
            out.push_back(x);
        }
    }
    return out;
}

std::vector<Vec3> rim_probes(const SurfaceMesh& mesh, int n)
{
    check_count(n);
    if (mesh.n_azimuth < 1) {
        throw ParameterError("rim probes need a mesh with azimuthal structure");
    }
    const double dphi = 2.0 * std::numbers::pi / mesh.n_azimuth;
    std::vector<Vec3> out;
    for (int i = 0; i < n; ++i) {
        const int column = static_cast<int>((static_cast<long>(i) * mesh.n_azimuth) / std::max(n, 1));
        const double phi = (column + 0.5) * dphi;
        out.push_back({0.0, mesh.rim_radius * std::cos(phi), mesh.rim_radius * std::sin(phi)});
    }
    return out;
}

std::vector<std::pair<Vec3, Vec3>> interior_pairs(int n, std::uint64_t seed, double a, double max_radius,
                                                  double min_x1, double min_sep)
{
    check_count(n);
    std::mt19937_64 rng(seed);
    std::vector<std::pair<Vec3, Vec3>> out;
    auto ok = [&](const Vec3& x) { return norm(x) <= max_radius * a && x[0] >= min_x1 * a; };
    while (static_cast<int>(out.size()) < n) {
        const Vec3 x = draw(rng, max_radius * a);
        const Vec3 y = draw(rng, max_radius * a);
        const Vec3 d{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
        if (ok(x) && ok(y) && norm(d) >= min_sep * a) {
            out.emplace_back(x, y);
        }
    }
    return out;
}

} // namespace gasp
