#include "gasp/error.hpp"
#include "gasp/green.hpp"
#include "gasp/probes.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <memory>
#include <random>

using namespace gasp;
using testing_support::alphas;
using testing_support::rel;

namespace {

const GreenSolver& solver(double a, int n)
{
    static std::map<std::pair<double, int>, std::unique_ptr<GreenSolver>> cache;
    auto& slot = cache[{a, n}];
    if (!slot) {
        const Params p{3, a};
        slot = std::make_unique<GreenSolver>(hemisphere_mesh(1.0, n, 2 * n, 3.0, p), p);
    }
    return *slot;
}

// -(a/R)^{2α+1} q₁(x, a²ξ/R²) with a = 1
double image_term(const FundamentalSolution& fs, const Vec3& x, const Vec3& xi)
{
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    const Vec3 star{xi[0] / r2, xi[1] / r2, xi[2] / r2};
    return -std::pow(r2, -0.5 * (2.0 * fs.params().alpha + 1.0)) * fs.q1(x, star);
}

std::vector<Vec3> sphere_points(int n, std::uint64_t seed, double a)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    std::vector<Vec3> out;
    while (static_cast<int>(out.size()) < n) {
        Vec3 v{std::abs(nd(gen)), nd(gen), nd(gen)};
        const double len = std::hypot(v[0], v[1], v[2]);
        if (v[0] / len < 0.02) {
            continue;
        }
        out.push_back({a * v[0] / len, a * v[1] / len, a * v[2] / len});
    }
    return out;
}

} // namespace

TEST(HemisphereGreen, VanishesOnTheSphere)
{
    for (double a : alphas) {
        const FundamentalSolution fs({3, a});
        for (double radius : {1.0, 2.5}) {
            for (const Vec3& xi : interior_probes(3, 4, radius)) {
                for (const Vec3& x : sphere_points(50, 8, radius)) {
                    EXPECT_LE(std::abs(green_hemisphere(x, xi, radius, fs)), 1e-10 * fs.q1(x, xi)) << a;
                }
            }
        }
    }
}

TEST(HemisphereGreen, NeumannOnThePlane)
{
    const double h = 1e-4;
    for (double a : alphas) {
        const FundamentalSolution fs({3, a});
        for (const auto& [x, xi] : interior_pairs(10, 6)) {
            const Vec3 hi{h, x[1], x[2]}, lo{-h, x[1], x[2]};
            const double fd = (green_hemisphere(hi, xi, 1.0, fs) - green_hemisphere(lo, xi, 1.0, fs)) / (2.0 * h);
            const double g = green_hemisphere(Vec3{0.0, x[1], x[2]}, xi, 1.0, fs);
            EXPECT_LE(std::abs(fd), 1e-6 * std::max(1.0, std::abs(g))) << a;
            EXPECT_EQ(green_hemisphere_gradient(Vec3{0.0, x[1], x[2]}, xi, 1.0, fs)[0], 0.0);
        }
    }
}

TEST(HemisphereGreen, Symmetric)
{
    for (double a : alphas) {
        const Params p{3, a};
        for (const auto& [x, xi] : interior_pairs(20, 12)) {
            EXPECT_LE(rel(green_hemisphere(x, xi, 1.0, p), green_hemisphere(xi, x, 1.0, p)), 1e-12) << a;
        }
    }
}

TEST(HemisphereGreen, GradientMatchesFiniteDifferences)
{
    const FundamentalSolution fs({3, 0.3});
    const double h = 1e-5;
    for (const auto& [x, xi] : interior_pairs(10, 2)) {
        const Vec3 g = green_hemisphere_gradient(x, xi, 1.0, fs);
        for (int i = 0; i < 3; ++i) {
            Vec3 up = x, down = x;
            up[i] += h;
            down[i] -= h;
            const double fd = (green_hemisphere(up, xi, 1.0, fs) - green_hemisphere(down, xi, 1.0, fs)) / (2.0 * h);
            EXPECT_NEAR(g[i], fd, 1e-6 * std::hypot(g[0], g[1], g[2]));
        }
    }
}

TEST(HemisphereGreen, Errors)
{
    const Params p{3, 0.25};
    const Vec3 x{0.5, 0.1, 0.0}, origin{0.0, 0.0, 0.0};
    EXPECT_THROW(green_hemisphere(x, origin, 1.0, p), ParameterError);
    EXPECT_THROW(green_hemisphere(x, Vec3{0.2, 0.1, 0.0}, 0.0, p), ParameterError);
    EXPECT_THROW(green_hemisphere(x, x, 1.0, p), CoincidentPointsError);
}

TEST(BemGreen, RegularPartMatchesClosedForm)
{
    for (double a : alphas) {
        const GreenSolver& gs = solver(a, 16);
        for (const auto& [x, xi] : interior_pairs(20, 11)) {
            const GreenParts parts = gs.densities(xi);
            const double want = image_term(gs.fs(), x, xi);
            EXPECT_LE(rel(gs.regular_part(parts, x, Representation::double_layer), want), 1e-3) << a;
            EXPECT_LE(rel(gs.regular_part(parts, x, Representation::simple_layer), want), 1e-3) << a;
        }
    }
}

TEST(BemGreen, Symmetric)
{
    for (double a : alphas) {
        const GreenSolver& gs = solver(a, 16);
        for (const auto& [x, xi] : interior_pairs(10, 21)) {
            const double g1 = gs.green(gs.densities(xi), x, Representation::simple_layer);
            const double g2 = gs.green(gs.densities(x), xi, Representation::simple_layer);
            EXPECT_LE(rel(g1, g2), 1e-3) << a;
        }
    }
}

TEST(BemGreen, VanishesOnTheSurface)
{
    for (double a : alphas) {
        const GreenSolver& gs = solver(a, 8);
        const Vec3 pole{0.4, 0.2, -0.3};
        const Density trace = gs.boundary_trace(gs.densities(pole));
        EXPECT_LE(trace.cwiseAbs().maxCoeff(), 1e-12 * gs.mu_rhs(pole).cwiseAbs().maxCoeff()) << a;
    }
}

TEST(BemGreen, WeightedNormalDerivative)
{
    for (double a : alphas) {
        const GreenSolver& gs = solver(a, 16);
        const Vec3 pole{0.4, 0.2, -0.3};
        const GreenParts parts = gs.densities(pole);
        const Density analytic = hemisphere_weighted_normal_derivative(gs.mesh(), pole, 1.0, gs.fs());
        const double scale = analytic.cwiseAbs().maxCoeff();
        EXPECT_LE((parts.rho - analytic).cwiseAbs().maxCoeff(), 1e-2 * scale) << a;
        // twice the density is far off
        EXPECT_GT((2.0 * parts.rho - analytic).cwiseAbs().maxCoeff(), 0.5 * scale) << a;
        const Density trace = gs.weighted_normal_trace(parts);
        EXPECT_LE((trace - parts.rho).cwiseAbs().maxCoeff(), 1e-12 * scale) << a;
    }
}

TEST(BemGreen, CorrectionVanishesOnTheHemisphere)
{
    for (double a : alphas) {
        const GreenSolver& gs = solver(a, 16);
        for (const auto& [x, xi] : interior_pairs(5, 3)) {
            const GreenParts px = gs.densities(x);
            EXPECT_LE(std::abs(h1_correction(gs.mesh(), px, xi, 1.0, gs.fs())), 1e-12 * gs.fs().q1(x, xi)) << a;
        }
    }
}

TEST(BemGreen, HalfEllipsoidCorrection)
{
    // G₁ = G₀₁ + H₁ inside a half-ellipsoid contained in the unit hemisphere
    for (double a : {0.1, 0.3}) {
        const Params p{3, a};
        const GreenSolver gs(revolve_mesh(half_ellipsoid_generator(0.8, 0.9), 24, 48, 3.0, p), p);
        for (const auto& [x, xi] : interior_pairs(5, 7, 1.0, 0.55, 0.15, 0.2)) {
            const double bem = gs.green(gs.densities(xi), x, Representation::simple_layer);
            const double split = green_hemisphere(x, xi, 1.0, gs.fs()) + h1_correction(gs.mesh(), gs.densities(x), xi, 1.0, gs.fs());
            EXPECT_LE(rel(split, bem), 1e-2) << a;
            EXPECT_GT(std::abs(bem - green_hemisphere(x, xi, 1.0, gs.fs())), 1e-3 * std::abs(bem));
        }
    }
}

TEST(BemGreen, SatisfiesTheEquation)
{
    const double a = 0.25;
    const GreenSolver& gs = solver(a, 8);
    const Vec3 pole{0.5, 0.1, 0.1};
    const GreenParts parts = gs.densities(pole);
    for (const Vec3& x : interior_probes(5, 9, 1.0, 0.6, 0.2)) {
        if (testing_support::dist(x, pole) < 0.2) {
            continue;
        }
        const ScalarField g = [&](std::span<const double> y) {
            return gs.green(parts, Vec3{y[0], y[1], y[2]}, Representation::double_layer);
        };
        EXPECT_LE(operator_residual(g, x, a, 1e-3, Stencil::fourth_order), 1e-6);
    }
}

TEST(BemGreen, RejectsPolesNearTheSurface)
{
    const GreenSolver& gs = solver(0.25, 8);
    EXPECT_THROW(gs.check_pole(gs.mesh().nodes[40]), NearSurfaceError);
    EXPECT_THROW(gs.check_pole(Vec3{0.0, 0.2, 0.1}), NearSurfaceError);
    EXPECT_NO_THROW(gs.check_pole(Vec3{0.3, 0.2, 0.1}));
    const GreenParts parts = green_densities(gs.mesh(), Vec3{0.3, 0.2, 0.1}, Params{3, 0.25});
    EXPECT_LE((parts.mu - gs.mu(Vec3{0.3, 0.2, 0.1})).norm(), 1e-12 * parts.mu.norm());
    EXPECT_THROW(h1_correction(gs.mesh(), parts, Vec3{0.4, 0.2, 0.1}, Vec3{0.2, 0.0, 0.0}, 1.0, Params{3, 0.25}),
                 ParameterError);
}
