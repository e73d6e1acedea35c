#include "gasp/holmgren.hpp"

#include "gasp/error.hpp"
#include "gasp/probes.hpp"
#include "gasp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <numbers>
#include <string>

namespace gasp {

namespace {

constexpr double pi = std::numbers::pi;

void check_data(const SurfaceMesh& mesh, const BaseDisk& base, const BoundaryData& data)
{
    if (data.phi.size() != mesh.size()) {
        throw ParameterError("phi has " + std::to_string(data.phi.size()) + " samples, the surface has "
                             + std::to_string(mesh.size()) + " nodes");
    }
    if (data.nu.size() != base.size()) {
        throw ParameterError("nu has " + std::to_string(data.nu.size()) + " samples, the base has "
                             + std::to_string(base.size()) + " nodes");
    }
}

bool all_zero(const std::vector<double>& v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

// Σ_b ν_b q₁(b, x₀) w_b; with ν as a function, ν(x₀′) times the exact disk integral
// carries the singular part and the quadrature only sees ν - ν(x₀′).
double base_potential(const BaseDisk& base, const BoundaryData& data, const Vec3& x0, const FundamentalSolution& fs)
{
    const double foot2 = x0[1] * x0[1] + x0[2] * x0[2];
    double nu0 = 0.0;
    double sum = 0.0;
    if (data.nu_fn && foot2 < base.radius * base.radius && fs.params().m == 3) {
        nu0 = data.nu_fn(Vec3{0.0, x0[1], x0[2]});
        sum = nu0 * base_disk_integral(x0, base.radius, fs);
    }
    for (std::size_t b = 0; b < base.size(); ++b) {
        const double v = data.nu[b] - nu0;
        if (v != 0.0) {
            sum += v * fs.q1(base.nodes[b], x0) * base.weights[b];
        }
    }
    return sum;
}

void check_target(const Vec3& x0)
{
    if (!(x0[0] > 0.0)) {
        throw NearSurfaceError("targets must lie strictly inside the domain (x1 > 0)");
    }
}

template <class F>
void parallel_targets(std::size_t n, F&& body)
{
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(gasp_holmgren_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace

BoundaryData sample_data(const SurfaceMesh& mesh, const BaseDisk& base, const PointFunction& phi,
                         const PointFunction& nu)
{
    BoundaryData data;
    data.phi.reserve(mesh.size());
    for (const Vec3& s : mesh.nodes) {
        data.phi.push_back(phi(s));
    }
    data.nu.reserve(base.size());
    for (const Vec3& b : base.nodes) {
        data.nu.push_back(nu(b));
    }
    data.nu_fn = nu;
    return data;
}

std::vector<ManufacturedSolution> register_manufactured(const Params& p, double gate)
{
    p.validate();
    const double a = p.alpha;
    const double e = 1.0 - 2.0 * a;
    std::vector<ManufacturedSolution> cases;
    const PointFunction no_flux = [](const Vec3&) { return 0.0; };

    cases.push_back({"1", [](const Vec3&) { return 1.0; }, [](const Vec3&) { return Vec3{0, 0, 0}; }, no_flux});
    cases.push_back({"x2", [](const Vec3& x) { return x[1]; }, [](const Vec3&) { return Vec3{0, 1, 0}; }, no_flux});
    cases.push_back({"x3", [](const Vec3& x) { return x[2]; }, [](const Vec3&) { return Vec3{0, 0, 1}; }, no_flux});
    cases.push_back({"x2x3", [](const Vec3& x) { return x[1] * x[2]; },
                     [](const Vec3& x) { return Vec3{0, x[2], x[1]}; }, no_flux});
    cases.push_back({"x2^2-x3^2", [](const Vec3& x) { return x[1] * x[1] - x[2] * x[2]; },
                     [](const Vec3& x) { return Vec3{0, 2 * x[1], -2 * x[2]}; }, no_flux});
    cases.push_back({"x1^(1-2a)", [e](const Vec3& x) { return std::pow(x[0], e); },
                     [e](const Vec3& x) { return Vec3{e * std::pow(x[0], e - 1.0), 0, 0}; },
                     [e](const Vec3&) { return e; }});
    cases.push_back({"x1^(1-2a)x2", [e](const Vec3& x) { return std::pow(x[0], e) * x[1]; },
                     [e](const Vec3& x) {
                         return Vec3{e * std::pow(x[0], e - 1.0) * x[1], std::pow(x[0], e), 0};
                     },
                     [e](const Vec3& x) { return e * x[1]; }});
    const auto fs = std::make_shared<FundamentalSolution>(p);
    const Vec3 pole{0.5, 1.5, 0.2};
    cases.push_back({"q1_exterior", [fs, pole](const Vec3& x) { return fs->q1(x, pole); },
                     [fs, pole](const Vec3& x) {
                         Vec3 g{};
                         fs->grad_q1(x, pole, g);
                         return g;
                     },
                     no_flux});

    for (const ManufacturedSolution& c : cases) {
        const double r = manufactured_residual(c, p);
        if (!(r <= gate)) {
            throw ParameterError("manufactured solution " + c.name + " fails the residual gate: "
                                 + std::to_string(r));
        }
    }
    return cases;
}

ManufacturedSolution manufactured(const Params& p, const std::string& name)
{
    for (ManufacturedSolution& c : register_manufactured(p)) {
        if (c.name == name) {
            return c;
        }
    }
    throw ParameterError("unknown manufactured solution '" + name + "'");
}

double manufactured_residual(const ManufacturedSolution& u, const Params& p)
{
    const ScalarField f = [&u](std::span<const double> x) { return u.u(Vec3{x[0], x[1], x[2]}); };
    double worst = 0.0;
    for (const Vec3& x : interior_probes(20, 7, 1.0, 0.8, 0.1)) {
        worst = std::max(worst, operator_residual(f, x, p.alpha, 1e-3, Stencil::fourth_order));
    }
    return worst;
}

HolmgrenSolver::HolmgrenSolver(SurfaceMesh mesh, BaseDisk base, const Params& p)
    : green_(std::move(mesh), p), base_(std::move(base))
{
}

std::vector<double> HolmgrenSolver::solve(const BoundaryData& data, std::span<const Vec3> targets) const
{
    const SurfaceMesh& mesh = green_.mesh();
    const FundamentalSolution& fs = green_.fs();
    check_data(mesh, base_, data);
    for (const Vec3& x0 : targets) {
        check_target(x0);
        green_.check_pole(x0);
    }

    const auto n = static_cast<Eigen::Index>(mesh.size());
    // Q_k = Σ_b ν_b w_b q₁(s_k, b): the base integral of ν q₁(s_k, ·)
    Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
    if (!all_zero(data.nu)) {
        parallel_targets(mesh.size(), [&](std::size_t k) {
            double s = 0.0;
            for (std::size_t b = 0; b < base_.size(); ++b) {
                s += data.nu[b] * base_.weights[b] * fs.q1(mesh.nodes[k], base_.nodes[b]);
            }
            q[static_cast<Eigen::Index>(k)] = s;
        });
    }
    Eigen::VectorXd phi_w(n), qw(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        phi_w[k] = data.phi[k] * mesh.weights[k];
        qw[k] = q[k] * mesh.weights[k];
    }

    std::vector<double> u(targets.size());
    parallel_targets(targets.size(), [&](std::size_t i) {
        const Vec3& x0 = targets[i];
        const Density rho = green_.rho(x0);
        const double base_term = base_potential(base_, data, x0, fs) + rho.dot(qw);
        u[i] = -base_term - rho.dot(phi_w);
    });
    return u;
}

std::vector<double> solve(const SurfaceMesh& mesh, const BaseDisk& base, const BoundaryData& data,
                          std::span<const Vec3> targets, const Params& p)
{
    return HolmgrenSolver(mesh, base, p).solve(data, targets);
}

std::vector<double> solve_hemisphere(double a, const BaseDisk& base, const SurfaceMesh& mesh,
                                     const BoundaryData& data, std::span<const Vec3> targets, const Params& p)
{
    p.validate();
    check_data(mesh, base, data);
    if (std::abs(mesh.rim_radius - a) > 1e-12 * a) {
        throw ParameterError("mesh is not the hemisphere of the given radius");
    }
    for (const Vec3& x0 : targets) {
        check_target(x0);
        const double r = std::sqrt(x0[0] * x0[0] + x0[1] * x0[1] + x0[2] * x0[2]);
        if (!(r < a)) {
            throw ParameterError("target lies outside the hemisphere");
        }
    }
    const FundamentalSolution fs(p);
    std::vector<double> u(targets.size());
    parallel_targets(targets.size(), [&](std::size_t i) {
        const Vec3& x0 = targets[i];
        const double r2 = x0[0] * x0[0] + x0[1] * x0[1] + x0[2] * x0[2];
        const Vec3 star{a * a * x0[0] / r2, a * a * x0[1] / r2, a * a * x0[2] / r2};
        const double scale = std::pow(a * a / r2, 0.5 * (2.0 * p.alpha + p.m - 2.0));

        double base_term = base_potential(base, data, x0, fs);
        for (std::size_t b = 0; b < base.size(); ++b) {
            if (data.nu[b] != 0.0) {
                base_term -= scale * data.nu[b] * fs.q1(base.nodes[b], star) * base.weights[b];
            }
        }
        double surface_term = 0.0;
        for (std::size_t k = 0; k < mesh.size(); ++k) {
            if (data.phi[k] == 0.0) {
                continue;
            }
            const Vec3 g = green_hemisphere_gradient(mesh.nodes[k], x0, a, fs);
            const Vec3& nk = mesh.normals[k];
            surface_term += data.phi[k] * mesh.x1w[k] * (g[0] * nk[0] + g[1] * nk[1] + g[2] * nk[2])
                            * mesh.weights[k];
        }
        u[i] = -base_term - surface_term;
    });
    return u;
}

double base_disk_integral(const Vec3& x0, double radius, const FundamentalSolution& fs, int n_angle)
{
    if (fs.params().m != 3) {
        throw ParameterError("the base disk integral is implemented for m = 3");
    }
    const double p2 = x0[1] * x0[1] + x0[2] * x0[2];
    if (!(p2 < radius * radius)) {
        throw ParameterError("foot of the target must lie inside the base disk");
    }
    const double a = fs.params().alpha;
    const double d = x0[0];
    const double d_term = std::pow(d, 1.0 - 2.0 * a);
    double sum = 0.0;
    for (int j = 0; j < n_angle; ++j) {
        const double psi = 2.0 * pi * j / n_angle;
        const double pe = x0[1] * std::cos(psi) + x0[2] * std::sin(psi);
        const double len = -pe + std::sqrt(pe * pe + radius * radius - p2);
        sum += std::pow(d * d + len * len, 0.5 - a) - d_term;
    }
    return fs.constants().k1 / (1.0 - 2.0 * a) * sum * (2.0 * pi / n_angle);
}

EnergyIdentity energy_identity_check(const SurfaceMesh& mesh, const BaseDisk& base, const ManufacturedSolution& u,
                                     const Params& p, int volume_resolution)
{
    p.validate();
    const int n = volume_resolution;
    if (n < 4) {
        throw ParameterError("volume resolution must be at least 4");
    }
    const double a = mesh.rim_radius;
    const double grading = std::max(3.0, 2.0 / (1.0 - 2.0 * p.alpha));
    const Rule radial = gauss_legendre(n, 0.0, a);
    const Rule polar = gauss_legendre(n, 0.0, 1.0);
    const double dphi = 2.0 * pi / (2 * n);

    EnergyIdentity e;
    for (int j = 0; j < n; ++j) {
        const double v = 1.0 - polar.nodes[j];
        const double psi = 0.5 * pi * std::pow(v, grading);
        const double dpsi = 0.5 * pi * grading * std::pow(v, grading - 1.0) * polar.weights[j];
        const double sp = std::sin(psi), cp = std::cos(psi);
        for (int i = 0; i < n; ++i) {
            const double r = radial.nodes[i];
            const double w_rp = r * r * cp * radial.weights[i] * dpsi * dphi;
            const double x1 = r * sp;
            const double x1w = std::pow(x1, 2.0 * p.alpha);
            for (int k = 0; k < 2 * n; ++k) {
                const double phi = k * dphi;
                const Vec3 x{x1, r * cp * std::cos(phi), r * cp * std::sin(phi)};
                const Vec3 g = u.grad(x);
                e.lhs += x1w * (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]) * w_rp;
            }
        }
    }
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const Vec3& s = mesh.nodes[k];
        const Vec3& nk = mesh.normals[k];
        const Vec3 g = u.grad(s);
        e.rhs_surface += mesh.x1w[k] * u.u(s) * (g[0] * nk[0] + g[1] * nk[1] + g[2] * nk[2]) * mesh.weights[k];
    }
    for (std::size_t b = 0; b < base.size(); ++b) {
        e.rhs_base -= u.u(base.nodes[b]) * u.nu(base.nodes[b]) * base.weights[b];
    }
    e.rhs = e.rhs_base + e.rhs_surface;
    return e;
}

} // namespace gasp
