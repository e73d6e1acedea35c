#include "gasp/green.hpp"

#include "gasp/error.hpp"

#include <cmath>
#include <vector>

namespace gasp {

GreenSolver::GreenSolver(SurfaceMesh mesh, const Params& p)
    : mesh_(std::move(mesh)), fs_(p), op_(assemble(mesh_, fs_))
{
}

const SecondKindSolver& GreenSolver::direct() const
{
    std::call_once(direct_once_, [this] { direct_ = std::make_unique<SecondKindSolver>(op_, 2.0, false); });
    return *direct_;
}

const SecondKindSolver& GreenSolver::adjoint() const
{
    std::call_once(adjoint_once_, [this] { adjoint_ = std::make_unique<SecondKindSolver>(op_, 2.0, true); });
    return *adjoint_;
}

void GreenSolver::check_pole(const Vec3& pole) const
{
    if (!(pole[0] > 0.0)) {
        throw NearSurfaceError("pole must lie strictly inside the half-space x1 > 0");
    }
    if (near_surface(mesh_, pole)) {
        throw NearSurfaceError("pole lies in the near field of the surface");
    }
}

Density GreenSolver::mu_rhs(const Vec3& pole) const
{
    Density f(static_cast<Eigen::Index>(mesh_.size()));
    for (std::size_t k = 0; k < mesh_.size(); ++k) {
        f[k] = 2.0 * fs_.q1(mesh_.nodes[k], pole);
    }
    return f;
}

Density GreenSolver::rho_rhs(const Vec3& pole) const
{
    Density g(static_cast<Eigen::Index>(mesh_.size()));
    for (std::size_t k = 0; k < mesh_.size(); ++k) {
        g[k] = 2.0 * mesh_.x1w[k] * fs_.dq1_dn(mesh_.nodes[k], mesh_.normals[k], pole);
    }
    return g;
}

Density GreenSolver::mu(const Vec3& pole) const
{
    check_pole(pole);
    return direct().solve(mu_rhs(pole));
}

Density GreenSolver::rho(const Vec3& pole) const
{
    check_pole(pole);
    return adjoint().solve(rho_rhs(pole));
}

GreenParts GreenSolver::densities(const Vec3& pole) const
{
    GreenParts parts;
    parts.pole = pole;
    parts.mu = mu(pole);
    parts.rho = rho(pole);
    return parts;
}

double GreenSolver::regular_part(const GreenParts& parts, const Vec3& x, Representation via, NearField near) const
{
    if (via == Representation::double_layer) {
        return double_layer(mesh_, parts.mu, x, fs_, near);
    }
    return simple_layer(mesh_, parts.rho, x, fs_, near);
}

double GreenSolver::green(const GreenParts& parts, const Vec3& x, Representation via, NearField near) const
{
    return fs_.q1(x, parts.pole) + regular_part(parts, x, via, near);
}

Density GreenSolver::boundary_trace(const GreenParts& parts) const
{
    return 0.5 * mu_rhs(parts.pole) + double_layer_trace(op_, parts.mu, Side::interior);
}

Density GreenSolver::weighted_normal_trace(const GreenParts& parts) const
{
    return 0.5 * rho_rhs(parts.pole) + simple_layer_dn_trace(op_, parts.rho, Side::interior);
}

GreenParts green_densities(const SurfaceMesh& mesh, const Vec3& pole, const Params& p)
{
    return GreenSolver(mesh, p).densities(pole);
}

double green_regular_part(const GreenParts& parts, const SurfaceMesh& mesh, const Vec3& x, const Params& p,
                          Representation via, NearField near)
{
    if (via == Representation::double_layer) {
        return double_layer(mesh, parts.mu, x, p, near);
    }
    return simple_layer(mesh, parts.rho, x, p, near);
}

namespace {

// a²ξ/R² and the image weight (a/R)^{2α+m-2}
double image(std::span<const double> xi, double a, int m, double alpha, std::vector<double>& out)
{
    double r2 = 0.0;
    for (double v : xi) {
        r2 += v * v;
    }
    if (r2 == 0.0) {
        throw ParameterError("hemisphere Green's function needs a pole away from the origin");
    }
    if (!(a > 0.0)) {
        throw ParameterError("hemisphere radius must be positive");
    }
    out.resize(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        out[i] = a * a * xi[i] / r2;
    }
    return std::pow(a * a / r2, 0.5 * (2.0 * alpha + m - 2.0));
}

} // namespace

double green_hemisphere(std::span<const double> x, std::span<const double> xi, double a,
                        const FundamentalSolution& fs)
{
    std::vector<double> star;
    const double scale = image(xi, a, fs.params().m, fs.params().alpha, star);
    return fs.q1(x, xi) - scale * fs.q1(x, star);
}

double green_hemisphere(std::span<const double> x, std::span<const double> xi, double a, const Params& p)
{
    return green_hemisphere(x, xi, a, FundamentalSolution(p));
}

Vec3 green_hemisphere_gradient(const Vec3& x, const Vec3& xi, double a, const FundamentalSolution& fs)
{
    std::vector<double> star;
    const double scale = image(xi, a, fs.params().m, fs.params().alpha, star);
    Vec3 g{}, h{};
    fs.grad_q1(x, xi, g);
    fs.grad_q1(x, star, h);
    return {g[0] - scale * h[0], g[1] - scale * h[1], g[2] - scale * h[2]};
}

Density hemisphere_weighted_normal_derivative(const SurfaceMesh& mesh, const Vec3& xi, double a,
                                              const FundamentalSolution& fs)
{
    Density d(static_cast<Eigen::Index>(mesh.size()));
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const Vec3 g = green_hemisphere_gradient(mesh.nodes[k], xi, a, fs);
        const Vec3& n = mesh.normals[k];
        d[k] = mesh.x1w[k] * (g[0] * n[0] + g[1] * n[1] + g[2] * n[2]);
    }
    return d;
}

double h1_correction(const SurfaceMesh& mesh, const GreenParts& parts_x, const Vec3& xi, double a,
                     const FundamentalSolution& fs)
{
    if (static_cast<std::size_t>(parts_x.rho.size()) != mesh.size()) {
        throw ParameterError("density length does not match the mesh");
    }
    if (near_surface(mesh, xi)) {
        throw NearSurfaceError("pole lies in the near field of the surface");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        sum += green_hemisphere(mesh.nodes[k], xi, a, fs) * parts_x.rho[k] * mesh.weights[k];
    }
    return sum;
}

double h1_correction(const SurfaceMesh& mesh, const GreenParts& parts_x, const Vec3& x, const Vec3& xi, double a,
                     const Params& p)
{
    if (x != parts_x.pole) {
        throw ParameterError("densities were computed for a different pole");
    }
    return h1_correction(mesh, parts_x, xi, a, FundamentalSolution(p));
}

} // namespace gasp
