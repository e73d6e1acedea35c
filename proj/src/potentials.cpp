#include "gasp/potentials.hpp"

#include "gasp/error.hpp"

#include <cmath>
#include <limits>

namespace gasp {

namespace {

void check_density(const SurfaceMesh& mesh, const Density& d)
{
    if (static_cast<std::size_t>(d.size()) != mesh.size()) {
        throw ParameterError("density length does not match the mesh");
    }
}

void guard(const SurfaceMesh& mesh, const Vec3& x, NearField near)
{
    if (near == NearField::reject && near_surface(mesh, x)) {
        throw NearSurfaceError("target lies in the near field of the surface; use the trace operations on the surface");
    }
}

} // namespace

bool near_surface(const SurfaceMesh& mesh, const Vec3& x)
{
    if (mesh.size() == 0) {
        return false;
    }
    double best = std::numeric_limits<double>::infinity();
    std::size_t nearest = 0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const Vec3& s = mesh.nodes[k];
        const double d2 = (x[0] - s[0]) * (x[0] - s[0]) + (x[1] - s[1]) * (x[1] - s[1]) + (x[2] - s[2]) * (x[2] - s[2]);
        if (d2 < best) {
            best = d2;
            nearest = k;
        }
    }
    const Vec3& s = mesh.nodes[nearest];
    const Vec3& n = mesh.normals[nearest];
    const double h = mesh.spacing[nearest];
    const double normal_gap = std::abs((x[0] - s[0]) * n[0] + (x[1] - s[1]) * n[1] + (x[2] - s[2]) * n[2]);
    return std::sqrt(best) < 2.0 * h && normal_gap < 0.5 * h;
}

double double_layer(const SurfaceMesh& mesh, const Density& mu, const Vec3& x, const FundamentalSolution& fs,
                    NearField near)
{
    check_density(mesh, mu);
    guard(mesh, x, near);
    double sum = 0.0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        if (mesh.x1w[k] == 0.0 || mu[k] == 0.0) {
            continue;
        }
        sum += mesh.x1w[k] * mu[k] * fs.dq1_dn(mesh.nodes[k], mesh.normals[k], x) * mesh.weights[k];
    }
    return sum;
}

double double_layer(const SurfaceMesh& mesh, const Density& mu, const Vec3& x, const Params& p, NearField near)
{
    return double_layer(mesh, mu, x, FundamentalSolution(p), near);
}

double simple_layer(const SurfaceMesh& mesh, const Density& rho, const Vec3& x, const FundamentalSolution& fs,
                    NearField near)
{
    check_density(mesh, rho);
    guard(mesh, x, near);
    double sum = 0.0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        if (rho[k] == 0.0) {
            continue;
        }
        sum += rho[k] * fs.q1(mesh.nodes[k], x) * mesh.weights[k];
    }
    return sum;
}

double simple_layer(const SurfaceMesh& mesh, const Density& rho, const Vec3& x, const Params& p, NearField near)
{
    return simple_layer(mesh, rho, x, FundamentalSolution(p), near);
}

Vec3 simple_layer_gradient(const SurfaceMesh& mesh, const Density& rho, const Vec3& x,
                           const FundamentalSolution& fs, NearField near)
{
    check_density(mesh, rho);
    guard(mesh, x, near);
    Vec3 sum{0.0, 0.0, 0.0};
    Vec3 g{};
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        if (rho[k] == 0.0) {
            continue;
        }
        fs.grad_q1(x, mesh.nodes[k], g);
        const double c = rho[k] * mesh.weights[k];
        sum[0] += c * g[0];
        sum[1] += c * g[1];
        sum[2] += c * g[2];
    }
    return sum;
}

Density double_layer_trace(const DiscreteOperator& op, const Density& mu, Side side)
{
    const double jump = side == Side::interior ? -0.5 : 0.5;
    return jump * mu + op.apply(mu);
}

Density double_layer_trace(const SurfaceMesh& mesh, const Density& mu, Side side, const Params& p)
{
    check_density(mesh, mu);
    return double_layer_trace(assemble(mesh, p), mu, side);
}

Density simple_layer_dn_trace(const DiscreteOperator& op, const Density& rho, Side side)
{
    const double jump = side == Side::interior ? 0.5 : -0.5;
    return jump * rho + op.apply_adjoint(rho);
}

Density simple_layer_dn_trace(const SurfaceMesh& mesh, const Density& rho, Side side, const Params& p)
{
    check_density(mesh, rho);
    return simple_layer_dn_trace(assemble(mesh, p), rho, side);
}

} // namespace gasp
