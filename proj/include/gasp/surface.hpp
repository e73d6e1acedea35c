#pragma once

#include "gasp/kernel.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gasp {

/// Quadrature of a surface of revolution Γ about the x₁-axis (m = 3).
/// Nodes are stored row by row: index = i·n_azimuth + j, with i running over
/// the generator parameter from the pole (i = 0) to the rim.
struct SurfaceMesh {
    std::vector<Vec3> nodes;
    std::vector<Vec3> normals;     ///< outward unit normals
    std::vector<double> weights;   ///< area weights
    std::vector<double> x1w;       ///< s₁^{2α}
    std::vector<double> spacing;   ///< local node spacing (max over both directions)
    std::vector<double> polar;     ///< polar angle θ of the generator point (hemisphere: exact θ)
    std::vector<double> azimuth;   ///< φ
    int n_param = 0;
    int n_azimuth = 0;
    double rim_radius = 0;
    double alpha = 0;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
};

/// Flat base Γ₁: a disk in x₁ = 0.
struct BaseDisk {
    double radius = 0;
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    std::vector<double> r;         ///< radial coordinate per node
    std::vector<double> azimuth;   ///< angle per node

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
};

/// Generator (x₁(t), ρ(t)), t in [0,1]: ρ(0) = 0 on the axis, x₁(1) = 0 on the rim.
struct GeneratorCurve {
    std::function<double(double)> x1;
    std::function<double(double)> rho;
    std::function<double(double)> dx1;
    std::function<double(double)> drho;
};

GeneratorCurve hemisphere_generator(double a);

/// x₁ = c cos(πt/2), ρ = a sin(πt/2).
GeneratorCurve half_ellipsoid_generator(double c, double a);

/// Hemisphere of radius a. Polar nodes come from Gauss–Legendre in u composed with
/// ψ = (π/2)(1-u)^grading, ψ the angle above the plane x₁ = 0; azimuth is uniform.
SurfaceMesh hemisphere_mesh(double a, int n_theta, int n_phi, double grading, const Params& p);

/// Same construction for an arbitrary generator, t = 1 - (1-u)^grading.
SurfaceMesh revolve_mesh(const GeneratorCurve& g, int n_t, int n_phi, double grading, const Params& p);

/// Gauss–Legendre in r times the midpoint rule in angle.
BaseDisk base_disk(double radius, int n_r, int n_phi);

using VectorField = std::function<Vec3(const Vec3&)>;

/// ∫_Γ x₁^{2α} ∂u/∂n dΓ plus the base contribution -∫_{Γ₁} ν, which is taken as
/// zero when ν is not supplied (bounded ∂u/∂x₁).
double weighted_flux(const SurfaceMesh& mesh, const BaseDisk& base, const VectorField& grad_u,
                     const Params& p, const std::optional<std::function<double(const Vec3&)>>& nu = {});

/// Σ_k x1w[k]·w[k], the quadrature of ∫_Γ x₁^{2α} dΓ.
double weighted_area(const SurfaceMesh& mesh);

/// Exact surface area of the half-ellipsoid swept by half_ellipsoid_generator.
double half_ellipsoid_area(double c, double a);

void write_mesh_csv(const SurfaceMesh& mesh, std::ostream& out);
void write_mesh_csv(const SurfaceMesh& mesh, const std::string& path);

/// Reads nodes, normals, weights and x₁-weights; grid metadata is not restored.
SurfaceMesh read_mesh_csv(std::istream& in);

} // namespace gasp
