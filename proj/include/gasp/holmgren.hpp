#pragma once

#include "gasp/green.hpp"
#include "gasp/kernel.hpp"
#include "gasp/surface.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace gasp {

using PointFunction = std::function<double(const Vec3&)>;

/// Dirichlet data φ at the Γ nodes and weighted flux ν = lim x₁^{2α}u_{x₁} at the
/// Γ₁ nodes, in mesh construction order. When nu_fn is set, the base integral is
/// evaluated with the singularity of q₁ at the foot of the target subtracted.
struct BoundaryData {
    std::vector<double> phi;
    std::vector<double> nu;
    PointFunction nu_fn;
};

BoundaryData sample_data(const SurfaceMesh& mesh, const BaseDisk& base, const PointFunction& phi,
                         const PointFunction& nu);

/// An exact solution of H(u) = 0 with its gradient and base flux ν.
struct ManufacturedSolution {
    std::string name;
    PointFunction u;
    std::function<Vec3(const Vec3&)> grad;
    PointFunction nu;
};

/// The catalog 1, x₂, x₃, x₂x₃, x₂²-x₃², x₁^{1-2α}, x₁^{1-2α}x₂ and q₁(·,ξ) with ξ
/// outside the unit hemisphere. Each entry must pass the finite-difference
/// residual gate at random interior probes, else ParameterError names the case.
std::vector<ManufacturedSolution> register_manufactured(const Params& p, double gate = 1e-6);

/// Looks a case up by name; throws ParameterError if unknown.
ManufacturedSolution manufactured(const Params& p, const std::string& name);

/// Largest normalized residual of u over the registration probes.
double manufactured_residual(const ManufacturedSolution& u, const Params& p);

/// Solution of the Holmgren problem through the Green's function built on the mesh.
class HolmgrenSolver {
public:
    HolmgrenSolver(SurfaceMesh mesh, BaseDisk base, const Params& p);

    [[nodiscard]] const GreenSolver& green() const noexcept { return green_; }
    [[nodiscard]] const BaseDisk& base() const noexcept { return base_; }

    /// u(x₀) = -∫_{Γ₁} ν G₁(0,x′;x₀) dx′ - ∫_Γ φ x₁^{2α} ∂G₁(x,x₀)/∂n dΓ.
    [[nodiscard]] std::vector<double> solve(const BoundaryData& data, std::span<const Vec3> targets) const;

private:
    GreenSolver green_;
    BaseDisk base_;
};

std::vector<double> solve(const SurfaceMesh& mesh, const BaseDisk& base, const BoundaryData& data,
                          std::span<const Vec3> targets, const Params& p);

/// Same representation with the closed-form hemisphere Green's function; no density solves.
std::vector<double> solve_hemisphere(double a, const BaseDisk& base, const SurfaceMesh& mesh,
                                     const BoundaryData& data, std::span<const Vec3> targets, const Params& p);

/// ∫_{|x′|<R} q₁((0,x′), x₀) dx′ for m = 3, by a radial closed form and the
/// trapezoidal rule in angle about the foot of x₀.
double base_disk_integral(const Vec3& x0, double radius, const FundamentalSolution& fs, int n_angle = 256);

struct EnergyIdentity {
    double lhs = 0;           ///< ∫_Ω x₁^{2α} |∇u|² dx
    double rhs = 0;           ///< rhs_base + rhs_surface
    double rhs_base = 0;      ///< -∫_{Γ₁} u ν dx′ (outward normal -e₁)
    double rhs_surface = 0;   ///< ∫_Γ x₁^{2α} u ∂u/∂n dΓ
};

/// Both sides of the energy identity on the hemisphere of radius mesh.rim_radius.
/// The volume rule has n×n×2n points (radius × polar × azimuth).
EnergyIdentity energy_identity_check(const SurfaceMesh& mesh, const BaseDisk& base, const ManufacturedSolution& u,
                                     const Params& p, int volume_resolution);

} // namespace gasp
