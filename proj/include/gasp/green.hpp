#pragma once

#include "gasp/bie.hpp"
#include "gasp/kernel.hpp"
#include "gasp/potentials.hpp"
#include "gasp/surface.hpp"

#include <memory>
#include <mutex>
#include <span>

namespace gasp {

/// Densities of the regular part v₁(·;ξ) of G₁(x;ξ) = q₁(x,ξ) + v₁(x;ξ).
struct GreenParts {
    Vec3 pole{};
    Density mu;   ///< (I - 2K) μ = 2 q₁(·, ξ)              (double-layer form)
    Density rho;  ///< (I - 2K*) ρ = 2 s₁^{2α} ∂q₁(·, ξ)/∂n  (simple-layer form)
};

enum class Representation { double_layer, simple_layer };

/// Green's function of the Holmgren problem on the domain bounded by a mesh and
/// the plane x₁ = 0. Each of the two factorizations is built on first use and
/// reused for every pole.
class GreenSolver {
public:
    GreenSolver(SurfaceMesh mesh, const Params& p);

    [[nodiscard]] const SurfaceMesh& mesh() const noexcept { return mesh_; }
    [[nodiscard]] const FundamentalSolution& fs() const noexcept { return fs_; }
    [[nodiscard]] const DiscreteOperator& op() const noexcept { return op_; }

    [[nodiscard]] GreenParts densities(const Vec3& pole) const;
    [[nodiscard]] Density mu(const Vec3& pole) const;
    [[nodiscard]] Density rho(const Vec3& pole) const;

    /// v₁(x;ξ) from either representation.
    [[nodiscard]] double regular_part(const GreenParts& parts, const Vec3& x, Representation via,
                                      NearField near = NearField::reject) const;

    /// G₁(x;ξ) = q₁(x,ξ) + v₁(x;ξ).
    [[nodiscard]] double green(const GreenParts& parts, const Vec3& x, Representation via,
                               NearField near = NearField::reject) const;

    /// G₁ on Γ from the interior double-layer limit: q₁ + (-μ/2 + Kμ).
    [[nodiscard]] Density boundary_trace(const GreenParts& parts) const;

    /// s₁^{2α} ∂G₁/∂n on Γ from the interior simple-layer limit: s₁^{2α}∂q₁/∂n + ρ/2 + K*ρ.
    [[nodiscard]] Density weighted_normal_trace(const GreenParts& parts) const;

    /// Right-hand sides of the two density equations.
    [[nodiscard]] Density mu_rhs(const Vec3& pole) const;
    [[nodiscard]] Density rho_rhs(const Vec3& pole) const;

    /// Throws NearSurfaceError unless ξ₁ > 0 and ξ is outside the near field of Γ.
    void check_pole(const Vec3& pole) const;

private:
    const SecondKindSolver& direct() const;
    const SecondKindSolver& adjoint() const;

    SurfaceMesh mesh_;
    FundamentalSolution fs_;
    DiscreteOperator op_;
    mutable std::once_flag direct_once_, adjoint_once_;
    mutable std::unique_ptr<SecondKindSolver> direct_, adjoint_;
};

GreenParts green_densities(const SurfaceMesh& mesh, const Vec3& pole, const Params& p);

double green_regular_part(const GreenParts& parts, const SurfaceMesh& mesh, const Vec3& x, const Params& p,
                          Representation via, NearField near = NearField::reject);

/// G₀₁(x;ξ) = q₁(x,ξ) - (a/R)^{2α+m-2} q₁(x, a²ξ/R²), R = |ξ|: the Green's function
/// of the hemisphere |x| < a, x₁ > 0.
double green_hemisphere(std::span<const double> x, std::span<const double> xi, double a, const Params& p);
double green_hemisphere(std::span<const double> x, std::span<const double> xi, double a,
                        const FundamentalSolution& fs);

/// ∇ₓ G₀₁(x;ξ).
Vec3 green_hemisphere_gradient(const Vec3& x, const Vec3& xi, double a, const FundamentalSolution& fs);

/// s₁^{2α} ∂G₀₁(s;ξ)/∂n at every node of a mesh.
Density hemisphere_weighted_normal_derivative(const SurfaceMesh& mesh, const Vec3& xi, double a,
                                              const FundamentalSolution& fs);

/// H₁(x;ξ) = ∫_Γ G₀₁(t;ξ) ρ₁(t;x) dΓ with parts_x the densities for pole x,
/// so that G₁(x;ξ) = G₀₁(x;ξ) + H₁(x;ξ) for domains inside the hemisphere of radius a.
double h1_correction(const SurfaceMesh& mesh, const GreenParts& parts_x, const Vec3& xi, double a,
                     const FundamentalSolution& fs);
double h1_correction(const SurfaceMesh& mesh, const GreenParts& parts_x, const Vec3& x, const Vec3& xi, double a,
                     const Params& p);

} // namespace gasp
