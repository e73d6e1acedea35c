#pragma once

#include "gasp/bie.hpp"
#include "gasp/kernel.hpp"
#include "gasp/surface.hpp"

#include <Eigen/Dense>

namespace gasp {

using Density = Eigen::VectorXd;

enum class Side { interior, exterior };

/// What off-surface evaluators do with targets inside the near field of Γ.
enum class NearField { reject, allow };

/// True when x is within half a local node spacing of Γ (normal distance) and
/// within two spacings of the nearest node.
bool near_surface(const SurfaceMesh& mesh, const Vec3& x);

/// w(x) = Σ_k s₁^{2α} μ_k ∂q₁(s_k,x)/∂n w_k.
double double_layer(const SurfaceMesh& mesh, const Density& mu, const Vec3& x, const FundamentalSolution& fs,
                    NearField near = NearField::reject);
double double_layer(const SurfaceMesh& mesh, const Density& mu, const Vec3& x, const Params& p,
                    NearField near = NearField::reject);

/// v(x) = Σ_k ρ_k q₁(s_k,x) w_k.
double simple_layer(const SurfaceMesh& mesh, const Density& rho, const Vec3& x, const FundamentalSolution& fs,
                    NearField near = NearField::reject);
double simple_layer(const SurfaceMesh& mesh, const Density& rho, const Vec3& x, const Params& p,
                    NearField near = NearField::reject);

/// ∇v(x).
Vec3 simple_layer_gradient(const SurfaceMesh& mesh, const Density& rho, const Vec3& x,
                           const FundamentalSolution& fs, NearField near = NearField::reject);

/// Limit of the double layer on Γ: ∓μ/2 + Kμ (interior: minus).
Density double_layer_trace(const DiscreteOperator& op, const Density& mu, Side side);
Density double_layer_trace(const SurfaceMesh& mesh, const Density& mu, Side side, const Params& p);

/// Limit of t₁^{2α} ∂v/∂n on Γ: ±ρ/2 + K*ρ (interior: plus).
Density simple_layer_dn_trace(const DiscreteOperator& op, const Density& rho, Side side);
Density simple_layer_dn_trace(const SurfaceMesh& mesh, const Density& rho, Side side, const Params& p);

} // namespace gasp
