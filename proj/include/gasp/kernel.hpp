#pragma once

#include "gasp/specfun.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace gasp {

/// Spatial dimension m and singularity exponent α of
///   H(u) = Σ u_{xᵢxᵢ} + (2α/x₁) u_{x₁}.
struct Params {
    int m = 3;
    double alpha = 0.25;

    /// Throws ParameterError unless m >= 3 and 0 < 2α < 1.
    void validate() const;
};

using Vec3 = std::array<double, 3>;

/// A point of the closed half-space x₁ >= 0.
class HalfSpacePoint {
public:
    explicit HalfSpacePoint(std::vector<double> coords);
    HalfSpacePoint(std::initializer_list<double> coords);

    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
    [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
    operator std::span<const double>() const noexcept { return coords_; }

private:
    std::vector<double> coords_;
};

struct PairGeometry {
    double r2 = 0;    ///< Σ (xᵢ - ξᵢ)²
    double r12 = 0;   ///< (x₁ + ξ₁)² + Σ_{i>=2} (xᵢ - ξᵢ)²
    double zeta = 0;  ///< 1 - r₁²/r² = -4x₁ξ₁/r²
};

/// Throws CoincidentPointsError when x == ξ. First coordinates may be slightly
/// negative (finite differences across x₁ = 0) as long as r₁² stays positive.
PairGeometry pair_geometry(std::span<const double> x, std::span<const double> xi);

struct Constants {
    double k1 = 0;
    double k2 = 0;
};

Constants constants(const Params& p);

/// The fundamental solutions q₁, q₂ and the derived double-layer kernel for one
/// parameter set. Holds precomputed hypergeometric evaluators; cheap to copy,
/// immutable, and safe to share between threads.
class FundamentalSolution {
public:
    explicit FundamentalSolution(const Params& p, const SeriesControl& ctl = {});

    [[nodiscard]] const Params& params() const noexcept { return p_; }
    [[nodiscard]] const Constants& constants() const noexcept { return k_; }

    /// q₁ = k₁ (r²)^{-(m-2)/2} (r₁²)^{-α} F(α-(m-2)/2, α; 2α; 4x₁ξ₁/r₁²).
    [[nodiscard]] double q1(std::span<const double> x, std::span<const double> xi) const;

    /// q₁ = k₁ (r²)^{-α-(m-2)/2} F(α+(m-2)/2, α; 2α; ζ), the untransformed form.
    [[nodiscard]] double q1_raw(std::span<const double> x, std::span<const double> xi) const;

    /// q₂ = k₂ (r²)^{α-m/2} x₁^{1-2α} ξ₁^{1-2α} F(m/2-α, 1-α; 2-2α; ζ).
    [[nodiscard]] double q2(std::span<const double> x, std::span<const double> xi) const;

    /// Gradient of q₁(ξ, x) with respect to ξ, written to out (size m).
    void grad_q1(std::span<const double> xi, std::span<const double> x, std::span<double> out) const;
    [[nodiscard]] std::vector<double> grad_q1(std::span<const double> xi, std::span<const double> x) const;

    /// ∂q₁(ξ,x)/∂n_ξ = ∇_ξ q₁ · n.
    [[nodiscard]] double dq1_dn(std::span<const double> xi, std::span<const double> normal,
                                std::span<const double> x) const;

    /// The same derivative written as (2α+m-2)k₁(r²)^{-α-(m-3)/2} F ∂(1/r)/∂n - (...) cos(n, ξ₁).
    [[nodiscard]] double dq1_dn_direct(std::span<const double> xi, std::span<const double> normal,
                                       std::span<const double> x) const;

    /// K₁(s,t) = s₁^{2α} ∂q₁(s,t)/∂n_s.
    [[nodiscard]] double K1(std::span<const double> s, std::span<const double> normal_s,
                            std::span<const double> t) const;

    /// k₁ r₁^{-2α} / r^{m-2}, the pointwise bound on q₁.
    [[nodiscard]] double bound(std::span<const double> x, std::span<const double> xi) const;

private:
    Params p_;
    Constants k_;
    Gauss2F1 f_q1_;      // (α-(m-2)/2, α; 2α), argument in [0,1)
    Gauss2F1 f_q1_raw_;  // (α+(m-2)/2, α; 2α)
    Gauss2F1 f_q2_;      // (m/2-α, 1-α; 2-2α)
    Gauss2F1 f_g1_;      // (α+m/2, α; 2α)
    Gauss2F1 f_g2_;      // (α+m/2, 1+α; 1+2α)
};

double q1(std::span<const double> x, std::span<const double> xi, const Params& p);
double q2(std::span<const double> x, std::span<const double> xi, const Params& p);
std::vector<double> grad_q1(std::span<const double> xi, std::span<const double> x, const Params& p);
double dq1_dn(std::span<const double> xi, std::span<const double> normal, std::span<const double> x,
              const Params& p);
double kernel_K1(std::span<const double> s, std::span<const double> normal_s, std::span<const double> t,
                 const Params& p);

enum class Stencil { second_order, fourth_order };

using ScalarField = std::function<double(std::span<const double>)>;

/// Central-difference value of H(u) at x, divided by
/// |u| + Σ|u_{xᵢxᵢ}| + |2α u_{x₁}/x₁| so that it is scale free.
double operator_residual(const ScalarField& u, std::span<const double> x, double alpha,
                         double h = 1e-3, Stencil stencil = Stencil::second_order);

} // namespace gasp
