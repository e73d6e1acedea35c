#pragma once

#include "gasp/kernel.hpp"
#include "gasp/surface.hpp"

#include <Eigen/Dense>

#include <iosfwd>

namespace gasp {

/// Nyström matrix of the weighted double-layer operator on Γ:
///   (Kμ)(t_j) ≈ Σ_k K₁(s_k, t_j) w_k μ_k,
/// with the diagonal fixed so that every row sums to -1/2.
///
/// Off-diagonal entries are rounded to multiples of 2⁻⁴² (a relative change far
/// below the quadrature error) so that row sums, and K applied to constants, are
/// exact in floating point irrespective of summation order.
class DiscreteOperator {
public:
    DiscreteOperator(Eigen::MatrixXd entries, Eigen::VectorXd weights);

    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return a_; }
    [[nodiscard]] const Eigen::VectorXd& weights() const noexcept { return w_; }
    [[nodiscard]] Eigen::Index size() const noexcept { return a_.rows(); }

    /// K μ.
    [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& mu) const;

    /// K* ρ with (K*ρ)(t_j) ≈ Σ_k K₁(t_j, s_k) w_k ρ_k, i.e. W⁻¹ Kᵀ W: the adjoint
    /// of K for the quadrature inner product ⟨f,g⟩ = Σ f_k g_k w_k.
    [[nodiscard]] Eigen::VectorXd apply_adjoint(const Eigen::VectorXd& rho) const;
    [[nodiscard]] Eigen::MatrixXd adjoint_matrix() const;

    /// Rows "row,col,value".
    void write_csv(std::ostream& out) const;

private:
    Eigen::MatrixXd a_;
    Eigen::VectorXd w_;
};

inline constexpr double operator_quantum = 0x1p-42;

DiscreteOperator assemble(const SurfaceMesh& mesh, const FundamentalSolution& fs);
DiscreteOperator assemble(const SurfaceMesh& mesh, const Params& p);

/// Factorization of I - λK (or I - λK*) reused across right-hand sides.
class SecondKindSolver {
public:
    SecondKindSolver(const DiscreteOperator& op, double lambda, bool adjoint);

    /// Throws SingularSystemError if the relative residual exceeds 1e-10.
    [[nodiscard]] Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] bool adjoint() const noexcept { return adjoint_; }
    /// Smallest |U_ii| / largest |U_ii| of the LU factor.
    [[nodiscard]] double pivot_ratio() const noexcept { return pivot_ratio_; }
    /// Estimated reciprocal 1-norm condition number.
    [[nodiscard]] double rcond() const noexcept { return rcond_; }

private:
    Eigen::MatrixXd system_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    double lambda_;
    bool adjoint_;
    double pivot_ratio_ = 0;
    double rcond_ = 0;
};

/// Solves (I - λK)μ = f, or (I - λK*)ρ = g when adjoint is set.
Eigen::VectorXd solve_second_kind(const DiscreteOperator& op, double lambda, const Eigen::VectorXd& rhs,
                                  bool adjoint = false);

/// Smallest singular value of W^{1/2}(I - λK)W^{-1/2}, the matrix of I - λK in the
/// quadrature inner product, by inverse iteration. Returns 0 for an exactly
/// singular factorization.
double check_lambda2(const DiscreteOperator& op, double lambda = 2.0);

} // namespace gasp
