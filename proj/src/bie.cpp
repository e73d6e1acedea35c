#include "gasp/bie.hpp"

#include "gasp/error.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <string>

namespace gasp {

DiscreteOperator::DiscreteOperator(Eigen::MatrixXd entries, Eigen::VectorXd weights)
    : a_(std::move(entries)), w_(std::move(weights))
{
    if (a_.rows() != a_.cols() || a_.rows() != w_.size()) {
        throw ParameterError("operator matrix and weight vector sizes disagree");
    }
    if ((w_.array() <= 0.0).any()) {
        throw ParameterError("quadrature weights must be positive");
    }
}

Eigen::VectorXd DiscreteOperator::apply(const Eigen::VectorXd& mu) const
{
    if (mu.size() != size()) {
        throw ParameterError("density length does not match the operator");
    }
    return a_ * mu;
}

Eigen::VectorXd DiscreteOperator::apply_adjoint(const Eigen::VectorXd& rho) const
{
    if (rho.size() != size()) {
        throw ParameterError("density length does not match the operator");
    }
    return (a_.transpose() * w_.cwiseProduct(rho)).cwiseQuotient(w_);
}

Eigen::MatrixXd DiscreteOperator::adjoint_matrix() const
{
    return w_.cwiseInverse().asDiagonal() * a_.transpose() * w_.asDiagonal();
}

void DiscreteOperator::write_csv(std::ostream& out) const
{
    out << "row,col,value\n";
    const auto old = out.precision(17);
    for (Eigen::Index j = 0; j < a_.rows(); ++j) {
        for (Eigen::Index k = 0; k < a_.cols(); ++k) {
            out << j << ',' << k << ',' << a_(j, k) << '\n';
        }
    }
    out.precision(old);
}

DiscreteOperator assemble(const SurfaceMesh& mesh, const FundamentalSolution& fs)
{
    const auto n = static_cast<Eigen::Index>(mesh.size());
    if (n == 0) {
        throw ParameterError("cannot assemble on an empty mesh");
    }
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd w(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        w(k) = mesh.weights[k];
    }
    // a(j,k) = K₁(s_k, t_j) w_k
    double worst = 0.0;
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : worst)
    for (Eigen::Index j = 0; j < n; ++j) {
        double off = 0.0;
        double off_abs = 0.0;
        try {
            for (Eigen::Index k = 0; k < n; ++k) {
                if (k == j) {
                    continue;
                }
                const double v = fs.K1(mesh.nodes[k], mesh.normals[k], mesh.nodes[j]) * mesh.weights[k];
                const double q = std::nearbyint(v / operator_quantum) * operator_quantum;
                a(j, k) = q;
                off += q;
                off_abs += std::abs(q);
            }
        } catch (...) {
#pragma omp critical(gasp_assemble_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
        worst = std::max(worst, off_abs);
        a(j, j) = -0.5 - off;
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    if (!(worst < 0x1p10)) {
        throw SingularSystemError("operator row too large for exact gauge arithmetic", worst);
    }
    return DiscreteOperator(std::move(a), std::move(w));
}

DiscreteOperator assemble(const SurfaceMesh& mesh, const Params& p)
{
    return assemble(mesh, FundamentalSolution(p));
}

SecondKindSolver::SecondKindSolver(const DiscreteOperator& op, double lambda, bool adjoint)
    : lambda_(lambda), adjoint_(adjoint)
{
    const Eigen::Index n = op.size();
    const Eigen::MatrixXd& k = op.matrix();
    system_ = adjoint ? Eigen::MatrixXd(-lambda * op.adjoint_matrix()) : Eigen::MatrixXd(-lambda * k);
    system_.diagonal().array() += 1.0;
    lu_.compute(system_);
    const auto u = lu_.matrixLU().diagonal().cwiseAbs();
    const double hi = u.maxCoeff();
    pivot_ratio_ = hi > 0.0 ? u.minCoeff() / hi : 0.0;
    rcond_ = n > 0 ? lu_.rcond() : 0.0;
    if (!(pivot_ratio_ > 1e-14) || !(rcond_ > 1e-13)) {
        throw SingularSystemError("I - lambda*K is numerically singular (pivot ratio "
                                      + std::to_string(pivot_ratio_) + ", rcond " + std::to_string(rcond_) + ")",
                                  pivot_ratio_);
    }
}

Eigen::VectorXd SecondKindSolver::solve(const Eigen::VectorXd& rhs) const
{
    if (rhs.size() != system_.rows()) {
        throw ParameterError("right-hand side length does not match the operator");
    }
    const double norm = rhs.norm();
    if (norm == 0.0) {
        return Eigen::VectorXd::Zero(rhs.size());
    }
    Eigen::VectorXd x = lu_.solve(rhs);
    const double residual = (system_ * x - rhs).norm() / norm;
    if (!(residual <= 1e-10)) {
        throw SingularSystemError("second-kind solve residual " + std::to_string(residual)
                                      + " exceeds 1e-10",
                                  pivot_ratio_);
    }
    return x;
}

Eigen::VectorXd solve_second_kind(const DiscreteOperator& op, double lambda, const Eigen::VectorXd& rhs,
                                  bool adjoint)
{
    return SecondKindSolver(op, lambda, adjoint).solve(rhs);
}

namespace {

// Bᵀy = x from PB = LU: Uᵀ Lᵀ P y = x
Eigen::VectorXd transposed_solve(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, const Eigen::VectorXd& x)
{
    const Eigen::VectorXd z = lu.matrixLU().triangularView<Eigen::Upper>().transpose().solve(x);
    const Eigen::VectorXd w = lu.matrixLU().triangularView<Eigen::UnitLower>().transpose().solve(z);
    return lu.permutationP().transpose() * w;
}

} // namespace

double check_lambda2(const DiscreteOperator& op, double lambda)
{
    const Eigen::Index n = op.size();
    Eigen::MatrixXd b = -lambda * op.matrix();
    b.diagonal().array() += 1.0;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    const auto u = lu.matrixLU().diagonal().cwiseAbs();
    if (!(u.minCoeff() > 1e-15 * u.maxCoeff())) {
        return 0.0;
    }
    const Eigen::VectorXd s = op.weights().cwiseSqrt();
    // M = S B S⁻¹; iterate x ← M⁻¹ M⁻ᵀ x
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x(i) += 0.1 * std::sin(1.7 * static_cast<double>(i));
    }
    x.normalize();
    double estimate = 0.0;
    for (int it = 0; it < 500; ++it) {
        const Eigen::VectorXd y = s.cwiseInverse().cwiseProduct(transposed_solve(lu, s.cwiseProduct(x)));
        const Eigen::VectorXd z = s.cwiseProduct(lu.solve(s.cwiseInverse().cwiseProduct(y)));
        const double growth = z.norm();
        if (!std::isfinite(growth) || growth == 0.0) {
            return 0.0;
        }
        const double next = 1.0 / std::sqrt(growth);
        x = z / growth;
        if (it > 5 && std::abs(next - estimate) <= 1e-12 * next) {
            return next;
        }
        estimate = next;
    }
    return estimate;
}

} // namespace gasp
