#include "gasp/bie.hpp"
#include "gasp/error.hpp"
#include "gasp/surface.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

using namespace gasp;
using testing_support::alphas;

namespace {

const SurfaceMesh& mesh_for(double a, int n)
{
    static std::map<std::pair<double, int>, SurfaceMesh> cache;
    auto it = cache.find({a, n});
    if (it == cache.end()) {
        it = cache.emplace(std::pair{a, n}, hemisphere_mesh(1.0, n, 2 * n, 3.0, Params{3, a})).first;
    }
    return it->second;
}

const DiscreteOperator& op_for(double a, int n)
{
    static std::map<std::pair<double, int>, DiscreteOperator> cache;
    auto it = cache.find({a, n});
    if (it == cache.end()) {
        it = cache.emplace(std::pair{a, n}, assemble(mesh_for(a, n), Params{3, a})).first;
    }
    return it->second;
}

Eigen::VectorXd sample(const SurfaceMesh& mesh, double (*f)(const Vec3&))
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(mesh.size()));
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        v(static_cast<Eigen::Index>(k)) = f(mesh.nodes[k]);
    }
    return v;
}

double smooth(const Vec3& s)
{
    return 1.0 + s[1] + 0.5 * s[0] * s[2];
}

} // namespace

TEST(Assemble, RowSumsAreExact)
{
    for (double a : alphas) {
        const DiscreteOperator& op = op_for(a, 16);
        const Eigen::MatrixXd& k = op.matrix();
        for (Eigen::Index j = 0; j < k.rows(); ++j) {
            double forward = 0.0, backward = 0.0;
            for (Eigen::Index i = 0; i < k.cols(); ++i) {
                forward += k(j, i);
                backward += k(j, k.cols() - 1 - i);
            }
            ASSERT_EQ(forward, -0.5) << a << ' ' << j;
            ASSERT_EQ(backward, -0.5) << a << ' ' << j;
        }
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(op.size());
        const Eigen::VectorXd image = ones - 2.0 * op.apply(ones);
        EXPECT_TRUE((image.array() == 2.0).all()) << a;
    }
}

TEST(Assemble, OffDiagonalEntriesAreQuantized)
{
    const DiscreteOperator& op = op_for(0.25, 16);
    const Eigen::MatrixXd& k = op.matrix();
    for (Eigen::Index j = 0; j < k.rows(); j += 37) {
        for (Eigen::Index i = 0; i < k.cols(); ++i) {
            if (i != j) {
                const double q = k(j, i) / operator_quantum;
                ASSERT_EQ(q, std::nearbyint(q));
            }
        }
    }
}

TEST(Assemble, MatchesKernel)
{
    const double a = 0.3;
    const SurfaceMesh& mesh = mesh_for(a, 8);
    const DiscreteOperator& op = op_for(a, 8);
    const FundamentalSolution fs({3, a});
    for (std::size_t j = 0; j < mesh.size(); j += 11) {
        for (std::size_t k = 0; k < mesh.size(); k += 7) {
            if (j == k) {
                continue;
            }
            const double v = fs.K1(mesh.nodes[k], mesh.normals[k], mesh.nodes[j]) * mesh.weights[k];
            EXPECT_LE(std::abs(op.matrix()(j, k) - v), operator_quantum);
        }
    }
}

TEST(Assemble, ApplyConverges)
{
    // ∫ (Kμ) s₂ dΓ for μ = s₂ settles under refinement
    double values[3];
    int i = 0;
    for (int n : {8, 16, 32}) {
        const SurfaceMesh& mesh = mesh_for(0.25, n);
        const Eigen::VectorXd mu = sample(mesh, [](const Vec3& s) { return s[1]; });
        const Eigen::VectorXd image = op_for(0.25, n).apply(mu);
        values[i++] = (image.cwiseProduct(mu).cwiseProduct(op_for(0.25, n).weights())).sum();
    }
    const double d1 = std::abs(values[1] - values[0]), d2 = std::abs(values[2] - values[1]);
    EXPECT_LE(d2, d1 / 2.0);
}

TEST(Assemble, AdjointIsWeightedTranspose)
{
    const DiscreteOperator& op = op_for(0.1, 8);
    const SurfaceMesh& mesh = mesh_for(0.1, 8);
    const Eigen::VectorXd f = sample(mesh, smooth);
    const Eigen::VectorXd g = sample(mesh, [](const Vec3& s) { return s[0] * s[0] - s[2]; });
    const Eigen::VectorXd& w = op.weights();
    const double lhs = op.apply(f).cwiseProduct(g).cwiseProduct(w).sum();
    const double rhs = f.cwiseProduct(op.apply_adjoint(g)).cwiseProduct(w).sum();
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::abs(lhs));
    EXPECT_LE((op.adjoint_matrix() * g - op.apply_adjoint(g)).norm(), 1e-12 * g.norm());
}

TEST(Assemble, Errors)
{
    EXPECT_THROW(assemble(SurfaceMesh{}, Params{3, 0.25}), ParameterError);
    EXPECT_THROW(DiscreteOperator(Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Ones(2)), ParameterError);
    EXPECT_THROW(static_cast<void>(op_for(0.25, 8).apply(Eigen::VectorXd::Ones(3))), ParameterError);
}

TEST(Assemble, CsvDump)
{
    const Eigen::MatrixXd a{{-0.5, 0.0}, {0.25, -0.75}};
    const DiscreteOperator op(a, Eigen::VectorXd::Ones(2));
    std::ostringstream out;
    op.write_csv(out);
    EXPECT_EQ(out.str(), "row,col,value\n0,0,-0.5\n0,1,0\n1,0,0.25\n1,1,-0.75\n");
}

TEST(SecondKind, RoundTrip)
{
    for (double a : alphas) {
        const DiscreteOperator& op = op_for(a, 16);
        const Eigen::VectorXd mu = sample(mesh_for(a, 16), smooth);
        const Eigen::VectorXd rhs = mu - 2.0 * op.apply(mu);
        EXPECT_LE((solve_second_kind(op, 2.0, rhs) - mu).norm(), 1e-10 * mu.norm()) << a;
        const Eigen::VectorXd rhs_adj = mu - 2.0 * op.apply_adjoint(mu);
        EXPECT_LE((solve_second_kind(op, 2.0, rhs_adj, true) - mu).norm(), 1e-10 * mu.norm()) << a;
        EXPECT_EQ(solve_second_kind(op, 2.0, Eigen::VectorXd::Zero(op.size())).norm(), 0.0);
    }
}

TEST(SecondKind, RecoversDensityFromTrace)
{
    // interior limit w = -μ/2 + Kμ, so (I - 2K)μ = -2w
    const DiscreteOperator& op = op_for(0.3, 16);
    const Eigen::VectorXd mu = sample(mesh_for(0.3, 16), smooth);
    const Eigen::VectorXd trace = -0.5 * mu + op.apply(mu);
    EXPECT_LE((solve_second_kind(op, 2.0, -2.0 * trace) - mu).norm(), 1e-10 * mu.norm());
}

TEST(SecondKind, ResolventForm)
{
    const double a = 0.25;
    const SurfaceMesh& mesh = mesh_for(a, 16);
    const DiscreteOperator& op = op_for(a, 16);
    const FundamentalSolution fs({3, a});
    const Vec3 pole{0.4, 0.2, -0.1};
    Eigen::VectorXd q(op.size());
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        q(static_cast<Eigen::Index>(k)) = fs.q1(mesh.nodes[k], pole);
    }
    const SecondKindSolver solver(op, 2.0, false);
    const Eigen::VectorXd mu = solver.solve(2.0 * q);
    const Eigen::VectorXd via_resolvent = 2.0 * q + 4.0 * op.apply(solver.solve(q));
    EXPECT_LE((via_resolvent - mu).norm(), 1e-10 * mu.norm());
}

TEST(SecondKind, LambdaTwoIsNotAnEigenvalue)
{
    for (double a : alphas) {
        const double coarse = check_lambda2(op_for(a, 8));
        const double fine = check_lambda2(op_for(a, 16));
        EXPECT_GT(coarse, 1e-3) << a;
        EXPECT_GT(fine, 1e-3) << a;
        EXPECT_LE(std::max(coarse, fine) / std::min(coarse, fine), 2.0) << a;
        EXPECT_GT(SecondKindSolver(op_for(a, 16), 2.0, false).pivot_ratio(), 1e-6);
    }
}

TEST(SecondKind, LambdaMinusTwoIsSingular)
{
    // row sums -1/2 make the constants a null vector of I + 2K
    for (double a : alphas) {
        const DiscreteOperator& op = op_for(a, 8);
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(op.size());
        EXPECT_EQ((ones + 2.0 * op.apply(ones)).norm(), 0.0);
        EXPECT_LT(check_lambda2(op, -2.0), 1e-10) << a;
        EXPECT_THROW(SecondKindSolver(op, -2.0, false), SingularSystemError) << a;
    }
}
