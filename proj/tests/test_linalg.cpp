#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/LU>
#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "levinq/linalg.hpp"

using levinq::ComplexMatrix;
using levinq::ComplexVector;
using levinq::svd;
using levinq::tsvd_solve;
using cd = std::complex<double>;

namespace {

ComplexMatrix random_complex(Eigen::Index m, Eigen::Index n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    ComplexMatrix a(m, n);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cd(nd(rng), nd(rng));
    return a;
}

template <typename Scalar>
void check_factorization(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a)
{
    const auto f = svd(a);
    const Eigen::Index k = std::min(a.rows(), a.cols());
    ASSERT_EQ(f.sigma.size(), k);
    ASSERT_EQ(f.u.rows(), a.rows());
    ASSERT_EQ(f.u.cols(), k);
    ASSERT_EQ(f.v.rows(), a.cols());
    ASSERT_EQ(f.v.cols(), k);
    for (Eigen::Index i = 0; i < k; ++i) {
        EXPECT_GE(f.sigma(i), 0.0);
        if (i > 0) EXPECT_LE(f.sigma(i), f.sigma(i - 1));
    }
    const auto recon = f.u * f.sigma.template cast<Scalar>().asDiagonal() * f.v.adjoint();
    const double tol = 1e-12 * f.sigma(0) * std::max(a.rows(), a.cols());
    EXPECT_LE((recon - a).cwiseAbs().maxCoeff(), tol);
    const auto eye = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(k, k);
    EXPECT_LE((f.u.adjoint() * f.u - eye).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((f.v.adjoint() * f.v - eye).cwiseAbs().maxCoeff(), 1e-12);
}

}  // namespace

TEST(Svd, Identity)
{
    const auto f = svd(ComplexMatrix::Identity(3, 3));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(f.sigma(i), 1.0, 1e-15);
}

TEST(Svd, RealDiagonalWithZero)
{
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(0, 0) = 3.0;
    const auto f = svd(a);
    EXPECT_NEAR(f.sigma(0), 3.0, 1e-15);
    EXPECT_EQ(f.sigma(1), 0.0);
    check_factorization<double>(a);
}

TEST(Svd, MatchesRealEmbedding)
{
    const ComplexMatrix a = random_complex(8, 8, 11);
    Eigen::MatrixXd e(16, 16);
    e << a.real(), -a.imag(), a.imag(), a.real();
    const Eigen::VectorXd ref = Eigen::JacobiSVD<Eigen::MatrixXd>(e).singularValues();
    const auto f = svd(a);
    for (int i = 0; i < 8; ++i) {
        EXPECT_NEAR(f.sigma(i), ref(2 * i), 1e-12 * ref(0));
        EXPECT_NEAR(f.sigma(i), ref(2 * i + 1), 1e-12 * ref(0));
    }
}

TEST(Svd, FactorizationInvariants)
{
    unsigned seed = 100;
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {5, 5}, {9, 4}, {4, 9}, {33, 33}, {64, 64}})
        check_factorization<cd>(random_complex(m, n, seed++));

    // Rank-deficient: outer product plus an exactly repeated column.
    ComplexMatrix r = random_complex(10, 1, 7) * random_complex(1, 6, 8);
    check_factorization<cd>(r);
    const auto f = svd(r);
    EXPECT_LE(f.sigma(1), 1e-13 * f.sigma(0));
}

TEST(Svd, Deterministic)
{
    const ComplexMatrix a = random_complex(12, 12, 3);
    const auto f1 = svd(a);
    const auto f2 = svd(a);
    EXPECT_EQ(f1.sigma, f2.sigma);
    EXPECT_EQ(f1.u, f2.u);
    EXPECT_EQ(f1.v, f2.v);
}

TEST(Svd, RejectsNonFinite)
{
    ComplexMatrix a = ComplexMatrix::Identity(3, 3);
    a(1, 2) = cd(std::numeric_limits<double>::quiet_NaN(), 0.0);
    EXPECT_THROW(svd(a), std::invalid_argument);
    a(1, 2) = cd(0.0, std::numeric_limits<double>::infinity());
    EXPECT_THROW(svd(a), std::invalid_argument);
}

TEST(Tsvd, IdentityExample)
{
    ComplexVector b(2);
    b << cd(1, 1), cd(2, 0);
    const auto r = tsvd_solve(ComplexMatrix::Identity(2, 2), b);
    EXPECT_EQ(r.rank_used, 2);
    EXPECT_LE((r.solution - b).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Tsvd, MinimalNormTruncation)
{
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    ComplexVector b(2);
    b << 1.0, 5.0;
    const auto r = tsvd_solve(a, b, 1e-13);
    EXPECT_EQ(r.rank_used, 1);
    EXPECT_NEAR(std::abs(r.solution(0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(r.solution(1)), 0.0, 1e-15);
    EXPECT_NEAR(r.residual_inf, 5.0, 1e-15);
}

TEST(Tsvd, MatchesEliminationOracle)
{
    for (unsigned seed = 1; seed <= 20; ++seed) {
        ComplexMatrix a = random_complex(6, 6, seed);
        a += 4.0 * ComplexMatrix::Identity(6, 6);
        const ComplexVector b = random_complex(6, 1, seed + 1000);
        const ComplexVector ref = Eigen::PartialPivLU<ComplexMatrix>(a).solve(b);
        const auto r = tsvd_solve(a, b, 1e-13);
        EXPECT_EQ(r.rank_used, 6);
        EXPECT_LE((r.solution - ref).norm(), 1e-11 * ref.norm()) << "seed " << seed;
    }
}

TEST(Tsvd, FullRankAgreesWithDirectSolve)
{
    for (int n : {3, 10, 24}) {
        const ComplexMatrix a = random_complex(n, n, 500 + n);
        const auto f = svd(a);
        ASSERT_GT(f.sigma(n - 1) / f.sigma(0), 1e6 * 1e-13);
        const ComplexVector b = random_complex(n, 1, 900 + n);
        const ComplexVector ref = Eigen::PartialPivLU<ComplexMatrix>(a).solve(b);
        const auto r = tsvd_solve(a, b, 1e-13);
        EXPECT_LE((r.solution - ref).norm(), 1e-10 * ref.norm());
    }
}

TEST(Tsvd, RankMonotoneInTolerance)
{
    // Graded spectrum so that truncation bites at several thresholds.
    const ComplexMatrix q1 = Eigen::HouseholderQR<ComplexMatrix>(random_complex(12, 12, 41)).householderQ();
    const ComplexMatrix q2 = Eigen::HouseholderQR<ComplexMatrix>(random_complex(12, 12, 42)).householderQ();
    Eigen::VectorXd s(12);
    for (int i = 0; i < 12; ++i) s(i) = std::pow(10.0, -1.5 * i);
    const ComplexMatrix a = q1 * s.cast<cd>().asDiagonal() * q2.adjoint();
    const ComplexVector b = random_complex(12, 1, 43);
    Eigen::Index prev = 13;
    for (double tol : {1e-16, 1e-14, 1e-12, 1e-9, 1e-6, 1e-3, 0.5}) {
        const auto r = tsvd_solve(a, b, tol);
        EXPECT_LE(r.rank_used, prev) << "tol " << tol;
        prev = r.rank_used;
    }
    EXPECT_EQ(tsvd_solve(a, b, 1e-2).rank_used, 2);
}

TEST(Tsvd, LocalLeastSquaresOptimality)
{
    for (unsigned seed = 0; seed < 10; ++seed) {
        const ComplexMatrix a = random_complex(9, 6, 70 + seed);
        const ComplexVector b = random_complex(9, 1, 170 + seed);
        const auto r = tsvd_solve(a, b, 1e-13);
        const double base = (a * r.solution - b).norm();
        for (int j = 0; j < 6; ++j) {
            for (cd d : {cd(1e-6, 0), cd(-1e-6, 0), cd(0, 1e-6), cd(0, -1e-6)}) {
                ComplexVector x = r.solution;
                x(j) += d;
                EXPECT_GE((a * x - b).norm(), base - 1e-12);
            }
        }
    }
}

TEST(Tsvd, SolverReusesFactorization)
{
    const ComplexMatrix a = random_complex(7, 7, 5);
    levinq::TruncatedSvdSolver<cd> solver(a, 1e-13);
    const ComplexVector b1 = random_complex(7, 1, 6), b2 = random_complex(7, 1, 8);
    const auto r12 = solver.solve(b1 + cd(2, -1) * b2);
    const auto r1 = solver.solve(b1), r2 = solver.solve(b2);
    EXPECT_LE((r12.solution - (r1.solution + cd(2, -1) * r2.solution)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Tsvd, DimensionMismatch)
{
    EXPECT_THROW(tsvd_solve(ComplexMatrix::Identity(3, 3), ComplexVector::Ones(2)), std::invalid_argument);
}

TEST(Tsvd, ZeroMatrixIsDegenerate)
{
    const auto r = tsvd_solve(ComplexMatrix::Zero(4, 4), ComplexVector::Ones(4));
    EXPECT_EQ(r.rank_used, 0);
    EXPECT_TRUE(r.degenerate);
    EXPECT_EQ(r.solution.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(r.residual_inf, 1.0);
}

TEST(Tsvd, RejectsBadTolerance)
{
    EXPECT_THROW(tsvd_solve(ComplexMatrix::Identity(2, 2), ComplexVector::Ones(2), 0.0), std::invalid_argument);
    EXPECT_THROW(tsvd_solve(ComplexMatrix::Identity(2, 2), ComplexVector::Ones(2), 1.0), std::invalid_argument);
}
