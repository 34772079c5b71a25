#pragma once

// Dense SVD by one-sided (Hestenes) Jacobi rotations and truncated-SVD
// least squares. Works for real and complex scalars.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "levinq/errors.hpp"

namespace levinq {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultTsvdRelTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 60;

template <typename Scalar>
struct SvdFactorization {
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> u;  // m x k
    Eigen::Matrix<Real, Eigen::Dynamic, 1> sigma;             // k, descending
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> v;  // n x k
};

template <typename Scalar>
struct SolveReport {
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solution;
    Eigen::Index rank_used = 0;
    Real residual_inf{};
    Real sigma_max{};
    Real sigma_min{};
    bool degenerate = false;  // sigma_max == 0, solution forced to zero
};

namespace detail {

template <typename Scalar>
Scalar unit_phase(const Scalar& z)
{
    using std::abs;
    return z / abs(z);
}

template <typename Scalar>
Scalar conj_(const Scalar& z)
{
    return Eigen::numext::conj(z);
}

// Completes column `j` of q to a unit vector orthogonal to every column in
// `fixed` by projecting canonical basis vectors.
template <typename MatQ>
void complete_column(MatQ& q, Eigen::Index j, const std::vector<Eigen::Index>& fixed)
{
    using Scalar = typename MatQ::Scalar;
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    const Eigen::Index m = q.rows();
    for (Eigen::Index k = 0; k < m; ++k) {
        Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(m);
        e(k) = Scalar(1);
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index c : fixed) e -= q.col(c).dot(e) * q.col(c);
        const Real nrm = e.norm();
        if (nrm > Real(0.5)) {
            q.col(j) = e / nrm;
            return;
        }
    }
}

// One-sided Jacobi on a tall matrix (rows >= cols).
template <typename Scalar>
SvdFactorization<Scalar> jacobi_svd_tall(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a)
{
    using std::abs;
    using std::hypot;
    using std::sqrt;
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    Mat g = a;
    Mat v = Mat::Identity(n, n);
    const Real tol = std::numeric_limits<Real>::epsilon() * Real(m);

    bool converged = false;
    for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (Eigen::Index i = 0; i + 1 < n; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const Real alpha = g.col(i).squaredNorm();
                const Real beta = g.col(j).squaredNorm();
                const Scalar gamma = g.col(i).dot(g.col(j));
                const Real agam = abs(gamma);
                if (agam == Real(0) || agam <= tol * sqrt(alpha) * sqrt(beta)) continue;
                converged = false;

                const Real zeta = (beta - alpha) / (Real(2) * agam);
                const Real t = (zeta >= Real(0) ? Real(1) : Real(-1)) / (abs(zeta) + hypot(Real(1), zeta));
                const Real c = Real(1) / hypot(Real(1), t);
                const Real s = c * t;
                const Scalar ph = unit_phase(gamma);
                const Scalar s_ph = s * ph;
                const Scalar s_conj_ph = s * conj_(ph);

                for (Eigen::Index r = 0; r < m; ++r) {
                    const Scalar gi = g(r, i);
                    const Scalar gj = g(r, j);
                    g(r, i) = c * gi - s_conj_ph * gj;
                    g(r, j) = s_ph * gi + c * gj;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const Scalar vi = v(r, i);
                    const Scalar vj = v(r, j);
                    v(r, i) = c * vi - s_conj_ph * vj;
                    v(r, j) = s_ph * vi + c * vj;
                }
            }
        }
    }
    if (!converged)
        throw numeric_failure("svd: one-sided Jacobi did not converge within " +
                              std::to_string(kJacobiMaxSweeps) + " sweeps for a " +
                              std::to_string(m) + "x" + std::to_string(n) + " matrix");

    Eigen::Matrix<Real, Eigen::Dynamic, 1> norms(n);
    for (Eigen::Index j = 0; j < n; ++j) norms(j) = g.col(j).norm();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return norms(x) > norms(y); });

    SvdFactorization<Scalar> out;
    out.sigma.resize(n);
    out.u.resize(m, n);
    out.v.resize(n, n);
    std::vector<Eigen::Index> fixed;
    std::vector<Eigen::Index> null_cols;
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[k];
        out.sigma(k) = norms(src);
        out.v.col(k) = v.col(src);
        if (norms(src) > std::numeric_limits<Real>::min()) {
            out.u.col(k) = g.col(src) / norms(src);
            fixed.push_back(k);
        } else {
            out.sigma(k) = Real(0);
            null_cols.push_back(k);
        }
    }
    for (Eigen::Index k : null_cols) {
        complete_column(out.u, k, fixed);
        fixed.push_back(k);
    }
    return out;
}

}  // namespace detail

/// Thin SVD A = U diag(sigma) V^*, sigma descending, k = min(rows, cols).
template <typename Derived>
SvdFactorization<typename Derived::Scalar> svd(const Eigen::MatrixBase<Derived>& a)
{
    using Scalar = typename Derived::Scalar;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (a.rows() == 0 || a.cols() == 0)
        throw std::invalid_argument("svd: empty matrix");
    if (!a.allFinite())
        throw std::invalid_argument("svd: matrix has non-finite entries");

    if (a.rows() >= a.cols()) return detail::jacobi_svd_tall<Scalar>(Mat(a));
    auto f = detail::jacobi_svd_tall<Scalar>(Mat(a.adjoint()));
    std::swap(f.u, f.v);
    return f;
}

/// Minimal-norm least-squares solver over the singular triplets with
/// sigma_i > rel_tol * sigma_0. Factorizes once; solve() may be called for
/// any number of right-hand sides with the same truncation.
template <typename Scalar>
class TruncatedSvdSolver {
public:
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    explicit TruncatedSvdSolver(Mat a, Real rel_tol = Real(kDefaultTsvdRelTol))
        : a_(std::move(a)), rel_tol_(rel_tol)
    {
        if (!(rel_tol_ > Real(0) && rel_tol_ < Real(1)))
            throw std::invalid_argument("tsvd: rel_tol must lie in (0, 1)");
        f_ = svd(a_);
        const Real cutoff = rel_tol_ * f_.sigma(0);
        rank_ = 0;
        if (f_.sigma(0) > Real(0))
            while (rank_ < f_.sigma.size() && f_.sigma(rank_) > cutoff) ++rank_;
    }

    SolveReport<Scalar> solve(const Vec& b) const
    {
        if (b.size() != a_.rows())
            throw std::invalid_argument("tsvd: right-hand side has length " + std::to_string(b.size()) +
                                        ", matrix has " + std::to_string(a_.rows()) + " rows");
        SolveReport<Scalar> rep;
        rep.sigma_max = f_.sigma(0);
        rep.sigma_min = f_.sigma(f_.sigma.size() - 1);
        rep.rank_used = rank_;
        rep.degenerate = rank_ == 0;
        if (rank_ == 0) {
            rep.solution = Vec::Zero(a_.cols());
        } else {
            Vec coeff = f_.u.leftCols(rank_).adjoint() * b;
            coeff.array() /= f_.sigma.head(rank_).array().template cast<Scalar>();
            rep.solution = f_.v.leftCols(rank_) * coeff;
        }
        rep.residual_inf = (a_ * rep.solution - b).cwiseAbs().maxCoeff();
        return rep;
    }

    Eigen::Index rank() const { return rank_; }
    Real rel_tol() const { return rel_tol_; }
    const SvdFactorization<Scalar>& factorization() const { return f_; }
    const Mat& matrix() const { return a_; }

private:
    Mat a_;
    Real rel_tol_;
    SvdFactorization<Scalar> f_;
    Eigen::Index rank_ = 0;
};

template <typename Derived, typename RhsDerived>
SolveReport<typename Derived::Scalar> tsvd_solve(
    const Eigen::MatrixBase<Derived>& a, const Eigen::MatrixBase<RhsDerived>& b,
    typename Eigen::NumTraits<typename Derived::Scalar>::Real rel_tol = kDefaultTsvdRelTol)
{
    using Scalar = typename Derived::Scalar;
    if (b.size() != a.rows())
        throw std::invalid_argument("tsvd: right-hand side has length " + std::to_string(b.size()) +
                                    ", matrix has " + std::to_string(a.rows()) + " rows");
    TruncatedSvdSolver<Scalar> solver(a.eval(), rel_tol);
    return solver.solve(b.template cast<Scalar>().eval());
}

}  // namespace levinq
