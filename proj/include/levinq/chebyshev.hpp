#pragma once

// Collocation point sets and spectral differentiation on them.
//
// Lobatto nodes are stored ascending, x_j = -cos(j*pi/(n-1)), so that after
// mapping onto [0, a] the first node is the singular endpoint 0 and the last
// node is a.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace levinq {

template <typename Real>
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <typename Real>
using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real = double>
struct ChebyshevGrid {
    Eigen::Index n = 0;
    Vector<Real> nodes;  // ascending in [-1, 1]
    Matrix<Real> diff;   // first-derivative matrix on `nodes`
};

template <typename Real = double>
struct MappedGrid {
    ChebyshevGrid<Real> base;
    Real a{};
    Vector<Real> mapped;  // phi(nodes) = a/2 * x + a/2
};

/// Barycentric weights 1 / prod_{k != j} (x_j - x_k) for arbitrary distinct
/// nodes. Only ratios are used, so the common scale is irrelevant.
template <typename Real>
Vector<Real> barycentric_weights(const Vector<Real>& x)
{
    const Eigen::Index n = x.size();
    Vector<Real> w(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Real prod(1);
        for (Eigen::Index k = 0; k < n; ++k)
            if (k != j) prod *= (x(j) - x(k));
        w(j) = Real(1) / prod;
    }
    return w;
}

/// Lagrange differentiation matrix on arbitrary distinct nodes, diagonal by
/// the negative-sum trick.
template <typename Real>
Matrix<Real> differentiation_matrix(const Vector<Real>& x)
{
    const Eigen::Index n = x.size();
    if (n < 2)
        throw std::invalid_argument("differentiation_matrix: need at least 2 nodes");
    const Vector<Real> w = barycentric_weights(x);
    Matrix<Real> d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Real row_sum(0);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            d(i, j) = (w(j) / w(i)) / (x(i) - x(j));
            row_sum += d(i, j);
        }
        d(i, i) = -row_sum;
    }
    return d;
}

/// Evaluates the interpolating polynomial through (x_j, values_j) at t using
/// the second barycentric form. Exact at the nodes.
template <typename Real, typename Values>
auto barycentric_eval(const Vector<Real>& x, const Vector<Real>& weights,
                      const Values& values, Real t)
{
    using Scalar = typename Values::Scalar;
    Scalar num(0);
    Real den(0);
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        if (t == x(j)) return Scalar(values(j));
        const Real c = weights(j) / (t - x(j));
        num += c * values(j);
        den += c;
    }
    return Scalar(num / den);
}

/// Chebyshev-Lobatto nodes on [-1, 1] (ascending) with the spectral
/// differentiation matrix.
template <typename Real = double>
ChebyshevGrid<Real> lobatto_grid(Eigen::Index n)
{
    using std::sin;
    if (n < 2)
        throw std::invalid_argument("lobatto_grid: n must be >= 2, got " + std::to_string(n));

    const Eigen::Index m = n - 1;
    const Real pi = std::numbers::pi_v<Real>;
    ChebyshevGrid<Real> g;
    g.n = n;
    g.nodes.resize(n);
    // -cos(j*pi/m) written as a sine so the set is exactly symmetric about 0.
    for (Eigen::Index j = 0; j < n; ++j)
        g.nodes(j) = sin(pi * Real(2 * j - m) / Real(2 * m));
    g.nodes(0) = Real(-1);
    g.nodes(m) = Real(1);

    // Off-diagonal entries (c_i/c_j) (-1)^(i+j) / (x_i - x_j) with the node
    // differences from the product-to-sum identity.
    g.diff.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Real ci = (i == 0 || i == m) ? Real(2) : Real(1);
        Real row_sum(0);
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const Real cj = (j == 0 || j == m) ? Real(2) : Real(1);
            const Real dx = Real(2) * sin(pi * Real(i + j) / Real(2 * m)) *
                            sin(pi * Real(i - j) / Real(2 * m));
            const Real sign = ((i + j) % 2 == 0) ? Real(1) : Real(-1);
            g.diff(i, j) = (ci / cj) * sign / dx;
            row_sum += g.diff(i, j);
        }
        g.diff(i, i) = -row_sum;
    }
    return g;
}

/// Modified Chebyshev-Gauss-Radau points t_j = (1 + cos(2 pi j / (2n - 1))) / 2
/// in (0, 1], decreasing in j, excluding 0.
template <typename Real = double>
Vector<Real> radau_grid(Eigen::Index n)
{
    using std::cos;
    if (n < 2)
        throw std::invalid_argument("radau_grid: n must be >= 2, got " + std::to_string(n));
    const Real pi = std::numbers::pi_v<Real>;
    Vector<Real> t(n);
    for (Eigen::Index j = 0; j < n; ++j)
        t(j) = (Real(1) + cos(Real(2) * pi * Real(j) / Real(2 * n - 1))) / Real(2);
    t(0) = Real(1);
    return t;
}

template <typename Real>
MappedGrid<Real> map_grid(const ChebyshevGrid<Real>& grid, Real a)
{
    if (!(a > Real(0)))
        throw std::invalid_argument("map_grid: interval length must be positive");
    MappedGrid<Real> out;
    out.base = grid;
    out.a = a;
    out.mapped = (a / Real(2)) * grid.nodes.array() + a / Real(2);
    out.mapped(0) = Real(0);
    out.mapped(grid.n - 1) = a;
    return out;
}

}  // namespace levinq
