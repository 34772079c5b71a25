#pragma once

// Special functions for the closed-form pieces of the log-singular Levin
// method and its reference values.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace levinq {

using Complex = std::complex<double>;

/// |z| at or below which Gamma(0, z) uses the power series.
inline constexpr double kGammaSeriesSwitch = 4.0;
inline constexpr int kContinuedFractionMaxIter = 10000;

constexpr double euler_gamma() { return 0.57721566490153286060651209008240243; }

template <typename Real>
Real euler_gamma_as()
{
    if constexpr (std::is_floating_point_v<Real>)
        return Real(0.57721566490153286060651209008240243104215933593992L);
    else
        return Real("0.57721566490153286060651209008240243104215933593992359880576723");
}

/// log|z| + i arg z with arg in (-pi, pi].
Complex principal_log(Complex z);

/// Complementary incomplete gamma Gamma(0, z) on the principal branch.
Complex gamma0(Complex z);

/// Ein(z) = gamma + Gamma(0, z) + Log z = -sum_{j>=1} (-z)^j / (j j!).
/// Entire; evaluated without the gamma/Log cancellation near 0.
Complex ein(Complex z);

/// e^{-z} times the E1 continued fraction, modified Lentz. Valid for
/// |arg z| < pi; slow near the negative real axis.
Complex gamma0_continued_fraction(Complex z);

/// Power series route for Gamma(0, z). Only accurate in double for moderate
/// |z|; see gamma0_series_as for extended precision.
Complex gamma0_series(Complex z);

struct SiCi {
    double si;
    double ci;
};

/// Sine and cosine integrals for x > 0.
SiCi sici(double x);

/// Ein(z) in an arbitrary real type, returned as (re, im).
template <typename Real>
std::pair<Real, Real> ein_series_as(const Real& re, const Real& im)
{
    using std::abs;
    using std::sqrt;
    const Real eps = std::numeric_limits<Real>::epsilon();
    const Real modz = sqrt(re * re + im * im);
    // t_j = (-z)^j / j!
    Real tr = Real(1), ti = Real(0);
    Real sr = Real(0), si = Real(0);
    for (int j = 1; j < 100000; ++j) {
        const Real nr = -(tr * re - ti * im) / Real(j);
        const Real ni = -(tr * im + ti * re) / Real(j);
        tr = nr;
        ti = ni;
        const Real ar = tr / Real(j);
        const Real ai = ti / Real(j);
        sr -= ar;
        si -= ai;
        const Real term = sqrt(ar * ar + ai * ai);
        const Real sum = sqrt(sr * sr + si * si);
        if (Real(j) > modz && term <= eps * sum) break;
    }
    return {sr, si};
}

/// Gamma(0, z) by -gamma - Log z + Ein(z) in an arbitrary real type.
template <typename Real>
std::pair<Real, Real> gamma0_series_as(const Real& re, const Real& im)
{
    using std::atan2;
    using std::log;
    if (re == Real(0) && im == Real(0)) throw std::domain_error("gamma0: z = 0");
    auto [er, ei] = ein_series_as<Real>(re, im);
    const Real log_abs = log(re * re + im * im) / Real(2);
    const Real arg = atan2(im, re);
    return {-euler_gamma_as<Real>() - log_abs + er, -arg + ei};
}

}  // namespace levinq
