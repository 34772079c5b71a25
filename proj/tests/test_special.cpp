#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "levinq/special.hpp"

using levinq::Complex;
using levinq::euler_gamma;
using levinq::gamma0;
using levinq::sici;
using Big = boost::multiprecision::cpp_bin_float_100;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// Si and Ci by their power series in 100-digit arithmetic.
std::pair<double, double> sici_big(double xd)
{
    const Big x = xd, x2 = x * x;
    const Big eps = std::numeric_limits<Big>::epsilon();
    Big t = x, si = x;
    for (int k = 1; k < 2000; ++k) {
        t *= -x2 / Big((2 * k) * (2 * k + 1));
        const Big term = t / (2 * k + 1);
        si += term;
        if (k > xd && abs(term) < eps) break;
    }
    Big u = 1, acc = 0;
    for (int k = 1; k < 2000; ++k) {
        u *= -x2 / Big((2 * k - 1) * (2 * k));
        const Big term = u / (2 * k);
        acc += term;
        if (k > xd && abs(term) < eps) break;
    }
    const Big ci = levinq::euler_gamma_as<Big>() + log(x) + acc;
    return {si.convert_to<double>(), ci.convert_to<double>()};
}

// Large-x auxiliary functions f, g to O(x^-9).
std::pair<double, double> sici_asymptotic(double x)
{
    const double y = 1.0 / (x * x);
    const double f = (1.0 - 2.0 * y + 24.0 * y * y - 720.0 * y * y * y) / x;
    const double g = y * (1.0 - 6.0 * y + 120.0 * y * y - 5040.0 * y * y * y);
    return {std::numbers::pi / 2 - f * std::cos(x) - g * std::sin(x), f * std::sin(x) - g * std::cos(x)};
}

}  // namespace

TEST(PrincipalLog, Examples)
{
    EXPECT_EQ(levinq::principal_log(Complex(1, 0)), Complex(0, 0));
    const Complex l = levinq::principal_log(Complex(0, -1));
    EXPECT_NEAR(l.real(), 0.0, 1e-16);
    EXPECT_NEAR(l.imag(), -std::numbers::pi / 2, 1e-16);
    const Complex m = levinq::principal_log(Complex(-1, 0));
    EXPECT_NEAR(m.imag(), std::numbers::pi, 1e-16);
    const Complex mz = levinq::principal_log(Complex(-1, -0.0));
    EXPECT_NEAR(mz.imag(), std::numbers::pi, 1e-16);
    EXPECT_THROW(levinq::principal_log(Complex(0, 0)), std::domain_error);
}

TEST(EulerGamma, Value)
{
    EXPECT_EQ(euler_gamma(), 0.5772156649015329);
    EXPECT_NEAR(euler_gamma(), 0.57721566490153286060651, 1e-17);
}

TEST(Gamma0, AtOne)
{
    const Complex v = gamma0(Complex(1, 0));
    EXPECT_NEAR(v.real(), 0.219383934395520, 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-16);
    const auto [br, bi] = levinq::gamma0_series_as<Big>(Big(1), Big(0));
    EXPECT_NEAR(v.real(), br.convert_to<double>(), 4e-16);
}

TEST(Gamma0, SmallArgumentBound)
{
    for (Complex z : {Complex(1e-8, 0), Complex(0, 1e-3), Complex(-0.5, 0.5), Complex(0, -1), Complex(0.3, -0.9)}) {
        const Complex lead = -euler_gamma() - levinq::principal_log(z);
        EXPECT_LE(std::abs(gamma0(z) - lead), std::exp(std::abs(z)) - 1.0 + 1e-15);
    }
    const Complex v = gamma0(Complex(1e-8, 0));
    EXPECT_NEAR(v.real(), -euler_gamma() - std::log(1e-8), 1e-7);
}

TEST(Gamma0, LogLimitAtZero)
{
    const Complex z(1e-10, 0.0);
    EXPECT_NEAR((gamma0(z) + levinq::principal_log(z)).real(), -euler_gamma(), 1e-9);
}

TEST(Gamma0, ConjugateSymmetryOnImaginaryAxis)
{
    for (double w : {1.0, -1.0, 10.0, -10.0, 1e3, -1e3}) {
        const Complex z(0.0, -w);
        const Complex a = gamma0(std::conj(z));
        const Complex b = std::conj(gamma0(z));
        EXPECT_LE(std::abs(a - b), 1e-15 * std::abs(b)) << "w = " << w;
    }
}

TEST(Gamma0, MinusTenI)
{
    const Complex cf = gamma0(Complex(0, -10));
    const auto [br, bi] = levinq::gamma0_series_as<Big>(Big(0), Big(-10));
    const Complex ref(br.convert_to<double>(), bi.convert_to<double>());
    EXPECT_LE(std::abs(cf - ref), 1e-10);
    EXPECT_LE(std::abs(levinq::gamma0_series(Complex(0, -10)) - cf), 1e-10);
}

TEST(Gamma0, SeriesAgreesWithContinuedFractionOnAnnulus)
{
    const double pi = std::numbers::pi;
    for (double r : {5.0, 8.0, 12.0, 20.0, 30.0}) {
        for (double arg : {pi / 2, -pi / 2, 0.0, pi / 4, -pi / 4}) {
            const Complex z = std::polar(r, arg);
            const Complex cf = levinq::gamma0_continued_fraction(z);
            const auto [br, bi] = levinq::gamma0_series_as<Big>(Big(z.real()), Big(z.imag()));
            const Complex ser(br.convert_to<double>(), bi.convert_to<double>());
            EXPECT_LE(rel(cf, ser), 1e-11) << "r = " << r << ", arg = " << arg;
        }
    }
}

TEST(Gamma0, DerivativeIdentity)
{
    for (Complex z : {Complex(2, 0), Complex(0, 2), Complex(0, -3)}) {
        const double h = 1e-6 * std::abs(z);
        const Complex fd = (gamma0(z + h) - gamma0(z - h)) / (2.0 * h);
        const Complex exact = -std::exp(-z) / z;
        EXPECT_LE(rel(fd, exact), 1e-6) << z;
    }
}

TEST(Gamma0, Errors)
{
    EXPECT_THROW(gamma0(Complex(0, 0)), std::domain_error);
}

TEST(Ein, MatchesExtendedSeries)
{
    for (Complex z : {Complex(0, -1), Complex(0, -7), Complex(-1, -100), Complex(-2, -2e5), Complex(0.5, 3),
                      Complex(-1e-6, 1e-6)}) {
        const auto [er, ei] = levinq::ein_series_as<Big>(Big(z.real()), Big(z.imag()));
        const Complex ref(er.convert_to<double>(), ei.convert_to<double>());
        EXPECT_LE(std::abs(levinq::ein(z) - ref), 1e-13 * std::max(1.0, std::abs(ref))) << z;
    }
}

TEST(Ein, DefinitionIdentity)
{
    for (Complex z : {Complex(0, -5), Complex(-1, -10), Complex(3, 3)}) {
        const Complex via = euler_gamma() + gamma0(z) + levinq::principal_log(z);
        EXPECT_LE(std::abs(levinq::ein(z) - via), 1e-13 * std::abs(via));
    }
}

TEST(SiCi, TinyArgument)
{
    const auto s = sici(1e-12);
    EXPECT_LE(s.si, 2e-12);
    EXPECT_GT(s.si, 0.0);
}

TEST(SiCi, AtTen)
{
    const auto s = sici(10.0);
    EXPECT_NEAR(s.si, 1.6583475942, 1e-10);
    // Published tables give Ci(10) = -0.045456433004455; the extended series agrees.
    EXPECT_NEAR(s.ci, -0.0454564330044554, 1e-13);
    EXPECT_NEAR(s.ci, sici_big(10.0).second, 1e-13);
}

TEST(SiCi, AtHundred)
{
    EXPECT_NEAR(sici(100.0).si, std::numbers::pi / 2, 0.01);
}

TEST(SiCi, CosineIntegralDefinitionAtOne)
{
    // int_0^1 (cos t - 1)/t dt by its series.
    double acc = 0.0, u = 1.0;
    for (int k = 1; k < 20; ++k) {
        u *= -1.0 / ((2.0 * k - 1.0) * (2.0 * k));
        acc += u / (2.0 * k);
    }
    EXPECT_NEAR(sici(1.0).ci - std::log(1.0) - acc, euler_gamma(), 1e-15);
}

TEST(SiCi, AbsoluteAccuracy)
{
    for (double x : {0.01, 0.5, 1.0, 3.9, 4.0, 4.1, 7.5, 16.0, 33.3, 64.0, 100.0}) {
        const auto s = sici(x);
        const auto [si, ci] = sici_big(x);
        EXPECT_NEAR(s.si, si, 1e-12) << "x = " << x;
        EXPECT_NEAR(s.ci, ci, 1e-12) << "x = " << x;
    }
    for (double x : {1e3, 12345.6, 1e5, 1e6}) {
        const auto s = sici(x);
        const auto [si, ci] = sici_asymptotic(x);
        EXPECT_NEAR(s.si, si, 1e-12) << "x = " << x;
        EXPECT_NEAR(s.ci, ci, 1e-12) << "x = " << x;
    }
}

TEST(SiCi, Errors)
{
    EXPECT_THROW(sici(0.0), std::domain_error);
    EXPECT_THROW(sici(-1.0), std::domain_error);
}
