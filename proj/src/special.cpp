#include "levinq/special.hpp"

#include <numbers>
#include <string>

#include "levinq/errors.hpp"

namespace levinq {

Complex principal_log(Complex z)
{
    if (z == Complex(0.0, 0.0)) throw std::domain_error("principal_log: z = 0");
    double arg = std::atan2(z.imag(), z.real());
    // atan2(-0.0, x<0) gives -pi; the principal branch takes +pi there.
    if (arg == -std::numbers::pi) arg = std::numbers::pi;
    return {std::log(std::abs(z)), arg};
}

Complex gamma0_continued_fraction(Complex z)
{
    if (z == Complex(0.0, 0.0)) throw std::domain_error("gamma0: z = 0");
    constexpr double tiny = 1e-300;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    // E1(z) e^z = 1/(z+1 - 1/(z+3 - 4/(z+5 - ...)))
    Complex b = z + 1.0;
    Complex c = 1.0 / tiny;
    Complex d = 1.0 / b;
    Complex h = d;
    for (int i = 1; i <= kContinuedFractionMaxIter; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const Complex del = c * d;
        h *= del;
        if (std::abs(del - 1.0) <= eps) return h * std::exp(-z);
    }
    throw numeric_failure("gamma0: continued fraction did not converge at z = (" +
                          std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
}

Complex gamma0_series(Complex z)
{
    auto [re, im] = gamma0_series_as<double>(z.real(), z.imag());
    return {re, im};
}

Complex gamma0(Complex z)
{
    if (z == Complex(0.0, 0.0)) throw std::domain_error("gamma0: z = 0");
    if (std::abs(z) <= kGammaSeriesSwitch) return -euler_gamma() - principal_log(z) + ein(z);
    return gamma0_continued_fraction(z);
}

Complex ein(Complex z)
{
    if (std::abs(z) <= kGammaSeriesSwitch) {
        auto [re, im] = ein_series_as<double>(z.real(), z.imag());
        return {re, im};
    }
    return euler_gamma() + gamma0_continued_fraction(z) + principal_log(z);
}

SiCi sici(double x)
{
    if (!(x > 0.0)) throw std::domain_error("sici: x must be positive");
    if (x > kGammaSeriesSwitch) {
        // E1(ix) = -Ci(x) + i (Si(x) - pi/2)
        const Complex e1 = gamma0_continued_fraction(Complex(0.0, x));
        return {std::numbers::pi / 2 + e1.imag(), -e1.real()};
    }

    const double eps = std::numeric_limits<double>::epsilon();
    const double x2 = x * x;
    // Si: sum (-1)^k x^(2k+1) / ((2k+1)(2k+1)!)
    double t = x;  // x^(2k+1)/(2k+1)! with sign
    double si = x;
    for (int k = 1; k < 100; ++k) {
        t *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        const double term = t / (2.0 * k + 1.0);
        si += term;
        if (std::abs(term) <= eps * std::abs(si)) break;
    }
    // Ci: gamma + log x + sum_{k>=1} (-1)^k x^(2k) / (2k (2k)!)
    double u = 1.0;
    double acc = 0.0;
    for (int k = 1; k < 100; ++k) {
        u *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
        const double term = u / (2.0 * k);
        acc += term;
        if (std::abs(term) <= eps * std::abs(acc)) break;
    }
    return {si, euler_gamma() + std::log(x) + acc};
}

}  // namespace levinq
