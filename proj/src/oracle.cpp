#include "levinq/oracle.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "levinq/errors.hpp"
#include "levinq/special.hpp"

namespace levinq {

namespace {

constexpr Complex kI{0.0, 1.0};

struct GaussRule {
    std::vector<double> x;  // on [-1, 1]
    std::vector<double> w;
};

GaussRule gauss_legendre(int m)
{
    GaussRule r;
    r.x.resize(m);
    r.w.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= m; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = m * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        // Recompute the derivative at the converged root for the weight.
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= m; ++k) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
        }
        dp = m * (z * p0 - p1) / (z * z - 1.0);
        r.x[i] = -z;
        r.x[m - 1 - i] = z;
        r.w[i] = r.w[m - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return r;
}

constexpr std::array<int, 6> kLevels{8, 16, 32, 64, 128, 256};

const std::array<GaussRule, kLevels.size()>& rules()
{
    static const auto table = [] {
        std::array<GaussRule, kLevels.size()> t;
        for (std::size_t i = 0; i < kLevels.size(); ++i) t[i] = gauss_legendre(kLevels[i]);
        return t;
    }();
    return table;
}

struct Panel {
    double lo, hi;
};

}  // namespace

const char* to_string(ReferenceSource s)
{
    switch (s) {
    case ReferenceSource::closed_form: return "closed_form";
    case ReferenceSource::adaptive: return "adaptive";
    case ReferenceSource::high_n_levin: return "high_n_levin";
    }
    return "?";
}

ReferenceValue closed_form(std::string_view problem_id, double w)
{
    if (!std::isfinite(w)) throw std::invalid_argument("closed_form: w must be finite");
    if (w == 0.0) throw std::domain_error("closed_form: w = 0");

    ReferenceValue rv;
    rv.source = ReferenceSource::closed_form;
    if (problem_id == "log_unit") {
        const double aw = std::abs(w);
        const SiCi s = sici(aw);
        Complex v(-s.si / aw, -(euler_gamma() - s.ci + std::log(aw)) / aw);
        rv.value = w > 0 ? v : std::conj(v);
        return rv;
    }
    const Complex pre = -kI / (-kI + w);
    if (problem_id == "exp_log_linear") {
        rv.value = pre * ein(Complex(-1.0, -w));
        return rv;
    }
    if (problem_id == "exp_log_nonlinear") {
        const double ln2 = std::numbers::ln2;
        const Complex singular_part =
            pre * (ein(Complex(-2.0, -2.0 * w)) - ln2 + std::exp(Complex(2.0, 2.0 * w)) * ln2);
        const ComplexFunction companion = [](double x) {
            return Complex((2.0 * x + 1.0) * std::exp(x * x + x) * std::log1p(x), 0.0);
        };
        const Oscillator osc{[](double x) { return x * x + x; }, [](double x) { return 2.0 * x + 1.0; },
                             "x^2+x"};
        const Complex c32 = levin_classic(companion, osc, 1.0, w, 32).value;
        const Complex c40 = levin_classic(companion, osc, 1.0, w, 40).value;
        rv.value = singular_part - c32;
        rv.est_error = std::abs(c40 - c32);
        return rv;
    }
    throw std::invalid_argument("closed_form: unknown problem id '" + std::string(problem_id) + "'");
}

ComplexVector log_monomial_moments(int kmax, double w)
{
    if (kmax < 0) throw std::invalid_argument("log_monomial_moments: kmax must be >= 0");
    if (std::abs(w) < 1.0) throw std::invalid_argument("log_monomial_moments: need |w| >= 1");
    ComplexVector m(kmax + 1);
    const Complex iw = kI * w;
    const Complex e = std::exp(iw);
    m(0) = closed_form("log_unit", w).value;
    Complex j_prev = (e - 1.0) / iw;  // J_0 = int x^0 e^{iwx}
    for (int k = 1; k <= kmax; ++k) {
        m(k) = -(static_cast<double>(k) * m(k - 1) + j_prev) / iw;
        j_prev = (e - static_cast<double>(k) * j_prev) / iw;
    }
    return m;
}

Complex chebyshev_log_moment(int m, double w)
{
    if (m < 0) throw std::invalid_argument("chebyshev_log_moment: m must be >= 0");
    // Monomial coefficients of T_m by T_{k+1} = 2x T_k - T_{k-1}.
    std::vector<double> tkm1(m + 2, 0.0), tk(m + 2, 0.0);
    tkm1[0] = 1.0;
    if (m > 0) tk[1] = 1.0;
    const std::vector<double>* coeff = &tkm1;
    for (int k = 1; k < m; ++k) {
        std::vector<double> next(m + 2, 0.0);
        for (int i = 0; i <= k; ++i) next[i + 1] += 2.0 * tk[i];
        for (int i = 0; i <= k; ++i) next[i] -= tkm1[i];
        tkm1 = tk;
        tk = next;
    }
    if (m > 0) coeff = &tk;

    const ComplexVector mp = log_monomial_moments(m, w);
    const ComplexVector mn = log_monomial_moments(m, -w);
    Complex sum = 0.0;
    for (int k = 0; k <= m; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += (*coeff)[k] * (mp(k) + sign * mn(k));
    }
    return 2.0 * sum;
}

ReferenceValue adaptive_reference(const IntegralProblem& p, double tol, double cut)
{
    if (!p.f || !p.osc.g || !p.osc.gprime) throw std::invalid_argument("adaptive_reference: incomplete problem");
    if (!(p.a > 0.0)) throw std::invalid_argument("adaptive_reference: a must be positive");
    if (!(tol >= 1e-13)) throw std::invalid_argument("adaptive_reference: tol must be >= 1e-13");
    if (!(std::abs(p.w) <= kOracleMaxFrequency))
        throw std::invalid_argument("adaptive_reference: |w| = " + std::to_string(std::abs(p.w)) +
                                    " exceeds the oracle limit of 1e4");
    if (!(cut > 0.0)) throw std::invalid_argument("adaptive_reference: cut must be positive");

    const double a = p.a;
    const double w = p.w;
    const double xc = std::min(cut, a / 2.0);

    double gmax = 0.0;
    double fscale = 0.0;
    constexpr int kProbe = 512;
    for (int k = 0; k <= kProbe; ++k) {
        const double x = a * k / kProbe;
        gmax = std::max(gmax, std::abs(p.osc.gprime(x)));
        if (x > 0.0) fscale = std::max(fscale, std::abs(p.f(x)));
    }
    gmax *= 1.25;
    fscale = std::max(fscale, 1.0);
    const double aw = std::abs(w);

    // (0, xc]: x = e^{-t}, t in [t0, tmax]; dx = -e^{-t} dt.
    const double t0 = -std::log(xc);
    double tmax = std::max(35.0, std::log(1.0 / tol) + 5.0);
    // The tail bound is pushed well below tol; each extra unit of t costs one panel.
    const double tail_target = std::min(tol / 10.0, 1e-18);
    while (fscale * (tmax + 1.0) * std::exp(-tmax) >= tail_target && tmax < 700.0) tmax += 1.0;
    if (tmax <= t0) tmax = t0 + 35.0;

    auto near_integrand = [&](double t) -> Complex {
        const double x = std::exp(-t);
        const Complex v = p.f(x) * std::exp(kI * (w * p.osc.g(x))) * x;
        return p.singular ? v * (-t) : v;
    };
    auto far_integrand = [&](double x) -> Complex {
        const Complex v = p.f(x) * std::exp(kI * (w * p.osc.g(x)));
        return p.singular ? v * std::log(x) : v;
    };

    constexpr std::size_t kMaxPanels = 20'000'000;
    std::vector<Panel> near_panels;
    for (double t = t0; t < tmax;) {
        // local phase rate |w g'(x)| x bounded at the left end of the panel
        const double rate = aw * gmax * std::exp(-t);
        double h = 1.0;
        if (rate > 0.0) h = std::min(h, std::numbers::pi / rate);
        const double hi = std::min(t + h, tmax);
        near_panels.push_back({t, hi});
        t = hi;
        if (near_panels.size() > kMaxPanels) throw numeric_failure("adaptive_reference: panel cap exceeded");
    }
    std::vector<Panel> far_panels;
    {
        double h = (a - xc) / 4.0;
        if (aw * gmax > 0.0) h = std::min(h, std::numbers::pi / (aw * gmax));
        const auto count = static_cast<std::size_t>(std::ceil((a - xc) / h));
        if (count > kMaxPanels) throw numeric_failure("adaptive_reference: panel cap exceeded");
        for (std::size_t k = 0; k < count; ++k) {
            const double lo = xc + (a - xc) * static_cast<double>(k) / static_cast<double>(count);
            const double hi = (k + 1 == count) ? a : xc + (a - xc) * static_cast<double>(k + 1) / static_cast<double>(count);
            far_panels.push_back({lo, hi});
        }
    }

    auto sum_panels = [](const std::vector<Panel>& panels, const GaussRule& rule, auto&& fn,
                         double& abs_acc) {
        Complex total = 0.0;
        for (const Panel& pn : panels) {
            const double mid = 0.5 * (pn.lo + pn.hi);
            const double half = 0.5 * (pn.hi - pn.lo);
            Complex s = 0.0;
            for (std::size_t k = 0; k < rule.x.size(); ++k) s += rule.w[k] * fn(mid + half * rule.x[k]);
            total += half * s;
            abs_acc += std::abs(half * s);
        }
        return total;
    };

    Complex prev;
    double diff = std::numeric_limits<double>::infinity();
    for (std::size_t level = 0; level < kLevels.size(); ++level) {
        double abs_acc = 0.0;
        const Complex est = sum_panels(near_panels, rules()[level], near_integrand, abs_acc) +
                            sum_panels(far_panels, rules()[level], far_integrand, abs_acc);
        if (level > 0) {
            diff = std::abs(est - prev);
            if (diff < tol) {
                const double floor = 4.0 * std::numeric_limits<double>::epsilon() * abs_acc;
                return {est, ReferenceSource::adaptive, std::max(diff, floor)};
            }
        }
        prev = est;
    }
    throw oracle_not_converged("adaptive_reference: no convergence with " + std::to_string(kLevels.back()) +
                                   " points per panel",
                               prev, diff);
}

}  // namespace levinq
