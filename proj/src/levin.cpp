#include "levinq/levin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "levinq/errors.hpp"

namespace levinq {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_interval(double a)
{
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::invalid_argument("interval length a must be positive and finite");
}

void require_frequency(double w)
{
    if (!std::isfinite(w)) throw std::invalid_argument("frequency must be finite");
    if (std::abs(w) < kMinFrequency)
        throw frequency_too_low("|w| = " + std::to_string(std::abs(w)) +
                                " is below the Levin minimum of " + std::to_string(kMinFrequency) +
                                "; use the adaptive oracle for low frequencies");
}

ComplexVector sample(const ComplexFunction& f, const Eigen::VectorXd& x)
{
    ComplexVector out(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        out(j) = f(x(j));
        if (!std::isfinite(out(j).real()) || !std::isfinite(out(j).imag()))
            throw std::invalid_argument("integrand is not finite at x = " + std::to_string(x(j)));
    }
    return out;
}

Eigen::VectorXd sample(const RealFunction& g, const Eigen::VectorXd& x)
{
    Eigen::VectorXd out(x.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) out(j) = g(x(j));
    return out;
}

// L = scale * D + i w diag(gp)
ComplexMatrix levin_matrix(const Eigen::MatrixXd& diff, double scale, double w,
                           const Eigen::VectorXd& gp)
{
    ComplexMatrix l = (scale * diff).cast<Complex>();
    l.diagonal() += (kI * w) * gp.cast<Complex>();
    return l;
}

}  // namespace

Oscillator linear_oscillator()
{
    return {[](double x) { return x; }, [](double) { return 1.0; }, "x"};
}

const char* to_string(Method m)
{
    switch (m) {
    case Method::classic: return "classic";
    case Method::log_linear: return "log_linear";
    case Method::log_general: return "log_general";
    }
    return "?";
}

const char* to_string(GridKind g)
{
    return g == GridKind::lobatto ? "lobatto" : "radau";
}

IntegralProblem normalize_problem(const IntegralProblem& p, Eigen::Index check_nodes)
{
    require_interval(p.a);
    if (!p.osc.g || !p.osc.gprime) throw std::invalid_argument("oscillator needs g and g'");

    const auto grid = map_grid(lobatto_grid(std::max<Eigen::Index>(check_nodes, 2)), p.a);
    int positive = 0;
    int negative = 0;
    for (Eigen::Index j = 0; j < grid.mapped.size(); ++j) {
        const double d = p.osc.gprime(grid.mapped(j));
        if (d > 0.0)
            ++positive;
        else if (d < 0.0)
            ++negative;
    }
    if (positive != grid.mapped.size() && negative != grid.mapped.size())
        throw unsupported_problem("g' vanishes or changes sign on [0, a] (stationary point) for g = " +
                                  p.osc.descriptor);

    IntegralProblem out = p;
    const double c = p.osc.g(0.0);
    if (c != 0.0) {
        out.phase *= std::exp(kI * (p.w * c));
        auto g0 = p.osc.g;
        out.osc.g = [g0, c](double x) { return g0(x) - c; };
        out.osc.descriptor = "(" + p.osc.descriptor + ") - g(0)";
    }
    if (negative > 0) {
        auto g1 = out.osc.g;
        auto gp1 = out.osc.gprime;
        out.osc.g = [g1](double x) { return -g1(x); };
        out.osc.gprime = [gp1](double x) { return -gp1(x); };
        out.osc.descriptor = "-(" + out.osc.descriptor + ")";
        out.w = -p.w;
        out.flipped = !p.flipped;
    }
    return out;
}

QuadratureResult levin_classic(const ComplexFunction& f, const Oscillator& osc, double a, double w,
                               Eigen::Index n, GridKind grid, double rel_tol)
{
    require_interval(a);
    if (n < 2) throw std::invalid_argument("levin_classic: n must be >= 2");
    if (!std::isfinite(w)) throw std::invalid_argument("frequency must be finite");

    Eigen::VectorXd x;
    Eigen::MatrixXd diff;
    double scale = 1.0;
    if (grid == GridKind::lobatto) {
        const auto mg = map_grid(lobatto_grid(n), a);
        x = mg.mapped;
        diff = mg.base.diff;
        scale = 2.0 / a;
    } else {
        x = a * radau_grid(n);
        x(0) = a;
        diff = differentiation_matrix(x);
    }

    const ComplexVector fx = sample(f, x);
    const TruncatedSvdSolver<Complex> solver(levin_matrix(diff, scale, w, sample(osc.gprime, x)),
                                             rel_tol);
    const auto rep = solver.solve(fx);
    const ComplexVector& p = rep.solution;

    Complex p_a, p_0;
    if (grid == GridKind::lobatto) {
        p_0 = p(0);
        p_a = p(n - 1);
    } else {
        p_a = p(0);
        p_0 = barycentric_eval(x, barycentric_weights(x), p, 0.0);
    }

    QuadratureResult r;
    r.value = p_a * std::exp(kI * (w * osc.g(a))) - p_0 * std::exp(kI * (w * osc.g(0.0)));
    r.n = n;
    r.rank_used = rep.rank_used;
    r.residual_inf = rep.residual_inf;
    r.method = Method::classic;
    return r;
}

Complex removable_value(RemovableKind kind, const ComplexFunction& f, const Oscillator& osc,
                        double w, Complex q1_at_0, Complex q1_at_x, double x)
{
    if (!(x >= 0.0)) throw std::invalid_argument("removable_value: x must be >= 0");

    if (x == 0.0) {
        const double gp0 = osc.gprime(0.0);
        switch (kind) {
        case RemovableKind::q2_linear: return f(0.0) - kI * w * gp0 * q1_at_0;
        case RemovableKind::q2_general: return (f(0.0) - kI * w * gp0 * q1_at_0) / gp0;
        case RemovableKind::f1_general: return f(0.0) * std::log(1.0 / gp0);
        }
    }

    switch (kind) {
    case RemovableKind::q2_linear: return (q1_at_x - q1_at_0) / x;
    case RemovableKind::q2_general: {
        const double gx = osc.g(x);
        if (!(gx > 0.0))
            throw std::domain_error("removable_value: g(x) <= 0 at x = " + std::to_string(x));
        return (q1_at_x - q1_at_0) / gx;
    }
    case RemovableKind::f1_general: {
        const double gx = osc.g(x);
        if (!(gx > 0.0))
            throw std::domain_error("removable_value: g(x) <= 0 at x = " + std::to_string(x));
        return f(x) * std::log(x / gx);
    }
    }
    return {};
}

Complex h2_endpoint(Complex q1_at_0, double w, double gval)
{
    if (!(gval > 0.0)) throw std::domain_error("h2_endpoint: g value must be positive");
    if (w == 0.0) throw std::invalid_argument("h2_endpoint: w must be nonzero");
    if (q1_at_0 == Complex(0.0, 0.0)) return {0.0, 0.0};
    const double phase = w * gval;
    return q1_at_0 * std::exp(-kI * phase) * ein(Complex(0.0, -phase));
}

QuadratureResult levin_log_linear(const ComplexFunction& f, double a, double w, Eigen::Index n,
                                  double rel_tol)
{
    require_interval(a);
    require_frequency(w);
    if (n < 3) throw std::invalid_argument("levin_log_linear: n must be >= 3");

    const auto grid = map_grid(lobatto_grid(n), a);
    const Eigen::VectorXd& x = grid.mapped;
    const Oscillator lin = linear_oscillator();

    const ComplexVector fx = sample(f, x);
    const TruncatedSvdSolver<Complex> solver(
        levin_matrix(grid.base.diff, 2.0 / a, w, Eigen::VectorXd::Ones(n)), rel_tol);

    const auto r1 = solver.solve(fx);
    const ComplexVector& q1 = r1.solution;

    ComplexVector rhs(n);
    for (Eigen::Index j = 0; j < n; ++j)
        rhs(j) = -removable_value(RemovableKind::q2_linear, f, lin, w, q1(0), q1(j), x(j));
    const auto r2 = solver.solve(rhs);
    const ComplexVector& h1 = r2.solution;

    const Complex h2a = h2_endpoint(q1(0), w, a);
    const double log_a = std::log(a);
    const Complex e = std::exp(kI * (w * a));

    QuadratureResult r;
    r.value = e * (q1(n - 1) * log_a + h1(n - 1)) - (q1(0) * log_a + h1(0)) + e * h2a;
    r.n = n;
    r.rank_used = solver.rank();
    r.residual_inf = std::max(r1.residual_inf, r2.residual_inf);
    r.method = Method::log_linear;
    return r;
}

QuadratureResult levin_log_general(const ComplexFunction& f, const Oscillator& osc, double a,
                                   double w, Eigen::Index n, double rel_tol)
{
    require_interval(a);
    require_frequency(w);
    if (n < 3) throw std::invalid_argument("levin_log_general: n must be >= 3");
    if (osc.g(0.0) != 0.0)
        throw std::invalid_argument("levin_log_general: oscillator must satisfy g(0) = 0; normalize first");

    const auto grid = map_grid(lobatto_grid(n), a);
    const Eigen::VectorXd& x = grid.mapped;

    const Eigen::VectorXd gp = sample(osc.gprime, x);
    for (Eigen::Index j = 0; j < n; ++j)
        if (!(gp(j) > 0.0) || !std::isfinite(gp(j)))
            throw unsupported_problem("levin_log_general: g' must be positive on [0, a]");
    const double ga = osc.g(a);
    if (!(ga > 0.0)) throw unsupported_problem("levin_log_general: g(a) must be positive");

    const ComplexVector fx = sample(f, x);
    ComplexVector f1(n);
    for (Eigen::Index j = 0; j < n; ++j)
        f1(j) = removable_value(RemovableKind::f1_general, f, osc, w, {}, {}, x(j));

    // q, q1 and h1 share one factorization of L.
    const TruncatedSvdSolver<Complex> solver(levin_matrix(grid.base.diff, 2.0 / a, w, gp), rel_tol);
    const auto rq = solver.solve(f1);
    const auto r1 = solver.solve(fx);
    const ComplexVector& q = rq.solution;
    const ComplexVector& q1 = r1.solution;

    ComplexVector rhs(n);
    for (Eigen::Index j = 0; j < n; ++j)
        rhs(j) = -gp(j) * removable_value(RemovableKind::q2_general, f, osc, w, q1(0), q1(j), x(j));
    const auto r2 = solver.solve(rhs);
    const ComplexVector& h1 = r2.solution;

    const Complex h2a = h2_endpoint(q1(0), w, ga);
    const double log_ga = std::log(ga);
    const Complex e = std::exp(kI * (w * ga));
    const ComplexVector s = q + q1 * log_ga + h1;

    QuadratureResult r;
    r.value = e * s(n - 1) - s(0) + e * h2a;
    r.n = n;
    r.rank_used = solver.rank();
    r.residual_inf = std::max({rq.residual_inf, r1.residual_inf, r2.residual_inf});
    r.method = Method::log_general;
    return r;
}

QuadratureResult integrate(const IntegralProblem& p, Method method, Eigen::Index n, GridKind grid,
                           double rel_tol)
{
    if (!p.f) throw std::invalid_argument("problem has no integrand");
    const IntegralProblem np = normalize_problem(p, std::max<Eigen::Index>(n, 33));

    QuadratureResult r;
    switch (method) {
    case Method::classic: {
        ComplexFunction integrand = np.f;
        if (np.singular) {
            auto f = np.f;
            integrand = [f](double x) { return f(x) * std::log(x); };
        }
        r = levin_classic(integrand, np.osc, np.a, np.w, n, grid, rel_tol);
        break;
    }
    case Method::log_linear: {
        if (!np.singular) throw std::invalid_argument("log_linear requires the log x weight");
        const auto mg = map_grid(lobatto_grid(std::max<Eigen::Index>(n, 3)), np.a);
        for (Eigen::Index j = 0; j < mg.mapped.size(); ++j) {
            const double xj = mg.mapped(j);
            if (std::abs(np.osc.g(xj) - xj) > 1e-14 * std::max(1.0, np.a) ||
                std::abs(np.osc.gprime(xj) - 1.0) > 1e-14)
                throw std::invalid_argument("log_linear requires the linear oscillator g(x) = x; use log_general");
        }
        r = levin_log_linear(np.f, np.a, np.w, n, rel_tol);
        break;
    }
    case Method::log_general:
        if (!np.singular) throw std::invalid_argument("log_general requires the log x weight");
        r = levin_log_general(np.f, np.osc, np.a, np.w, n, rel_tol);
        break;
    }
    r.value *= np.phase;
    return r;
}

}  // namespace levinq
