#include "levinq/registry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levinq {

namespace {

double chebyshev_t(int m, double x)
{
    double t0 = 1.0, t1 = x;
    if (m == 0) return t0;
    for (int k = 1; k < m; ++k) {
        const double t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

ProblemEntry single(std::string name, ComplexFunction f, Oscillator osc, std::string citation,
                    std::optional<std::string> closed = std::nullopt)
{
    ProblemEntry e;
    e.name = std::move(name);
    e.parts.push_back({std::move(f), std::move(osc), 1.0, 1.0});
    e.closed_form_id = std::move(closed);
    e.citation = std::move(citation);
    return e;
}

ProblemRegistry make_builtin()
{
    ProblemRegistry r;
    const Oscillator lin = linear_oscillator();

    r.add(single("log_unit", [](double) { return Complex(1.0); }, lin,
                 "int_0^1 log x e^{iwx} dx; closed form via Si/Ci", "log_unit"));
    r.add(single("exp_log_linear", [](double x) { return Complex(std::exp(x)); }, lin,
                 "int_0^1 e^x log x e^{iwx} dx; exponential-integral closed form", "exp_log_linear"));
    r.add(single(
        "exp_log_nonlinear",
        [](double x) { return Complex((2.0 * x + 1.0) * std::exp(x * x + x)); },
        Oscillator{[](double x) { return x * x + x; }, [](double x) { return 2.0 * x + 1.0; }, "x^2+x"},
        "int_0^1 (2x+1) e^{x^2+x} log x e^{iw(x^2+x)} dx; closed form minus a smooth companion",
        "exp_log_nonlinear"));

    for (int m = 2; m <= 6; ++m) {
        ProblemEntry e;
        e.name = "cheb_moment_" + std::to_string(m);
        e.parts.push_back({[m](double x) { return Complex(2.0 * chebyshev_t(m, x)); }, lin, 1.0, 1.0});
        e.parts.push_back({[m](double x) { return Complex(2.0 * chebyshev_t(m, -x)); }, lin, 1.0, -1.0});
        e.building_block_reference = [m](double w) { return chebyshev_log_moment(m, w); };
        e.citation = "int_{-1}^1 T_" + std::to_string(m) + "(x) log(x^2) e^{iwx} dx";
        r.add(std::move(e));
    }

    r.add(single(
        "osc_sin", [](double) { return Complex(1.0); },
        Oscillator{[](double x) { return (2.0 * x + std::sin(std::numbers::pi * x / 2.0)) / 3.0; },
                   [](double x) { return (2.0 + std::numbers::pi / 2.0 * std::cos(std::numbers::pi * x / 2.0)) / 3.0; },
                   "(2x + sin(pi x / 2)) / 3"},
        "int_0^1 log x e^{iw(2x + sin(pi x/2))/3} dx"));

    {
        ProblemEntry e;
        e.name = "cos_rational";
        auto f1 = [](double x) { return Complex(2.0 * std::cos(4.0 * x) / (x * x + x + 1.0)); };
        e.parts.push_back({f1, lin, 1.0, 1.0});
        e.parts.push_back({[f1](double x) { return f1(-x); }, lin, 1.0, -1.0});
        e.citation = "int_{-1}^1 cos(4x)/(x^2+x+1) log(x^2) e^{iwx} dx";
        r.add(std::move(e));
    }
    return r;
}

}  // namespace

IntegralProblem ProblemEntry::part_problem(std::size_t k, double w) const
{
    const ProblemPart& pt = parts.at(k);
    IntegralProblem p;
    p.f = pt.f;
    p.osc = pt.osc;
    p.a = pt.a;
    p.w = pt.w_sign * w;
    p.singular = singular;
    return p;
}

std::optional<ReferenceValue> ProblemEntry::exact_reference(double w) const
{
    if (closed_form_id) return closed_form(*closed_form_id, w);
    if (building_block_reference) return ReferenceValue{building_block_reference(w), ReferenceSource::closed_form, 0.0};
    return std::nullopt;
}

ReferenceValue ProblemEntry::oracle_reference(double w, double tol) const
{
    ReferenceValue total{0.0, ReferenceSource::adaptive, 0.0};
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const ReferenceValue rv = adaptive_reference(part_problem(k, w), tol);
        total.value += rv.value;
        total.est_error += rv.est_error;
    }
    return total;
}

const ProblemRegistry& ProblemRegistry::builtin()
{
    static const ProblemRegistry reg = make_builtin();
    return reg;
}

const ProblemEntry& ProblemRegistry::at(const std::string& name) const
{
    auto it = entries_.find(name);
    if (it == entries_.end()) throw std::invalid_argument("unknown problem '" + name + "'");
    return it->second;
}

std::vector<std::string> ProblemRegistry::names() const
{
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
}

void ProblemRegistry::add(ProblemEntry e)
{
    if (entries_.count(e.name)) throw std::invalid_argument("duplicate problem '" + e.name + "'");
    const std::string key = e.name;
    entries_.emplace(key, std::move(e));
}

}  // namespace levinq
