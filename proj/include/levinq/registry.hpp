#pragma once

// Built-in named test problems. A problem is a sum of parts on [0, a_k],
// each integrated at frequency w_sign_k * w; composite problems on [-1, 1]
// with a log(x^2) weight are assembled from two half-interval parts.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levinq/levin.hpp"
#include "levinq/oracle.hpp"

namespace levinq {

struct ProblemPart {
    ComplexFunction f;
    Oscillator osc;
    double a = 1.0;
    double w_sign = 1.0;
};

struct ProblemEntry {
    std::string name;
    std::vector<ProblemPart> parts;
    bool singular = true;
    std::optional<std::string> closed_form_id;
    /// Reference from closed-form building blocks when no single closed
    /// form exists (Chebyshev moments).
    std::function<Complex(double)> building_block_reference;
    std::string citation;

    IntegralProblem part_problem(std::size_t k, double w) const;

    /// Closed-form or building-block reference, if the entry has one.
    std::optional<ReferenceValue> exact_reference(double w) const;

    /// Sum of adaptive oracle values over the parts.
    ReferenceValue oracle_reference(double w, double tol = kOracleDefaultTol) const;
};

class ProblemRegistry {
public:
    static const ProblemRegistry& builtin();

    /// Throws std::invalid_argument for unknown names.
    const ProblemEntry& at(const std::string& name) const;
    bool contains(const std::string& name) const { return entries_.count(name) != 0; }
    std::vector<std::string> names() const;

    void add(ProblemEntry e);

private:
    std::map<std::string, ProblemEntry> entries_;
};

}  // namespace levinq
