#pragma once

#include <stdexcept>
#include <string>

namespace levinq {

// Argument problems are reported with std::invalid_argument and evaluation
// outside a function's domain with std::domain_error. The types below cover
// the remaining failure classes.

/// An iterative algorithm hit its cap without converging.
class numeric_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The problem violates a standing assumption of the method, e.g. a
/// stationary point of the oscillator.
class unsupported_problem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |w| below the smallest frequency the Levin paths accept.
class frequency_too_low : public unsupported_problem {
public:
    using unsupported_problem::unsupported_problem;
};

}  // namespace levinq
