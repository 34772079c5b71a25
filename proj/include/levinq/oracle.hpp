#pragma once

// Reference values independent of the Levin paths: closed forms built from
// special functions, and a brute-force adaptive Gauss-Legendre quadrature for
// desk-scale frequencies.

#include <string>
#include <string_view>

#include "levinq/levin.hpp"

namespace levinq {

enum class ReferenceSource { closed_form, adaptive, high_n_levin };

const char* to_string(ReferenceSource s);

struct ReferenceValue {
    Complex value;
    ReferenceSource source = ReferenceSource::closed_form;
    double est_error = 0.0;
};

/// Adaptive oracle failed to meet its tolerance; carries the best estimate.
class oracle_not_converged : public numeric_failure {
public:
    oracle_not_converged(const std::string& what, Complex best, double est_error)
        : numeric_failure(what), best_(best), est_error_(est_error)
    {
    }
    Complex best() const { return best_; }
    double est_error() const { return est_error_; }

private:
    Complex best_;
    double est_error_;
};

inline constexpr double kOracleDefaultTol = 1e-13;
inline constexpr double kOracleDefaultCut = 0.25;
inline constexpr double kOracleMaxFrequency = 1e4;

/// Closed forms on [0, 1]:
///   log_unit          int log x e^{iwx}
///   exp_log_linear    int e^x log x e^{iwx}
///   exp_log_nonlinear int (2x+1) e^{x^2+x} log x e^{iw(x^2+x)}
/// The nonlinear form subtracts a smooth companion integral that is
/// evaluated with 32-point classic Levin.
ReferenceValue closed_form(std::string_view problem_id, double w);

/// M_k(w) = int_0^1 x^k log x e^{iwx} dx for k = 0..kmax by upward recurrence
/// from M_0. Stable for |w| >= kmax.
ComplexVector log_monomial_moments(int kmax, double w);

/// int_{-1}^{1} T_m(x) log(x^2) e^{iwx} dx from the monomial moments.
Complex chebyshev_log_moment(int m, double w);

/// Brute-force quadrature of p (f, g, a, w, singular flag) to absolute
/// tolerance `tol`. The log singularity on (0, cut] is removed by x = e^{-t};
/// [cut, a] is covered by Gauss-Legendre panels no wider than half an
/// oscillation. Cost grows linearly in |w|.
ReferenceValue adaptive_reference(const IntegralProblem& p, double tol = kOracleDefaultTol,
                                  double cut = kOracleDefaultCut);

}  // namespace levinq
