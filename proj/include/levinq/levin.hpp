#pragma once

// Levin collocation for I = int_0^a f(x) [log x] e^{i w g(x)} dx.
//
// Three paths are provided:
//   levin_classic     - p' + i w g' p = f collocated on Lobatto or Radau nodes,
//                       for integrands without the log weight;
//   levin_log_linear  - singularity-separated method for g(x) = x;
//   levin_log_general - the split f log(x/g) + f log g for increasing g.
//
// The log paths write p = q log(.) + h and solve the two non-singular Levin
// ODEs for q and h by collocation on the mapped Lobatto grid; the oscillatory
// part of h is available in closed form through Ein(z).

#include <complex>
#include <functional>
#include <string>

#include <Eigen/Core>

#include "levinq/chebyshev.hpp"
#include "levinq/linalg.hpp"
#include "levinq/special.hpp"

namespace levinq {

using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<Complex(double)>;

/// Smallest |w| accepted by the Levin paths.
inline constexpr double kMinFrequency = 1.0;

struct Oscillator {
    RealFunction g;
    RealFunction gprime;
    std::string descriptor;
};

Oscillator linear_oscillator();

struct IntegralProblem {
    ComplexFunction f;
    Oscillator osc;
    double a = 1.0;
    double w = 0.0;
    bool singular = true;  // log x weight present
    Complex phase{1.0, 0.0};
    bool flipped = false;  // sign of g and w reversed by normalization
};

enum class Method { classic, log_linear, log_general };
enum class GridKind { lobatto, radau };

const char* to_string(Method m);
const char* to_string(GridKind g);

struct QuadratureResult {
    Complex value;
    Eigen::Index n = 0;
    Eigen::Index rank_used = 0;
    double residual_inf = 0.0;
    Method method = Method::classic;
};

/// Shifts g so that g(0) = 0 and flips (g, w) so that g' > 0, folding the
/// constant phase into `phase`. `check_nodes` Lobatto nodes on [0, a] are
/// used to test the sign of g'.
IntegralProblem normalize_problem(const IntegralProblem& p, Eigen::Index check_nodes = 33);

QuadratureResult levin_classic(const ComplexFunction& f, const Oscillator& osc, double a,
                               double w, Eigen::Index n, GridKind grid = GridKind::lobatto,
                               double rel_tol = kDefaultTsvdRelTol);

enum class RemovableKind { q2_linear, q2_general, f1_general };

/// Quotients with a removable singularity at 0:
///   q2_linear  = (q1(x) - q1(0)) / x,      limit f(0) - i w g'(0) q1(0)
///   q2_general = (q1(x) - q1(0)) / g(x),   limit (f(0) - i w g'(0) q1(0)) / g'(0)
///   f1_general = f(x) log(x / g(x)),       limit f(0) log(1 / g'(0))
/// The limit is taken only when x == 0 exactly.
Complex removable_value(RemovableKind kind, const ComplexFunction& f, const Oscillator& osc,
                        double w, Complex q1_at_0, Complex q1_at_x, double x);

/// h2 at a point where g = gval > 0: q1(0) e^{-i w gval} Ein(-i w gval).
Complex h2_endpoint(Complex q1_at_0, double w, double gval);

QuadratureResult levin_log_linear(const ComplexFunction& f, double a, double w, Eigen::Index n,
                                  double rel_tol = kDefaultTsvdRelTol);

QuadratureResult levin_log_general(const ComplexFunction& f, const Oscillator& osc, double a,
                                   double w, Eigen::Index n, double rel_tol = kDefaultTsvdRelTol);

/// Normalizes `p`, runs `method`, and applies the accumulated phase. For
/// Method::classic on a singular problem the integrand f(x) log x is
/// collocated directly (this is the baseline that fails near x = 0).
QuadratureResult integrate(const IntegralProblem& p, Method method, Eigen::Index n,
                           GridKind grid = GridKind::lobatto,
                           double rel_tol = kDefaultTsvdRelTol);

}  // namespace levinq
