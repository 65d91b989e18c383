#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace mbi {

/// Outcome of an adaptive quadrature run.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    long evaluations = 0;
};

/// Thrown when the evaluation budget runs out before the tolerance is met.
/// Carries the best estimate obtained so far.
class QuadratureBudgetError : public std::runtime_error {
public:
    QuadratureBudgetError(const QuadratureResult& best, double abs_tol)
        : std::runtime_error("quadrature budget exceeded: error estimate " +
                             std::to_string(best.error_estimate) + " > tol " +
                             std::to_string(abs_tol)),
          best_estimate(best) {}
    QuadratureResult best_estimate;
};

struct QuadratureOptions {
    double abs_tol = 1e-12;
    long max_evaluations = 4'000'000;
};

/// Adaptive Gauss-Kronrod (7,15) on a finite interval [lo, hi].
/// Endpoint singularities of reciprocal-square-root type must be removed by
/// substitution before calling (the callers in this library do so).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureOptions& opt = {});

/// Semi-infinite integral over [lo, inf), mapped through x = lo + t/(1-t).
/// Integrands must decay at least like x^-2.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double lo,
                                       const QuadratureOptions& opt = {});

/// Convenience overloads taking a bare absolute tolerance.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double abs_tol);
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f,
                                       double lo, double abs_tol);

}  // namespace mbi
