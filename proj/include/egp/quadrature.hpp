#pragma once

#include <functional>

namespace egp {

/// Tolerances and limits for the adaptive integrators.
struct QuadratureConfig
{
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    /// Maximum bisection depth of any panel.
    int max_refinements = 20;
    /// Semi-infinite ranges are truncated at U = tail_constant / x.
    double tail_constant = 50.0;

    /// Throws DomainError unless every field is positive.
    void validate() const;

    /// Same config with both tolerances divided by `factor`.
    QuadratureConfig tightened(double factor) const;
};

struct QuadratureResult
{
    double value = 0.0;
    double err_estimate = 0.0;
};

using Integrand = std::function<double(double)>;

/// Integral of g over [a, b] by globally adaptive Gauss-Kronrod (7, 15)
/// bisection. The error estimate is |K15 - G7| summed over panels.
///
/// Returns exactly {0, 0} when a == b. Throws DomainError when a > b or an
/// endpoint is not finite, and QuadratureError (carrying the best value)
/// when the tolerance is not met within cfg.max_refinements bisections.
QuadratureResult finite_integral(const Integrand& g, double a, double b,
                                 const QuadratureConfig& cfg = {});

/// Integral of g(u) exp(-x u) over (0, inf), truncated at tail_constant / x.
/// g must carry its own value at u = 0 if it has a removable singularity
/// there (Gauss-Kronrod nodes never touch the endpoints, but callers may).
QuadratureResult laplace_integral(const Integrand& g, double x,
                                  const QuadratureConfig& cfg = {});

} // namespace egp
