#include "egp/egp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "egp/error.hpp"
#include "egp/kernels.hpp"
#include "egp/special_functions.hpp"

namespace egp {

namespace {

void require_domain(const ParameterPair& p, double x, const char* fn)
{
    if (!std::isfinite(x) || !(x > -p.alpha())) {
        std::ostringstream msg;
        msg << fn << ": x > -min{s,t} violated (x = " << x << ", min{s,t} = " << p.alpha() << ")";
        throw DomainError(msg.str());
    }
}

void require_normalized(const ParameterPair& p, const char* fn)
{
    if (!p.normalized()) {
        std::ostringstream msg;
        msg << fn << ": t > s >= 0 violated (s = " << p.s() << ", t = " << p.t() << ")";
        throw DomainError(msg.str());
    }
}

double midpoint(const ParameterPair& p) { return 0.5 * (p.lo() + p.hi()); }

// (ln Gamma(x+t) - ln Gamma(x+s)) / (t - s), continued by psi at t = s.
double exponent_quotient(const ParameterPair& p, double x)
{
    const double d = p.gap();
    if (d == 0.0) {
        return digamma(x + p.lo());
    }
    if (d < kDegenerateGap) {
        return digamma(x + midpoint(p));
    }
    return log_gamma_difference(x, p.lo(), p.hi()) / d;
}

// (psi(x+t) - psi(x+s)) / (t - s), continued by psi'.
double digamma_quotient(const ParameterPair& p, double x)
{
    const double d = p.gap();
    if (d == 0.0) {
        return trigamma(x + p.lo());
    }
    if (d < kDegenerateGap) {
        return trigamma(x + midpoint(p));
    }
    return digamma_difference(x, p.lo(), p.hi()) / d;
}

// (psi'(x+t) - psi'(x+s)) / (t - s), continued by psi''.
double trigamma_quotient(const ParameterPair& p, double x)
{
    const double d = p.gap();
    if (d == 0.0) {
        return polygamma(2, x + p.lo());
    }
    if (d < kDegenerateGap) {
        return polygamma(2, x + midpoint(p));
    }
    return polygamma_difference(1, x, p.lo(), p.hi()) / d;
}

} // namespace

ParameterPair::ParameterPair(double s, double t)
    : s_(s), t_(t), lo_(std::min(s, t)), hi_(std::max(s, t))
{
    if (!std::isfinite(s) || !std::isfinite(t)) {
        throw DomainError("ParameterPair: s and t must be finite");
    }
    const double d = t - s;
    if (d == 1.0 || d == -1.0) {
        std::ostringstream msg;
        msg << "ParameterPair: t−s ≠ ±1 violated (s = " << s << ", t = " << t << ")";
        throw DomainError(msg.str());
    }
}

bool ParameterPair::near_unit_gap() const noexcept
{
    return std::abs(gap() - 1.0) < kUnitGapWarning;
}

double z_value(const ParameterPair& p, double x)
{
    require_domain(p, x, "z_value");
    return std::exp(exponent_quotient(p, x)) - x;
}

double z_prime(const ParameterPair& p, double x)
{
    require_domain(p, x, "z_prime");
    return std::exp(exponent_quotient(p, x)) * digamma_quotient(p, x) - 1.0;
}

double z_second_direct(const ParameterPair& p, double x)
{
    require_domain(p, x, "z_second_direct");
    const double first = digamma_quotient(p, x);
    return std::exp(exponent_quotient(p, x)) * (first * first + trigamma_quotient(p, x));
}

QuadratureResult z_second_integral(const ParameterPair& p, double x, const QuadratureConfig& cfg)
{
    if (!(p.lo() >= 0.0) || !(p.hi() > p.lo())) {
        std::ostringstream msg;
        msg << "z_second_integral: t > s >= 0 violated (s = " << p.s() << ", t = " << p.t() << ")";
        throw DomainError(msg.str());
    }
    if (!std::isfinite(x) || !(x > 0.0)) {
        std::ostringstream msg;
        msg << "z_second_integral: x > 0 violated (x = " << x << ")";
        throw DomainError(msg.str());
    }
    cfg.validate();

    const KernelParams kernel(p.lo(), p.hi());
    const double d = p.gap();
    const QuadratureConfig inner_cfg = cfg.tightened(100.0);

    // [1/(d u) int_0^u Q_{s,t;u}(r) dr - q(u)] * u
    auto bracket = [&](double u) {
        if (u == 0.0) {
            return 0.0;
        }
        auto product = [&](double r) { return q_kernel(kernel, r) * q_kernel(kernel, u - r); };
        const double convolution = finite_integral(product, 0.0, u, inner_cfg).value;
        return convolution / d - u * q_kernel(kernel, u);
    };

    const QuadratureResult integral = laplace_integral(bracket, x, cfg);
    const double scale = std::exp(exponent_quotient(p, x)) / d;
    return {scale * integral.value, std::abs(scale) * integral.err_estimate};
}

double gamma_ratio(const ParameterPair& p, double x)
{
    require_domain(p, x, "gamma_ratio");
    return std::exp(log_gamma_difference(x, p.s(), p.t()));
}

BoundPair ratio_bounds(const ParameterPair& p, double x, double x_ref)
{
    require_normalized(p, "ratio_bounds");
    require_domain(p, x_ref, "ratio_bounds");
    if (!std::isfinite(x) || !(x_ref <= x)) {
        std::ostringstream msg;
        msg << "ratio_bounds: x_ref <= x violated (x = " << x << ", x_ref = " << x_ref << ")";
        throw DomainError(msg.str());
    }
    const double d = p.gap();
    const double limit = z_limit(p);
    if (!(x + limit > 0.0)) {
        std::ostringstream msg;
        msg << "ratio_bounds: x + lim z > 0 violated (x = " << x << ", lim z = " << limit << ")";
        throw DomainError(msg.str());
    }
    const double at_limit = std::pow(x + limit, d);
    const double at_ref = std::pow(x + z_value(p, x_ref), d);
    // z decreasing for d < 1, increasing for d > 1
    if (d < 1.0) {
        return {at_limit, at_ref};
    }
    return {at_ref, at_limit};
}

double z_limit(const ParameterPair& p, double tol)
{
    if (!(tol > 0.0)) {
        throw DomainError("z_limit: tol > 0 violated");
    }
    if (!(p.lo() >= 0.0)) {
        std::ostringstream msg;
        msg << "z_limit: min{s,t} >= 0 violated (min{s,t} = " << p.lo() << ")";
        throw DomainError(msg.str());
    }
    constexpr double x0 = 100.0;
    constexpr double ratio = 4.0;
    constexpr double x_max = 1e12;

    // Neville-style tableau; only the previous row is kept.
    std::vector<double> previous;
    double x = x0;
    double last_diagonal = 0.0;
    for (int k = 0; x <= x_max; ++k, x *= ratio) {
        std::vector<double> row(k + 1);
        row[0] = z_value(p, x);
        double factor = 1.0;
        for (int j = 1; j <= k; ++j) {
            factor *= ratio;
            row[j] = row[j - 1] + (row[j - 1] - previous[j - 1]) / (factor - 1.0);
        }
        if (k > 0 && std::abs(row[k] - last_diagonal) < tol / 10.0) {
            return row[k];
        }
        last_diagonal = row[k];
        previous = std::move(row);
    }
    std::ostringstream msg;
    msg << "z_limit: no convergence to tol = " << tol << " before x = " << x_max;
    throw DomainError(msg.str());
}

} // namespace egp
