#include "egp/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "egp/error.hpp"

namespace egp {

namespace {

constexpr double kSeriesCutoff = 1e-12;
constexpr double kSecondSeriesCutoff = 1e-4;

// B_2, ..., B_24
constexpr std::array<double, 12> kBernoulli = {
    1.0 / 6.0,         -1.0 / 30.0,         1.0 / 42.0,          -1.0 / 30.0,
    5.0 / 66.0,        -691.0 / 2730.0,     7.0 / 6.0,           -3617.0 / 510.0,
    43867.0 / 798.0,   -174611.0 / 330.0,   854513.0 / 138.0,    -236364091.0 / 2730.0,
};

// csch^2(y) - 1/y^2 = sum_{n>=1} c_n y^{2n-2},
// c_n = -2^{2n} B_{2n} (2n - 1) / (2n)!
constexpr std::array<double, 12> csch2_series()
{
    std::array<double, 12> c{};
    double pow4 = 1.0;
    double fact = 1.0;
    for (int n = 1; n <= 12; ++n) {
        pow4 *= 4.0;
        fact *= (2.0 * n - 1.0) * (2.0 * n);
        c[n - 1] = -pow4 * kBernoulli[n - 1] * (2.0 * n - 1.0) / fact;
    }
    return c;
}

constexpr auto kCsch2Series = csch2_series();

double csch2(double y)
{
    const double sh = std::sinh(y);
    return 1.0 / (sh * sh);
}

// csch^2(y) - 1/y^2 for y >= 0, without the 1/y^2 cancellation near 0.
double csch2_regular(double y)
{
    if (y < 0.5) {
        const double y2 = y * y;
        double sum = 0.0;
        for (int n = 11; n >= 0; --n) {
            sum = sum * y2 + kCsch2Series[n];
        }
        return sum;
    }
    return csch2(y) - 1.0 / (y * y);
}

void require_finite(double u, const char* fn)
{
    if (!std::isfinite(u)) {
        throw DomainError(std::string(fn) + ": u must be finite");
    }
}

} // namespace

KernelParams::KernelParams(double alpha, double beta)
    : alpha_(alpha), beta_(beta), delta_(beta - alpha)
{
    std::ostringstream msg;
    if (!std::isfinite(alpha) || !std::isfinite(beta)) {
        msg << "KernelParams: alpha and beta must be finite";
    } else if (!(alpha >= 0.0)) {
        msg << "KernelParams: alpha >= 0 violated (alpha = " << alpha << ")";
    } else if (!(beta > alpha)) {
        msg << "KernelParams: beta > alpha violated (alpha = " << alpha << ", beta = " << beta
            << ")";
    } else if (alpha == 0.0 && beta == 1.0) {
        msg << "KernelParams: (alpha, beta) != (0, 1) violated";
    } else {
        return;
    }
    throw DomainError(msg.str());
}

LogConvexity classify(const KernelParams& p) noexcept
{
    if (p.delta() > 1.0) {
        return LogConvexity::convex;
    }
    if (p.delta() < 1.0) {
        return LogConvexity::concave;
    }
    return LogConvexity::degenerate;
}

const char* to_string(LogConvexity c) noexcept
{
    switch (c) {
    case LogConvexity::convex:
        return "log-convex";
    case LogConvexity::concave:
        return "log-concave";
    case LogConvexity::degenerate:
        return "degenerate";
    }
    return "unknown";
}

double q_kernel(const KernelParams& p, double u)
{
    require_finite(u, "q_kernel");
    if (std::abs(u) < kSeriesCutoff) {
        return p.delta() * (1.0 + 0.5 * (1.0 - p.alpha() - p.beta()) * u);
    }
    if (u > 0.0) {
        return std::exp(-p.alpha() * u) * (std::expm1(-p.delta() * u) / std::expm1(-u));
    }
    // q(-v) = e^{(beta - 1) v} (1 - e^{-delta v}) / (1 - e^{-v})
    const double v = -u;
    return std::exp((p.beta() - 1.0) * v) * (std::expm1(-p.delta() * v) / std::expm1(-v));
}

double log_q_kernel(const KernelParams& p, double u)
{
    require_finite(u, "log_q_kernel");
    if (std::abs(u) < kSeriesCutoff) {
        return std::log(p.delta()) + std::log1p(0.5 * (1.0 - p.alpha() - p.beta()) * u);
    }
    const double v = std::abs(u);
    const double ratio = std::log(-std::expm1(-p.delta() * v)) - std::log(-std::expm1(-v));
    return (u > 0.0 ? -p.alpha() * v : (p.beta() - 1.0) * v) + ratio;
}

double h_factor(double u)
{
    require_finite(u, "h_factor");
    const double a = std::abs(u);
    if (a < kSecondSeriesCutoff) {
        const double u2 = u * u;
        return 1.0 - u2 / 6.0 + 7.0 * u2 * u2 / 360.0;
    }
    return a / std::sinh(a);
}

double log_q_second(const KernelParams& p, double u)
{
    require_finite(u, "log_q_second");
    const double d = p.delta();
    const double d2 = d * d;
    if (std::abs(u) < kSecondSeriesCutoff) {
        return (d2 - 1.0) / 12.0 + (1.0 - d2 * d2) * u * u / 240.0;
    }
    // (h(y1)^2 - h(y2)^2) / u^2 = (csch^2(y1) - delta^2 csch^2(y2)) / 4 with
    // y1 = |u|/2, y2 = delta |u|/2; the 1/y^2 poles cancel exactly.
    const double y1 = 0.5 * std::abs(u);
    const double y2 = d * y1;
    if (std::min(y1, y2) >= 1.0) {
        return 0.25 * (csch2(y1) - d2 * csch2(y2));
    }
    return 0.25 * (csch2_regular(y1) - d2 * csch2_regular(y2));
}

double big_q(double s, double t, double lambda, double r)
{
    const KernelParams p(s, t);
    return q_kernel(p, r) * q_kernel(p, lambda - r);
}

} // namespace egp
