#include "egp/verify.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "egp/error.hpp"
#include "egp/kernels.hpp"
#include "egp/special_functions.hpp"

namespace egp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::array<double, 4> kLambdas = {-3.0, 0.0, 1.0, 7.0};
constexpr std::size_t kMonotoneSamples = 200;
constexpr double kMonotoneSpan = 20.0;
constexpr std::array<double, 3> kSymmetryOffsets = {1e-3, 0.5, 3.0};
// Witness step for z'' relative to the distance from the pole at -alpha.
constexpr double kWitnessRelStep = 1e-2;
// 2^-10: keeps u +- k h exact for dyadic u.
constexpr double kLogQStep = 0.0009765625;

class Tracker
{
  public:
    Tracker(std::string name, double tol, bool strict = false) : tol_(tol), strict_(strict)
    {
        report_.check_name = std::move(name);
        report_.tolerance = tol;
    }

    void point() { ++report_.points_tested; }

    // Primary claim: always tracked, violates below -tol.
    void claim(double slack, const WorstPoint& where)
    {
        track(slack, where);
        const bool ok = strict_ ? slack > -tol_ : slack >= -tol_;
        if (!ok) {
            ++report_.violations;
        }
    }

    // Secondary check: violates below zero, tracked only then.
    void subcheck(double slack, const WorstPoint& where)
    {
        if (!(slack >= 0.0)) {
            ++report_.violations;
            track(slack, where);
        }
    }

    VerificationReport finish()
    {
        report_.passed = report_.violations == 0;
        return std::move(report_);
    }

  private:
    void track(double slack, const WorstPoint& where)
    {
        if (std::isnan(slack)) {
            slack = -std::numeric_limits<double>::infinity();
        }
        if (!report_.worst_margin || slack < *report_.worst_margin) {
            report_.worst_margin = slack;
            report_.worst_point = where;
        }
    }

    double tol_;
    bool strict_;
    VerificationReport report_;
};

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    // 53 random bits; std distributions are not portable across libraries.
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

bool in_scan_band(double gap)
{
    return (gap > 0.02 && gap < 0.98) || (gap > 1.02 && gap < 5.0);
}

// +1 when z is convex and decreasing (gap < 1), -1 when concave and increasing.
double dichotomy_sign(const ParameterPair& p) { return p.gap() < 1.0 ? 1.0 : -1.0; }

long double log_q_extended(long double alpha, long double beta, long double u)
{
    const long double delta = beta - alpha;
    const long double v = u < 0 ? -u : u;
    const long double ratio = std::log(-std::expm1(-delta * v)) - std::log(-std::expm1(-v));
    return (u > 0 ? -alpha * v : (beta - 1.0L) * v) + ratio;
}

} // namespace

std::vector<double> log_spaced(double lo, double hi, std::size_t n)
{
    std::vector<double> out;
    if (n == 0) {
        return out;
    }
    if (n == 1) {
        return {lo};
    }
    const double a = std::log(lo);
    const double b = std::log(hi);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1)));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> lin_spaced(double lo, double hi, std::size_t n)
{
    std::vector<double> out;
    if (n == 0) {
        return out;
    }
    if (n == 1) {
        return {lo};
    }
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.back() = hi;
    return out;
}

std::vector<double> ScanGrid::default_x_values() { return log_spaced(0.05, 1e4, 40); }

std::vector<double> ScanGrid::default_u_values() { return lin_spaced(-30.0, 30.0, 60); }

ScanGrid ScanGrid::generate(std::size_t count, std::uint64_t seed)
{
    ScanGrid grid;
    grid.seed = seed;
    std::mt19937_64 rng(seed);
    while (grid.pairs.size() < count) {
        const double s = uniform(rng, 0.0, 2.0);
        const bool wide = (rng() >> 63) != 0;
        const double gap = wide ? uniform(rng, 1.02, 5.0) : uniform(rng, 0.02, 0.98);
        const double t = s + gap;
        if (in_scan_band(t - s)) {
            grid.pairs.emplace_back(s, t);
        }
    }
    return grid;
}

void ScanGrid::validate() const
{
    for (const ParameterPair& p : pairs) {
        if (!(p.s() >= 0.0) || !(p.t() >= p.s())) {
            std::ostringstream msg;
            msg << "ScanGrid: t >= s >= 0 violated (s = " << p.s() << ", t = " << p.t() << ")";
            throw DomainError(msg.str());
        }
    }
    for (double x : x_values) {
        if (!std::isfinite(x) || !(x > 0.0)) {
            std::ostringstream msg;
            msg << "ScanGrid: x > 0 violated (x = " << x << ")";
            throw DomainError(msg.str());
        }
    }
    for (double u : u_values) {
        if (!std::isfinite(u)) {
            throw DomainError("ScanGrid: u values must be finite");
        }
    }
    if (!(midpoint_range > 0.0) || !std::isfinite(midpoint_range)) {
        throw DomainError("ScanGrid: midpoint_range > 0 violated");
    }
}

QuadratureConfig identity_quadrature_config()
{
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-18;
    return cfg;
}

SecondDifference z_second_difference(const ParameterPair& p, double x, double h)
{
    std::array<double, 5> f{};
    double worst = 0.0;
    for (int k = -2; k <= 2; ++k) {
        const double y = x + k * h;
        const double z = z_value(p, y);
        const double w = z + y;
        // exp() amplifies the absolute error of the exponent ln w.
        worst = std::max(worst, 4.0 * kEps * (std::abs(w) * (1.0 + std::abs(std::log(w))) + std::abs(y)));
        f[k + 2] = z;
    }
    const double single = (f[3] - 2.0 * f[2] + f[1]) / (h * h);
    const double wide = (f[4] - 2.0 * f[2] + f[0]) / (4.0 * h * h);
    return {(4.0 * single - wide) / 3.0, 17.0 / 3.0 * worst / (h * h)};
}

double log_q_second_difference(double alpha, double beta, double u)
{
    const KernelParams p(alpha, beta);
    const double h = kLogQStep;
    auto f = [&](double v) { return log_q_kernel(p, v); };
    const double center = f(u);
    const double single = (f(u + h) - 2.0 * center + f(u - h)) / (h * h);
    const double wide = (f(u + 2 * h) - 2.0 * center + f(u - 2 * h)) / (4.0 * h * h);
    return (4.0 * single - wide) / 3.0;
}

double log_q_third_difference(double alpha, double beta, double u, double h)
{
    const long double a = alpha;
    const long double b = beta;
    const long double c = u;
    const long double step = h;
    auto f = [&](long double v) -> long double { return log_q_extended(a, b, v); };
    const long double num = f(c + 2 * step) - 2 * f(c + step) + 2 * f(c - step) - f(c - 2 * step);
    return static_cast<double>(num / (2 * step * step * step));
}

VerificationReport verify_theorem1(const ScanGrid& grid, double tol)
{
    grid.validate();
    Tracker tracker("theorem1", tol);
    for (const ParameterPair& p : grid.pairs) {
        const double sign = dichotomy_sign(p);
        for (double x : grid.x_values) {
            const ZPoint where{p.s(), p.t(), x};
            tracker.point();
            const double second = z_second_direct(p, x);
            const double first = z_prime(p, x);
            tracker.claim(sign * second, where);
            tracker.claim(-sign * first, where);

            const double h = kWitnessRelStep * (x + p.alpha());
            const SecondDifference fd = z_second_difference(p, x, h);
            const double allowed = kWitnessRelTol * std::abs(second) + fd.rounding_bound;
            tracker.subcheck(allowed - std::abs(fd.value - second), where);
        }
    }
    return tracker.finish();
}

VerificationReport verify_lemma3_logconvexity(const ScanGrid& grid, double tol)
{
    grid.validate();
    Tracker tracker("lemma3_logconvexity", tol);
    std::mt19937_64 rng(grid.seed);
    for (const ParameterPair& pair : grid.pairs) {
        if (pair.gap() == 0.0) {
            continue;
        }
        const KernelParams p(pair.lo(), pair.hi());
        const LogConvexity kind = classify(p);
        if (kind == LogConvexity::degenerate) {
            continue;
        }
        const double sign = kind == LogConvexity::convex ? 1.0 : -1.0;
        for (double u : grid.u_values) {
            const KernelPoint where{p.alpha(), p.beta(), u, std::nullopt};
            tracker.point();
            const double second = log_q_second(p, u);
            tracker.claim(sign * second, where);
            const double fd = log_q_second_difference(p.alpha(), p.beta(), u);
            tracker.subcheck(kLogQSecondFdTol - std::abs(fd - second), where);
        }
        for (std::size_t i = 0; i < grid.midpoint_samples; ++i) {
            const double u = uniform(rng, -grid.midpoint_range, grid.midpoint_range);
            const double v = uniform(rng, -grid.midpoint_range, grid.midpoint_range);
            const double mid = q_kernel(p, 0.5 * (u + v));
            const double ratio = mid * mid / (q_kernel(p, u) * q_kernel(p, v));
            const double slack = sign > 0 ? (1.0 + kMidpointSlack) - ratio
                                          : ratio - (1.0 - kMidpointSlack);
            tracker.subcheck(slack, KernelPoint{p.alpha(), p.beta(), 0.5 * (u + v), std::nullopt});
        }
    }
    return tracker.finish();
}

VerificationReport verify_lemma3_Q(const ScanGrid& grid, double tol)
{
    grid.validate();
    Tracker tracker("lemma3_Q", tol);
    for (const ParameterPair& pair : grid.pairs) {
        if (pair.gap() == 0.0) {
            continue;
        }
        const KernelParams p(pair.lo(), pair.hi());
        const LogConvexity kind = classify(p);
        if (kind == LogConvexity::degenerate) {
            continue;
        }
        // convex: increasing right of lambda/2, decreasing left of it
        const double sign = kind == LogConvexity::convex ? 1.0 : -1.0;
        const double s = p.alpha();
        const double t = p.beta();
        for (double lambda : kLambdas) {
            const double centre = 0.5 * lambda;
            auto at = [&](double r) { return KernelPoint{s, t, r, lambda}; };

            // right side (centre, centre + span], ascending
            double prev = big_q(s, t, lambda, centre);
            for (std::size_t k = 1; k <= kMonotoneSamples; ++k) {
                const double r = centre + kMonotoneSpan * static_cast<double>(k) / kMonotoneSamples;
                const double cur = big_q(s, t, lambda, r);
                tracker.point();
                tracker.claim(sign * (cur - prev) / std::abs(prev), at(r));
                prev = cur;
            }
            // left side [centre - span, centre), ascending
            prev = big_q(s, t, lambda, centre - kMonotoneSpan);
            for (std::size_t k = 1; k < kMonotoneSamples; ++k) {
                const double r =
                    centre - kMonotoneSpan + kMonotoneSpan * static_cast<double>(k) / kMonotoneSamples;
                const double cur = big_q(s, t, lambda, r);
                tracker.point();
                tracker.claim(-sign * (cur - prev) / std::abs(prev), at(r));
                prev = cur;
            }

            // Q(0) = Q(lambda) = (t - s) q(lambda)
            const double endpoint = big_q(s, t, lambda, 0.0);
            const double expected = p.delta() * q_kernel(p, lambda);
            tracker.subcheck(kQIdentityTol - std::abs(endpoint - expected) / std::abs(expected), at(0.0));
            const double other = big_q(s, t, lambda, lambda);
            tracker.subcheck(kQIdentityTol - std::abs(other - expected) / std::abs(expected), at(lambda));

            for (double h : kSymmetryOffsets) {
                const double up = big_q(s, t, lambda, centre + h);
                const double down = big_q(s, t, lambda, centre - h);
                tracker.subcheck(kQIdentityTol - std::abs(up - down) / std::abs(up), at(centre + h));
            }

            // Q on [0, lambda] stays on the proper side of its endpoint value.
            if (lambda > 0.0) {
                for (std::size_t k = 1; k < kMonotoneSamples; ++k) {
                    const double r = lambda * static_cast<double>(k) / kMonotoneSamples;
                    const double value = big_q(s, t, lambda, r);
                    const double slack = sign * (endpoint - value) / endpoint + kQIdentityTol;
                    tracker.subcheck(slack, at(r));
                }
            }
        }
    }
    return tracker.finish();
}

VerificationReport verify_lemma4(const std::vector<double>& x_values, double tol)
{
    Tracker tracker("lemma4", tol, /*strict=*/true);
    for (double x : x_values) {
        if (!std::isfinite(x) || !(x > 0.0)) {
            std::ostringstream msg;
            msg << "verify_lemma4: x > 0 violated (x = " << x << ")";
            throw DomainError(msg.str());
        }
        tracker.point();
        const double psi = digamma(x);
        const double psi1 = trigamma(x);
        const double log_x = std::log(x);
        const double inv = 1.0 / x;
        const double inv2 = inv * inv;
        const std::array<double, 4> slacks = {
            psi - (log_x - inv),
            (log_x - 0.5 * inv) - psi,
            (psi1 - inv) - 0.5 * inv2,
            inv2 - (psi1 - inv),
        };
        double worst = slacks[0];
        for (double s : slacks) {
            worst = std::min(worst, s);
        }
        tracker.claim(worst, ZPoint{0.0, 0.0, x});
    }
    return tracker.finish();
}

VerificationReport verify_identity(const ScanGrid& grid, double tol)
{
    grid.validate();
    Tracker tracker("identity", tol);
    const QuadratureConfig cfg = identity_quadrature_config();
    for (const ParameterPair& p : grid.pairs) {
        if (p.gap() == 0.0) {
            continue;
        }
        for (double x : grid.x_values) {
            if (x < kIdentityMinX || x > kIdentityMaxX) {
                continue;
            }
            tracker.point();
            const double direct = z_second_direct(p, x);
            double integral = 0.0;
            try {
                integral = z_second_integral(p, x, cfg).value;
            } catch (const QuadratureError& e) {
                integral = e.value();
            }
            tracker.claim(-std::abs(integral - direct) / std::abs(direct), ZPoint{p.s(), p.t(), x});
        }
    }
    return tracker.finish();
}

VerificationReport verify_remark3(const ScanGrid& grid, double tol)
{
    grid.validate();
    Tracker tracker("remark3", tol);
    for (const ParameterPair& pair : grid.pairs) {
        if (pair.gap() == 0.0) {
            continue;
        }
        const KernelParams p(pair.lo(), pair.hi());
        const LogConvexity kind = classify(p);
        if (kind == LogConvexity::degenerate) {
            continue;
        }
        // 3-log-convex on u > 0 when 0 < delta < 1; mirrored for u < 0 and
        // for delta > 1.
        const double sign = kind == LogConvexity::concave ? 1.0 : -1.0;
        for (double u : grid.u_values) {
            if (std::abs(u) < kRemark3MinAbsU) {
                continue;
            }
            const KernelPoint where{p.alpha(), p.beta(), u, std::nullopt};
            tracker.point();
            const double third = log_q_third_difference(p.alpha(), p.beta(), u);
            tracker.claim((u > 0.0 ? sign : -sign) * third, where);

            // The double-precision kernel agrees with the extended reference.
            const double reference = static_cast<double>(log_q_extended(p.alpha(), p.beta(), u));
            const double shipped = log_q_kernel(p, u);
            tracker.subcheck(1e-13 * (1.0 + std::abs(reference)) - std::abs(shipped - reference),
                             where);
        }
    }
    return tracker.finish();
}

VerificationReport verify_zprime_limit(const ScanGrid& grid, double tol)
{
    grid.validate();
    Tracker tracker("zprime_limit", tol);
    constexpr std::array<double, 5> xs = {1e2, 1e3, 1e4, 1e5, 1e6};
    for (const ParameterPair& p : grid.pairs) {
        std::array<double, 5> mags{};
        for (std::size_t k = 0; k < xs.size(); ++k) {
            mags[k] = std::abs(z_prime(p, xs[k]));
        }
        tracker.point();
        tracker.claim(kZPrimeLimitBound - mags.back(), ZPoint{p.s(), p.t(), xs.back()});
        for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
            const double shrink = mags[k] - mags[k + 1];
            tracker.subcheck(shrink > 0.0 ? shrink : -std::numeric_limits<double>::min() + shrink,
                             ZPoint{p.s(), p.t(), xs[k + 1]});
        }
    }
    return tracker.finish();
}

} // namespace egp
