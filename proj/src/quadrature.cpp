#include "egp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "egp/error.hpp"

namespace egp {

namespace {

// Kronrod abscissae; odd indices are shared with the 7-point Gauss rule.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

// Hard ceiling on live panels, independent of the depth limit.
constexpr std::size_t kMaxPanels = 100000;

struct Panel
{
    double a;
    double b;
    double value;
    double err;
    int depth;
};

struct ByError
{
    bool operator()(const Panel& lhs, const Panel& rhs) const
    {
        if (lhs.err != rhs.err) {
            return lhs.err < rhs.err;
        }
        return lhs.a > rhs.a;
    }
};

double checked(const Integrand& g, double u)
{
    const double v = g(u);
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "quadrature: integrand is not finite at u = " << u;
        throw QuadratureError(msg.str(), v, INFINITY);
    }
    return v;
}

Panel gauss_kronrod(const Integrand& g, double a, double b, int depth)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked(g, center);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double f = checked(g, center - dx) + checked(g, center + dx);
        kronrod += kKronrodWeights[i] * f;
        if (i % 2 == 1) {
            gauss += kGaussWeights[i / 2] * f;
        }
    }
    return Panel{a, b, kronrod * half, std::abs((kronrod - gauss) * half), depth};
}

double target(const QuadratureConfig& cfg, double value)
{
    return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
}

QuadratureResult adapt(const Integrand& g, double a, double b, const QuadratureConfig& cfg)
{
    std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
    Panel first = gauss_kronrod(g, a, b, 0);
    double value = first.value;
    double err = first.err;
    queue.push(first);

    std::vector<Panel> done;
    while (err > target(cfg, value)) {
        Panel worst = queue.top();
        if (worst.depth >= cfg.max_refinements || queue.size() >= kMaxPanels) {
            std::ostringstream msg;
            msg << "quadrature: no convergence on [" << a << ", " << b << "] after "
                << cfg.max_refinements << " refinements (value " << value << ", error estimate "
                << err << ")";
            throw QuadratureError(msg.str(), value, err);
        }
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gauss_kronrod(g, worst.a, mid, worst.depth + 1);
        Panel right = gauss_kronrod(g, mid, worst.b, worst.depth + 1);
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }

    // Final sums in a fixed left-to-right order.
    while (!queue.empty()) {
        done.push_back(queue.top());
        queue.pop();
    }
    std::sort(done.begin(), done.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    QuadratureResult result;
    for (const Panel& p : done) {
        result.value += p.value;
        result.err_estimate += p.err;
    }
    return result;
}

} // namespace

void QuadratureConfig::validate() const
{
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_refinements < 1 || !(tail_constant > 0.0)) {
        throw DomainError("QuadratureConfig: rel_tol > 0, abs_tol > 0, max_refinements >= 1 and "
                          "tail_constant > 0 required");
    }
}

QuadratureConfig QuadratureConfig::tightened(double factor) const
{
    QuadratureConfig out = *this;
    out.rel_tol /= factor;
    out.abs_tol /= factor;
    return out;
}

QuadratureResult finite_integral(const Integrand& g, double a, double b,
                                 const QuadratureConfig& cfg)
{
    cfg.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
        std::ostringstream msg;
        msg << "finite_integral: finite a <= b required (a = " << a << ", b = " << b << ")";
        throw DomainError(msg.str());
    }
    if (a == b) {
        return {};
    }
    return adapt(g, a, b, cfg);
}

QuadratureResult laplace_integral(const Integrand& g, double x, const QuadratureConfig& cfg)
{
    cfg.validate();
    if (!std::isfinite(x) || x <= 0.0) {
        std::ostringstream msg;
        msg << "laplace_integral: decay rate must satisfy x > 0 (x = " << x << ")";
        throw DomainError(msg.str());
    }
    const double upper = cfg.tail_constant / x;
    return adapt([&](double u) { return g(u) * std::exp(-x * u); }, 0.0, upper, cfg);
}

} // namespace egp
