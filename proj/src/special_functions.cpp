#include "egp/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "egp/error.hpp"

namespace egp {

namespace {

// B_2, B_4, ..., B_16
constexpr std::array<double, 8> kBernoulli = {
    1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,  -3617.0 / 510.0,
};

// Terms of the asymptotic series actually summed (through x^-14 for psi).
constexpr int kSeriesTerms = 7;

constexpr std::array<double, 9> kFactorial = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};

void require_positive(double x, const char* fn)
{
    if (!std::isfinite(x) || x <= 0.0) {
        std::ostringstream msg;
        msg << fn << ": argument must be finite and > 0 (x > 0 violated, x = " << x << ")";
        throw DomainError(msg.str());
    }
}

void require_order(int n, const char* fn)
{
    if (n < 1 || n > kMaxPolygammaOrder) {
        std::ostringstream msg;
        msg << fn << ": order n must satisfy 1 <= n <= " << kMaxPolygammaOrder << " (n = " << n
            << ")";
        throw DomainError(msg.str());
    }
}

void require_pair(double x, double s, double t, const char* fn)
{
    if (!std::isfinite(x) || !std::isfinite(s) || !std::isfinite(t)) {
        throw DomainError(std::string(fn) + ": non-finite argument");
    }
    require_positive(x + s, fn);
    require_positive(x + t, fn);
}

// Number of unit steps needed to lift y to the asymptotic threshold.
int shift_count(double y)
{
    return y >= kAsymptoticThreshold ? 0 : static_cast<int>(std::ceil(kAsymptoticThreshold - y));
}

// (2k + n - 1)! / (2k)!
double rising_ratio(int k, int n)
{
    double r = 1.0;
    for (int j = 2 * k + 1; j <= 2 * k + n - 1; ++j) {
        r *= j;
    }
    return r;
}

// a^-m - b^-m given d = a - b, free of cancellation:
//   -(a - b) * sum_{j=0}^{m-1} a^{-(m-j)} b^{-(j+1)}
double inverse_power_difference(double a, double b, int m, double d)
{
    const double ra = 1.0 / a;
    const double rb = 1.0 / b;
    double sum = 0.0;
    double pa = std::pow(ra, m);
    double pb = rb;
    for (int j = 0; j < m; ++j) {
        sum += pa * pb;
        pa *= a;
        pb *= rb;
    }
    return -d * sum;
}

double log_gamma_asymptotic(double y)
{
    const double r = 1.0 / y;
    const double r2 = r * r;
    double series = 0.0;
    double p = r;
    for (int k = 1; k <= kSeriesTerms; ++k) {
        series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= r2;
    }
    constexpr double half_log_two_pi = 0.91893853320467274178;
    return (y - 0.5) * std::log(y) - y + half_log_two_pi + series;
}

double digamma_asymptotic(double y)
{
    const double r2 = 1.0 / (y * y);
    double series = 0.0;
    double p = r2;
    for (int k = 1; k <= kSeriesTerms; ++k) {
        series += kBernoulli[k - 1] / (2.0 * k) * p;
        p *= r2;
    }
    return std::log(y) - 0.5 / y - series;
}

// |psi^(n)(y)| for y >= threshold.
double polygamma_asymptotic_magnitude(int n, double y)
{
    const double r = 1.0 / y;
    const double r2 = r * r;
    double rn = std::pow(r, n);
    double sum = kFactorial[n - 1] * rn + 0.5 * kFactorial[n] * rn * r;
    double p = rn * r2;
    for (int k = 1; k <= kSeriesTerms; ++k) {
        sum += kBernoulli[k - 1] * rising_ratio(k, n) * p;
        p *= r2;
    }
    return sum;
}

double polygamma_sign(int n) { return n % 2 == 1 ? 1.0 : -1.0; }

} // namespace

double log_gamma(double x)
{
    require_positive(x, "log_gamma");
    const int m = shift_count(x);
    double product = 1.0;
    for (int k = 0; k < m; ++k) {
        product *= x + k;
    }
    return log_gamma_asymptotic(x + m) - std::log(product);
}

double digamma(double x)
{
    require_positive(x, "digamma");
    const int m = shift_count(x);
    double shift = 0.0;
    for (int k = m - 1; k >= 0; --k) {
        shift += 1.0 / (x + k);
    }
    return digamma_asymptotic(x + m) - shift;
}

double trigamma(double x) { return polygamma(1, x); }

double polygamma(int n, double x)
{
    require_order(n, "polygamma");
    require_positive(x, "polygamma");
    const int m = shift_count(x);
    double shift = 0.0;
    for (int k = m - 1; k >= 0; --k) {
        shift += std::pow(x + k, -(n + 1));
    }
    return polygamma_sign(n) * (kFactorial[n] * shift + polygamma_asymptotic_magnitude(n, x + m));
}

double log_gamma_difference(double x, double s, double t)
{
    require_pair(x, s, t, "log_gamma_difference");
    const double d = t - s;
    if (d == 0.0) {
        return 0.0;
    }
    const double a0 = x + t;
    const double b0 = x + s;
    const int m = shift_count(std::min(a0, b0));

    // ln Gamma(y) = ln Gamma(y + m) - sum ln(y + k)
    double shift = 0.0;
    for (int k = m - 1; k >= 0; --k) {
        shift += std::log1p(d / (b0 + k));
    }

    const double a = a0 + m;
    const double b = b0 + m;
    // (a - 1/2) ln a - (b - 1/2) ln b - (a - b)
    double main = d * (std::log(a) - 1.0) + (b - 0.5) * std::log1p(d / b);
    double series = 0.0;
    for (int k = 1; k <= kSeriesTerms; ++k) {
        series += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) *
                  inverse_power_difference(a, b, 2 * k - 1, d);
    }
    return main + series - shift;
}

double digamma_difference(double x, double s, double t)
{
    require_pair(x, s, t, "digamma_difference");
    const double d = t - s;
    if (d == 0.0) {
        return 0.0;
    }
    const double a0 = x + t;
    const double b0 = x + s;
    const int m = shift_count(std::min(a0, b0));

    double shift = 0.0;
    for (int k = m - 1; k >= 0; --k) {
        shift += d / ((a0 + k) * (b0 + k));
    }

    const double a = a0 + m;
    const double b = b0 + m;
    double series = 0.0;
    for (int k = 1; k <= kSeriesTerms; ++k) {
        series += kBernoulli[k - 1] / (2.0 * k) * inverse_power_difference(a, b, 2 * k, d);
    }
    return std::log1p(d / b) + 0.5 * d / (a * b) - series + shift;
}

double polygamma_difference(int n, double x, double s, double t)
{
    require_order(n, "polygamma_difference");
    require_pair(x, s, t, "polygamma_difference");
    const double d = t - s;
    if (d == 0.0) {
        return 0.0;
    }
    const double a0 = x + t;
    const double b0 = x + s;
    const int m = shift_count(std::min(a0, b0));

    double shift = 0.0;
    for (int k = m - 1; k >= 0; --k) {
        shift += inverse_power_difference(a0 + k, b0 + k, n + 1, d);
    }

    const double a = a0 + m;
    const double b = b0 + m;
    double asym = kFactorial[n - 1] * inverse_power_difference(a, b, n, d) +
                  0.5 * kFactorial[n] * inverse_power_difference(a, b, n + 1, d);
    for (int k = 1; k <= kSeriesTerms; ++k) {
        asym += kBernoulli[k - 1] * rising_ratio(k, n) * inverse_power_difference(a, b, 2 * k + n, d);
    }
    return polygamma_sign(n) * (kFactorial[n] * shift + asym);
}

} // namespace egp
