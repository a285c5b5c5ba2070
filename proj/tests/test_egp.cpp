#include <doctest.h>

#include <cmath>
#include <string>

#include "egp/egp.hpp"
#include "egp/error.hpp"
#include "egp/special_functions.hpp"
#include "oracles.hpp"

using namespace egp;

namespace {

const double kGamma = static_cast<double>(oracle::euler_gamma());
const double kPi = static_cast<double>(oracle::pi());

} // namespace

TEST_CASE("ParameterPair invariants")
{
    const ParameterPair p(2.0, 0.5);
    CHECK(p.s() == 2.0);
    CHECK(p.lo() == 0.5);
    CHECK(p.hi() == 2.0);
    CHECK(p.gap() == 1.5);
    CHECK_FALSE(p.normalized());
    CHECK(ParameterPair(0.5, 2.0).normalized());
    CHECK_THROWS_AS(ParameterPair(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(ParameterPair(3.0, 2.0), DomainError);
    try {
        ParameterPair(0.0, 1.0);
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("t−s ≠ ±1") != std::string::npos);
    }
    CHECK(ParameterPair(0.0, 1.0 + 1e-10).near_unit_gap());
    CHECK_FALSE(ParameterPair(0.0, 1.1).near_unit_gap());
}

TEST_CASE("z_value examples")
{
    CHECK(std::abs(z_value(ParameterPair(0.0, 2.0), 1.0) - (std::sqrt(2.0) - 1.0)) < 1e-14);
    CHECK(std::abs(z_value(ParameterPair(0.0, 0.5), 1.0) - (kPi / 4 - 1.0)) < 1e-14);
    CHECK(std::abs(z_value(ParameterPair(1.0, 1.0), 1.0) - std::expm1(1.0 - kGamma)) < 1e-14);
    CHECK(std::abs(z_value(ParameterPair(1.0, 1.0), 1.0) - 0.526205111595864) < 1e-13);
}

TEST_CASE("z_value symmetry and branch continuity")
{
    for (double x : {0.1, 1.0, 37.0}) {
        CHECK(z_value(ParameterPair(0.3, 2.6), x) == z_value(ParameterPair(2.6, 0.3), x));
        for (double s : {0.0, 0.7, 3.0}) {
            const double eps = 1e-9;
            CHECK(std::abs(z_value(ParameterPair(s, s + eps), x) - z_value(ParameterPair(s, s), x)) <= 1e-8);
        }
    }
}

TEST_CASE("z_prime examples")
{
    CHECK(std::abs(z_prime(ParameterPair(0.0, 2.0), 1.0) - (std::sqrt(2.0) * 0.75 - 1.0)) < 1e-14);
    const ParameterPair half(0.0, 0.5);
    const double h = 1e-5;
    const double fd = (z_value(half, 1.0 + h) - z_value(half, 1.0 - h)) / (2 * h);
    CHECK(z_prime(half, 1.0) < 0.0);
    CHECK(std::abs(z_prime(half, 1.0) - fd) <= 1e-7);
    const double expected = std::exp(1.0 - kGamma) * (kPi * kPi / 6 - 1.0) - 1.0;
    CHECK(std::abs(z_prime(ParameterPair(1.0, 1.0), 1.0) - expected) < 1e-14);
    CHECK(z_prime(ParameterPair(1.0, 1.0), 1.0) < 0.0);
}

TEST_CASE("z_prime agrees with the first central difference")
{
    const double h = 1e-5;
    for (auto [s, t] : {std::pair{0.0, 0.5}, {0.0, 2.0}, {1.2, 1.25}, {0.4, 3.9}, {2.0, 2.0}}) {
        const ParameterPair p(s, t);
        for (double x : {0.2, 1.0, 4.0, 30.0, 500.0}) {
            const double fd = (z_value(p, x + h) - z_value(p, x - h)) / (2 * h);
            CHECK(std::abs(z_prime(p, x) - fd) <= 1e-7);
        }
    }
}

TEST_CASE("z_second_direct examples")
{
    const ParameterPair half(0.0, 0.5);
    // psi(1.5) - psi(1) = 2 - 2 ln 2, psi'(1.5) - psi'(1) = pi^2/3 - 4 - pi^2/6
    const double a = (2.0 - 2.0 * std::log(2.0)) / 0.5;
    const double b = (kPi * kPi / 2 - 4.0 - kPi * kPi / 6) / 0.5;
    const double expected = kPi / 4 * (a * a + b);
    CHECK(std::abs(z_second_direct(half, 1.0) - expected) < 1e-13);
    CHECK(z_second_direct(half, 1.0) == doctest::Approx(0.0678).epsilon(0.0005 / 0.0678));

    const ParameterPair two(0.0, 2.0);
    const double direct = z_second_direct(two, 1.0);
    CHECK(direct < 0.0);
    // plain step 1e-4 is rounding-limited to a few 1e-6
    const double h = 1e-4;
    const double fd = (z_value(two, 1.0 + h) - 2 * z_value(two, 1.0) + z_value(two, 1.0 - h)) / (h * h);
    CHECK(std::abs(direct - fd) <= 1e-5 * std::abs(direct));
    const double h2 = 1e-2;
    const double fd1 = (z_value(two, 1.0 + h2) - 2 * z_value(two, 1.0) + z_value(two, 1.0 - h2)) / (h2 * h2);
    const double fd2 = (z_value(two, 1.0 + 2 * h2) - 2 * z_value(two, 1.0) + z_value(two, 1.0 - 2 * h2))
                     / (4 * h2 * h2);
    CHECK(std::abs(direct - (4 * fd1 - fd2) / 3) <= 1e-6 * std::abs(direct));

    for (double x : {0.5, 3.0, 80.0}) {
        const double psi = digamma(x + 1.3);
        const double same = std::exp(psi) * (trigamma(x + 1.3) * trigamma(x + 1.3) + polygamma(2, x + 1.3));
        CHECK(z_second_direct(ParameterPair(1.3, 1.3), x) == doctest::Approx(same).epsilon(1e-14));
    }
}

TEST_CASE("z_second_integral matches the direct form")
{
    const QuadratureConfig cfg;
    for (auto [s, t, x] : {std::tuple{0.0, 0.5, 1.0}, {0.0, 2.0, 1.0}, {0.0, 0.5, 5.0}, {0.7, 4.1, 2.0}}) {
        const ParameterPair p(s, t);
        const QuadratureResult res = z_second_integral(p, x, cfg);
        const double direct = z_second_direct(p, x);
        CAPTURE(s);
        CAPTURE(t);
        CAPTURE(x);
        CHECK(std::abs(res.value - direct) <= 1e-6 * std::abs(direct));
        CHECK(res.err_estimate >= 0.0);
    }
    CHECK(z_second_integral(ParameterPair(0.0, 2.0), 1.0, cfg).value < 0.0);
    CHECK_THROWS_AS(z_second_integral(ParameterPair(1.0, 1.0), 1.0, cfg), DomainError);
    CHECK_THROWS_AS(z_second_integral(ParameterPair(0.0, 2.0), -0.5, cfg), DomainError);
}

TEST_CASE("gamma_ratio examples")
{
    CHECK(gamma_ratio(ParameterPair(0.0, 2.0), 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::abs(gamma_ratio(ParameterPair(0.0, 0.5), 1.0) - 0.8862269255) < 1e-10);
    CHECK(gamma_ratio(ParameterPair(1.0, 1.0), 7.0) == 1.0);
    CHECK(gamma_ratio(ParameterPair(0.0, 2.0), 10.0) == doctest::Approx(110.0).epsilon(1e-14));
    CHECK(gamma_ratio(ParameterPair(2.0, 0.0), 10.0) == doctest::Approx(1.0 / 110.0).epsilon(1e-14));
}

TEST_CASE("ratio_bounds sandwich and tightness")
{
    const ParameterPair half(0.0, 0.5);
    const BoundPair b = ratio_bounds(half, 10.0, 1.0);
    const double ratio = gamma_ratio(half, 10.0);
    CHECK(ratio == doctest::Approx(3.12301143339061).epsilon(1e-13));
    CHECK(b.lower < ratio);
    CHECK(ratio < b.upper);

    const ParameterPair two(0.0, 2.0);
    const BoundPair c = ratio_bounds(two, 10.0, 1.0);
    CHECK(c.lower < 110.0);
    CHECK(110.0 < c.upper);

    const BoundPair tight = ratio_bounds(half, 1.0, 1.0);
    CHECK(std::abs(tight.upper - gamma_ratio(half, 1.0)) <= 1e-12);
    const BoundPair tight2 = ratio_bounds(two, 3.0, 3.0);
    CHECK(std::abs(tight2.lower - gamma_ratio(two, 3.0)) <= 1e-12 * gamma_ratio(two, 3.0));

    CHECK_THROWS_AS(ratio_bounds(half, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(ratio_bounds(ParameterPair(0.5, 0.0), 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(ratio_bounds(half, 0.1, 0.1), DomainError);
}

TEST_CASE("z_limit examples")
{
    CHECK(std::abs(z_limit(ParameterPair(0.0, 0.5)) + 0.25) <= 1e-8);
    CHECK(std::abs(z_limit(ParameterPair(0.0, 2.0)) - 0.5) <= 1e-8);
    CHECK(std::abs(z_limit(ParameterPair(1.0, 1.0)) - 0.5) <= 1e-8);
    CHECK_THROWS_AS(z_limit(ParameterPair(0.0, 2.0), 0.0), DomainError);
}

TEST_CASE("domain errors")
{
    const ParameterPair p(0.5, 2.0);
    CHECK_THROWS_AS(z_value(p, -0.5), DomainError);
    CHECK_NOTHROW(z_value(p, -0.4));
    CHECK_THROWS_AS(z_prime(p, std::nan("")), DomainError);
    CHECK_THROWS_AS(z_second_direct(ParameterPair(0.0, 3.0), 0.0), DomainError);
    CHECK_THROWS_AS(gamma_ratio(ParameterPair(0.0, 3.0), -1.0), DomainError);
}
