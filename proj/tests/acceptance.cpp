// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "egp/egp.hpp"
#include "egp/kernels.hpp"
#include "egp/report_io.hpp"
#include "egp/special_functions.hpp"
#include "egp/verify.hpp"
#include "oracles.hpp"

using namespace egp;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome
{
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            if (!ok) {
                detail << "; ";
            }
            ok = false;
            detail << what;
        }
    }
};

int failures = 0;

void report(int n, const std::string& title, Outcome& o, const std::string& summary)
{
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " [" << summary;
    if (!o.ok) {
        std::cout << " | " << o.detail.str();
        ++failures;
    }
    std::cout << "]" << std::endl;
}

std::string describe(const VerificationReport& r)
{
    std::ostringstream s;
    s << r.check_name << " points=" << r.points_tested << " violations=" << r.violations
      << " worst_margin=" << (r.worst_margin ? format_number(*r.worst_margin) : "null");
    return s.str();
}

// First `per_regime` generated pairs with gap below 1 and above 1.
std::pair<std::vector<ParameterPair>, std::vector<ParameterPair>> split_regimes(std::size_t per_regime)
{
    const ScanGrid g = ScanGrid::generate(20 * per_regime, kSeed);
    std::vector<ParameterPair> narrow;
    std::vector<ParameterPair> wide;
    for (const ParameterPair& p : g.pairs) {
        auto& bucket = p.gap() < 1.0 ? narrow : wide;
        if (bucket.size() < per_regime) {
            bucket.push_back(p);
        }
    }
    return {narrow, wide};
}

ScanGrid both_regimes(std::size_t per_regime)
{
    auto [narrow, wide] = split_regimes(per_regime);
    ScanGrid g;
    g.seed = kSeed;
    g.pairs = narrow;
    g.pairs.insert(g.pairs.end(), wide.begin(), wide.end());
    return g;
}

void criterion1()
{
    Outcome o;
    const double gamma = static_cast<double>(oracle::euler_gamma());
    const double pi2 = static_cast<double>(oracle::pi() * oracle::pi());
    const double z3 = static_cast<double>(oracle::zeta(3));
    double h9 = 0.0;
    double sq9 = 0.0;
    for (int k = 1; k <= 9; ++k) {
        h9 += 1.0 / k;
        sq9 += 1.0 / (static_cast<double>(k) * k);
    }
    const std::array<std::array<double, 3>, 4> table = {{
        {0.5, -gamma - 2.0 * std::log(2.0), pi2 / 2},
        {1.0, -gamma, pi2 / 6},
        {2.0, 1.0 - gamma, pi2 / 6 - 1.0},
        {10.0, h9 - gamma, pi2 / 6 - sq9},
    }};
    double worst_abs = 0.0;
    for (const auto& [x, psi, psi1] : table) {
        const double e1 = std::abs(digamma(x) - psi);
        const double e2 = std::abs(trigamma(x) - psi1);
        worst_abs = std::max({worst_abs, e1, e2});
        o.require(e1 <= 1e-12, "digamma(" + format_number(x) + ") off by " + format_number(e1));
        o.require(e2 <= 1e-12, "trigamma(" + format_number(x) + ") off by " + format_number(e2));
    }
    const double e3 = std::abs(polygamma(2, 1.0) + 2.0 * z3);
    worst_abs = std::max(worst_abs, e3);
    o.require(e3 <= 1e-12, "polygamma(2,1) vs -2 zeta(3) off by " + format_number(e3));

    double worst_rel = 0.0;
    for (int n = 1; n <= kMaxPolygammaOrder; ++n) {
        for (double x : {0.5, 1.0, 2.0, 10.0}) {
            const double ref = static_cast<double>(oracle::polygamma_quadrature(n, x));
            const double rel = std::abs(polygamma(n, x) - ref) / std::abs(ref);
            worst_rel = std::max(worst_rel, rel);
            o.require(rel <= 1e-8, "polygamma(" + std::to_string(n) + "," + format_number(x) + ") rel err "
                                       + format_number(rel));
        }
    }
    report(1, "special-function accuracy", o,
           "max abs err " + format_number(worst_abs) + ", max polygamma rel err " + format_number(worst_rel));
}

void criterion2()
{
    Outcome o;
    const VerificationReport r = verify_lemma4(log_spaced(0.05, 1e4, 200));
    o.require(r.points_tested == 200, "expected 200 points");
    o.require(r.violations == 0 && r.passed, "violations present");
    report(2, "digamma/trigamma band", o, describe(r));
}

void criterion3()
{
    Outcome o;
    const ScanGrid g = both_regimes(20);
    o.require(g.pairs.size() == 40, "could not draw 20 pairs per regime");
    std::size_t convex = 0;
    for (const ParameterPair& p : g.pairs) {
        convex += p.gap() > 1.0 ? 1 : 0;
    }
    o.require(convex == 20, "regime split is not 20/20");
    o.require(g.midpoint_samples == 10000, "expected 10^4 midpoint pairs");
    const VerificationReport r = verify_lemma3_logconvexity(g, kLemma3Tol);
    o.require(r.passed, "violations present");
    report(3, "log-convexity of q", o, describe(r));
}

void criterion4()
{
    Outcome o;
    const VerificationReport r = verify_lemma3_Q(both_regimes(20), kLemma3Tol);
    o.require(r.passed, "violations present");
    double worst_identity = 0.0;
    for (auto [s, t] : {std::pair{0.0, 2.0}, {0.0, 0.5}, {0.7, 3.2}}) {
        const KernelParams p(s, t);
        for (double lambda : {-3.0, 0.0, 1.0, 7.0}) {
            const double expected = (t - s) * q_kernel(p, lambda);
            worst_identity = std::max(worst_identity, std::abs(big_q(s, t, lambda, 0.0) - expected) / expected);
        }
    }
    o.require(worst_identity <= 1e-12, "endpoint identity off by " + format_number(worst_identity));
    report(4, "monotonicity of Q", o, describe(r) + ", endpoint identity rel err " + format_number(worst_identity));
}

void criterion5()
{
    Outcome o;
    const ScanGrid g = ScanGrid::generate(200, kSeed);
    const VerificationReport r = verify_theorem1(g, kTheorem1Tol);
    o.require(r.points_tested == 200 * 40, "expected 8000 points");
    o.require(r.passed, "violations present");

    // How often the witness met 1e-6 relative outright, without the rounding floor.
    std::size_t strict = 0;
    std::size_t total = 0;
    for (const ParameterPair& p : g.pairs) {
        for (double x : g.x_values) {
            const double direct = z_second_direct(p, x);
            const SecondDifference fd = z_second_difference(p, x, 1e-2 * (x + p.alpha()));
            ++total;
            strict += std::abs(fd.value - direct) <= kWitnessRelTol * std::abs(direct) ? 1 : 0;
        }
    }
    report(5, "convexity/monotonicity dichotomy", o,
           describe(r) + ", witness within 1e-6 rel at " + std::to_string(strict) + "/" + std::to_string(total)
               + " points, rounding floor elsewhere");
}

void criterion6()
{
    Outcome o;
    ScanGrid g = ScanGrid::generate(5, kSeed);
    g.x_values = {0.5, 1.0, 2.0, 5.0, 10.0};
    const VerificationReport r = verify_identity(g, kIdentityTol);
    o.require(r.points_tested == 25, "expected 25 points");
    o.require(r.passed, "violations present");
    report(6, "integral representation of z''", o, describe(r));
}

void criterion7()
{
    Outcome o;
    const VerificationReport r = verify_zprime_limit(ScanGrid::generate(20, kSeed), kZPrimeLimitTol);
    o.require(r.points_tested == 20, "expected 20 pairs");
    o.require(r.passed, "violations present");
    report(7, "z' vanishes at infinity", o, describe(r));
}

void criterion8()
{
    Outcome o;
    const ScanGrid g = ScanGrid::generate(100, kSeed);
    std::mt19937_64 rng(kSeed);
    auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    double worst_sandwich = -INFINITY;
    double worst_tight = 0.0;
    for (const ParameterPair& p : g.pairs) {
        const double x_ref = 0.5 + 9.5 * unit();
        const double x = x_ref * std::pow(10.0, 3.0 * unit());
        const BoundPair b = ratio_bounds(p, x, x_ref);
        const double ratio = gamma_ratio(p, x);
        const double slack = 1e-12 * ratio;
        worst_sandwich = std::max({worst_sandwich, (b.lower - ratio) / ratio, (ratio - b.upper) / ratio});
        o.require(b.lower <= ratio + slack && ratio <= b.upper + slack,
                  "sandwich fails at s=" + format_number(p.s()) + " t=" + format_number(p.t()) + " x="
                      + format_number(x));

        const BoundPair at_ref = ratio_bounds(p, x_ref, x_ref);
        const double r_ref = gamma_ratio(p, x_ref);
        const double tight = p.gap() < 1.0 ? at_ref.upper : at_ref.lower;
        const double err = std::abs(tight - r_ref) / r_ref;
        worst_tight = std::max(worst_tight, err);
        o.require(err <= 1e-12, "tight side off by " + format_number(err) + " at x_ref=" + format_number(x_ref));
    }

    const double z02 = z_value(ParameterPair(0.0, 2.0), 1.0);
    const double g1210 = gamma_ratio(ParameterPair(0.0, 2.0), 10.0);
    const double zhalf = z_value(ParameterPair(0.0, 0.5), 1.0);
    const double pi = static_cast<double>(oracle::pi());
    o.require(std::abs(z02 - (std::sqrt(2.0) - 1.0)) <= 1e-12, "z_{0,2}(1) = " + format_number(z02));
    o.require(std::abs(g1210 - 110.0) <= 1e-12 * 110.0, "Gamma(12)/Gamma(10) = " + format_number(g1210));
    o.require(std::abs(zhalf - (pi / 4 - 1.0)) <= 1e-12, "z_{0,1/2}(1) = " + format_number(zhalf));
    report(8, "gamma-ratio bounds", o,
           "100 triples, max relative excursion " + format_number(worst_sandwich) + ", max tight-side rel err "
               + format_number(worst_tight));
}

void criterion9()
{
    Outcome o;
    ScanGrid g = both_regimes(10);
    std::vector<double> u = lin_spaced(0.1, 20.0, 50);
    for (std::size_t i = 0, n = u.size(); i < n; ++i) {
        u.push_back(-u[i]);
    }
    g.u_values = u;
    const VerificationReport r = verify_remark3(g, kRemark3Tol);
    o.require(g.pairs.size() == 20, "expected 10 pairs per regime");
    o.require(r.points_tested == 20 * 100, "expected 2000 points");
    o.require(r.passed, "violations present");
    report(9, "third log-derivative sign pattern of q", o, describe(r));
}

std::pair<int, std::string> run_command(const std::string& cmd)
{
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return {-1, ""};
    }
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

void criterion10()
{
    Outcome o;
    const std::string cmd = std::string("'") + EGP_CLI_PATH + "' verify all --seed 42 --no-timestamp";
    const auto [code1, out1] = run_command(cmd);
    const auto [code2, out2] = run_command(cmd);
    o.require(code1 == 0 && code2 == 0, "exit codes " + std::to_string(code1) + ", " + std::to_string(code2));
    o.require(!out1.empty() && out1 == out2, "outputs differ between runs");
    std::size_t passed = 0;
    std::size_t count = 0;
    try {
        const ReportDocument doc = from_json(out1);
        count = doc.reports.size();
        for (const VerificationReport& r : doc.reports) {
            passed += r.passed ? 1 : 0;
        }
        o.require(to_json(doc) == out1, "JSON does not round-trip byte-identically");
    } catch (const std::exception& e) {
        o.require(false, std::string("unparseable JSON: ") + e.what());
    }
    o.require(count == 7 && passed == 7, "expected 7 passing reports");
    report(10, "CLI determinism", o,
           std::to_string(out1.size()) + " bytes, identical=" + (out1 == out2 ? "yes" : "no") + ", "
               + std::to_string(passed) + "/" + std::to_string(count) + " reports passed");
}

} // namespace

// With no arguments every criterion runs; otherwise only the numbered ones.
int main(int argc, char** argv)
{
    const std::array<void (*)(), 10> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                 criterion6, criterion7, criterion8, criterion9, criterion10};
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int n = std::atoi(argv[i]);
        if (n < 1 || n > static_cast<int>(criteria.size())) {
            std::cerr << "usage: acceptance [criterion number 1-10]..." << std::endl;
            return 2;
        }
        selected.push_back(n);
    }
    if (selected.empty()) {
        for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) {
            selected.push_back(n);
        }
    }
    for (int n : selected) {
        try {
            criteria[n - 1]();
        } catch (const std::exception& e) {
            std::cout << "FAIL criterion " << n << ": unexpected exception: " << e.what() << std::endl;
            ++failures;
        }
    }
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED")
              << std::endl;
    return failures == 0 ? 0 : 1;
}
