#pragma once

///
/// \file verify.hpp
///
/// Falsification scans: each known property of the gamma-ratio function z,
/// the kernels q and Q and the digamma band is evaluated over a grid, and
/// the outcome is aggregated into a VerificationReport.
///
/// Every check has one primary claim per grid point, expressed as a signed
/// slack (positive means the claim holds with room to spare). A point
/// violates when its slack drops below -tolerance. Secondary consistency
/// checks (finite-difference witnesses, identities) add violations when they
/// fail, and only then contribute their slack to worst_margin.
///

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "egp/egp.hpp"
#include "egp/quadrature.hpp"

namespace egp {

inline constexpr double kTheorem1Tol = 1e-9;
inline constexpr double kLemma3Tol = 1e-12;
inline constexpr double kLemma4Tol = 0.0;
inline constexpr double kIdentityTol = 1e-6;
inline constexpr double kRemark3Tol = 1e-5;
inline constexpr double kZPrimeLimitTol = 0.0;

/// Finite-difference steps.
inline constexpr double kFirstDiffStep = 1e-5;
inline constexpr double kSecondDiffStep = 1e-4;
inline constexpr double kThirdDiffStep = 1e-3;

/// Relative agreement required between a second derivative and its
/// finite-difference witness.
inline constexpr double kWitnessRelTol = 1e-6;
/// Absolute agreement between [ln q]'' and its finite difference.
inline constexpr double kLogQSecondFdTol = 1e-6;
/// Relative slack in the midpoint log-convexity inequality.
inline constexpr double kMidpointSlack = 1e-12;
/// Relative tolerance of the Q endpoint and symmetry identities.
inline constexpr double kQIdentityTol = 1e-12;
/// Identity check only runs on 0.5 <= x <= this bound; beyond it the direct
/// form of z'' loses more than 1e-6 relative accuracy to cancellation.
inline constexpr double kIdentityMinX = 0.5;
inline constexpr double kIdentityMaxX = 20.0;
/// The third-difference check ignores |u| below this.
inline constexpr double kRemark3MinAbsU = 1e-2;
inline constexpr double kZPrimeLimitBound = 1e-5;

struct ZPoint
{
    double s = 0.0;
    double t = 0.0;
    double x = 0.0;

    friend bool operator==(const ZPoint&, const ZPoint&) = default;
};

struct KernelPoint
{
    double alpha = 0.0;
    double beta = 0.0;
    double u = 0.0;
    /// Set for Q checks only.
    std::optional<double> lambda;

    friend bool operator==(const KernelPoint&, const KernelPoint&) = default;
};

using WorstPoint = std::variant<ZPoint, KernelPoint>;

struct VerificationReport
{
    std::string check_name;
    std::size_t points_tested = 0;
    std::size_t violations = 0;
    /// Most negative slack observed; empty when nothing was tested.
    std::optional<double> worst_margin;
    double tolerance = 0.0;
    bool passed = true;
    std::optional<WorstPoint> worst_point;

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Deterministic grid for the scans. Pairs must satisfy t >= s >= 0; checks
/// that need t > s skip equal pairs.
struct ScanGrid
{
    std::vector<ParameterPair> pairs;
    std::vector<double> x_values = default_x_values();
    std::vector<double> u_values = default_u_values();
    /// Seed for the random midpoint pairs of the log-convexity check.
    std::uint64_t seed = 42;
    std::size_t midpoint_samples = 10000;
    double midpoint_range = 20.0;

    /// `count` pairs with t > s >= 0 and |t - s| in (0.02, 0.98) or (1.02, 5),
    /// reproducible from (count, seed).
    static ScanGrid generate(std::size_t count, std::uint64_t seed);

    static std::vector<double> default_x_values(); // 40 log-spaced in [0.05, 1e4]
    static std::vector<double> default_u_values(); // 60 evenly spaced in [-30, 30]

    /// Throws DomainError when a pair breaks t >= s >= 0 or an abscissa is
    /// not finite, or an x is not positive.
    void validate() const;
};

std::vector<double> log_spaced(double lo, double hi, std::size_t n);
std::vector<double> lin_spaced(double lo, double hi, std::size_t n);

VerificationReport verify_theorem1(const ScanGrid& grid, double tol = kTheorem1Tol);
VerificationReport verify_lemma3_logconvexity(const ScanGrid& grid, double tol = kLemma3Tol);
VerificationReport verify_lemma3_Q(const ScanGrid& grid, double tol = kLemma3Tol);
VerificationReport verify_lemma4(const std::vector<double>& x_values, double tol = kLemma4Tol);
VerificationReport verify_identity(const ScanGrid& grid, double tol = kIdentityTol);
VerificationReport verify_remark3(const ScanGrid& grid, double tol = kRemark3Tol);
VerificationReport verify_zprime_limit(const ScanGrid& grid, double tol = kZPrimeLimitTol);

/// Quadrature settings used by verify_identity.
QuadratureConfig identity_quadrature_config();

/// Richardson-corrected second central difference of z_value at x with base
/// step h (uses steps h and 2h), and the a-priori rounding bound on it.
struct SecondDifference
{
    double value = 0.0;
    double rounding_bound = 0.0;
};
SecondDifference z_second_difference(const ParameterPair& p, double x, double h = kSecondDiffStep);

/// Third central difference of ln q at u with step h, evaluated in extended
/// precision from the defining formula.
double log_q_third_difference(double alpha, double beta, double u, double h = kThirdDiffStep);

/// Richardson-corrected second central difference of log_q_kernel.
double log_q_second_difference(double alpha, double beta, double u);

} // namespace egp
