#pragma once

///
/// \file kernels.hpp
///
/// The kernel q_{a,b}(u) = (e^{-a u} - e^{-b u}) / (1 - e^{-u}), its product
/// Q_{s,t;lambda}(r) = q(r) q(lambda - r), the factor h(u) = u / sinh(u) and
/// the closed form of [ln q]''(u).
///

namespace egp {

/// Parameters (alpha, beta) of the q kernel: beta > alpha >= 0 and the exact
/// pair (0, 1) excluded.
class KernelParams
{
  public:
    KernelParams(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    /// beta - alpha
    double delta() const noexcept { return delta_; }

  private:
    double alpha_;
    double beta_;
    double delta_;
};

enum class LogConvexity
{
    convex,     // delta > 1
    concave,    // 0 < delta < 1
    degenerate, // delta == 1: neither class
};

LogConvexity classify(const KernelParams& p) noexcept;

const char* to_string(LogConvexity c) noexcept;

/// q_{alpha,beta}(u). Exactly delta at u = 0. Returns +inf when the value
/// exceeds the double range (u -> -inf with beta > 1).
double q_kernel(const KernelParams& p, double u);

/// ln q_{alpha,beta}(u), finite wherever u is.
double log_q_kernel(const KernelParams& p, double u);

/// u / sinh(u), with h(0) = 1.
double h_factor(double u);

/// [ln q]''(u) = (h(u/2)^2 - h(delta u/2)^2) / u^2, (delta^2 - 1)/12 at 0.
double log_q_second(const KernelParams& p, double u);

/// Q_{s,t;lambda}(r) = q_{s,t}(r) q_{s,t}(lambda - r).
double big_q(double s, double t, double lambda, double r);

} // namespace egp
