#pragma once

#include <stdexcept>
#include <string>

namespace egp {

/// Thrown when an argument falls outside the domain of an operation. The
/// message names the violated invariant.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of refinements. Carries the best value and
/// error estimate reached so callers can still report them.
class QuadratureError : public std::runtime_error
{
  public:
    QuadratureError(const std::string& what, double value, double err_estimate)
        : std::runtime_error(what), value_(value), err_estimate_(err_estimate)
    {
    }

    double value() const noexcept { return value_; }
    double err_estimate() const noexcept { return err_estimate_; }

  private:
    double value_;
    double err_estimate_;
};

} // namespace egp
