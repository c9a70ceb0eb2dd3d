#pragma once

#include <stdexcept>
#include <string>

namespace spraylab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (e.g. negative density).
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// Field or array sizes do not match the grid or stencil.
class SizeError : public Error
{
  public:
    using Error::Error;
};

/// Iterative numerics failed to converge; `residual` carries the last estimate.
class NumericError : public Error
{
  public:
    NumericError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual)
    {
    }

    double residual() const noexcept { return residual_; }

  private:
    double residual_;
};

/// Pressure law shape not handled by the spinodal analysis.
class UnsupportedLawError : public Error
{
  public:
    using Error::Error;
};

/// A time step violated its stability restriction (CFL / Courant).
class StepRejected : public Error
{
  public:
    using Error::Error;
};

/// Non-finite values appeared during a run.
class BlowUp : public Error
{
  public:
    using Error::Error;
};

/// Invalid user input (configuration files, CLI arguments).
class ValidationError : public Error
{
  public:
    using Error::Error;
};

}  // namespace spraylab
