#pragma once

#include <stdexcept>
#include <string>

namespace gasp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid parameters or arguments (bad α, m, mesh sizes, sample counts...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Gamma function evaluated at a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Series requested outside its domain of convergence.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// Series failed to reach the requested tolerance within the term cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Kernel evaluated with the source equal to the target.
class CoincidentPointsError : public Error {
public:
    CoincidentPointsError() : Error("coincident points") {}
};

/// Off-surface quadrature requested too close to the surface to be accurate.
class NearSurfaceError : public Error {
public:
    using Error::Error;
};

/// Second-kind system could not be factorized.
class SingularSystemError : public Error {
public:
    SingularSystemError(const std::string& what, double pivot)
        : Error(what), pivot_(pivot) {}

    [[nodiscard]] double pivot() const noexcept { return pivot_; }

private:
    double pivot_;
};

} // namespace gasp
