#pragma once

#include <stdexcept>
#include <string>

namespace oscspline {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter or input violates a documented precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The exponential Euler symbol vanishes (|phi| below threshold) at (x, xi).
class SingularSymbol : public Error {
public:
    SingularSymbol(double x, double xi);
    double x() const noexcept { return x_; }
    double xi() const noexcept { return xi_; }

private:
    double x_;
    double xi_;
};

/// Interpolation at the collocation points is unstable for frequency index k.
class InterpolationUnstable : public Error {
public:
    explicit InterpolationUnstable(int k);
    int frequency_index() const noexcept { return k_; }

private:
    int k_;
};

/// Newton iteration hit a numerically singular Jacobian.
class SingularJacobian : public Error {
public:
    explicit SingularJacobian(int iteration);
    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

/// Time integration produced a non-finite state.
class IntegrationFailure : public Error {
public:
    explicit IntegrationFailure(double time);
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Too few crossings in a trajectory to estimate period or amplitude.
class InsufficientData : public Error {
public:
    using Error::Error;
};

}  // namespace oscspline
