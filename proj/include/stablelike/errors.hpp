#pragma once

#include <stdexcept>
#include <string>

namespace stablelike {

// Argument outside the documented mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A series or quadrature failed to reach its accuracy target.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}
    explicit NumericalError(const std::string& what)
        : std::runtime_error(what), achieved_error_(-1.0) {}

    // Best error estimate at the point of failure, or -1 if unknown.
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

// A profile expression left its admissible range at some state x.
class ProfileRangeError : public DomainError {
public:
    using DomainError::DomainError;
};

// alpha(x) straddles 1 on the working grid; neither theorem applies.
class MixedRegimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace stablelike
