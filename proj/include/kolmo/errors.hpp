#pragma once

#include <stdexcept>
#include <string>

namespace kolmo {

/// Argument outside the domain of the function (e.g. |x| > 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact request beyond a configured table size.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A recursion step would divide by zero.
class SingularDenominatorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Index outside 1..N style ranges.
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Covariance factorization failed even at the largest permitted jitter.
class FactorizationError : public std::runtime_error {
public:
    FactorizationError(const std::string& what, double jitter)
        : std::runtime_error(what), jitter_(jitter) {}
    double jitter() const noexcept { return jitter_; }

private:
    double jitter_;
};

}  // namespace kolmo
