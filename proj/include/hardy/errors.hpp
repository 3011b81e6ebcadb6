#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Precondition violated by an argument (p <= 1, L <= 0, k < 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A witness function or sequence is not strictly positive where it must be.
class WitnessInvalid : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The mu-weight radicand went nonpositive: A is too small for this n.
class InvalidWeight : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double achieved_;
};

}  // namespace hardy
