#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rcrt {

// Bad arguments: preconditions violated by the caller.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A well-formed request that has no solution (e.g. search cap too small).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Moduli that were required to be coprime are not; carries the offending gcd.
class NonCoprimeError : public DomainError {
public:
    NonCoprimeError(const std::string& msg, boost::multiprecision::cpp_int g)
        : DomainError(msg + " (gcd = " + g.str() + ")"), gcd_(std::move(g)) {}

    const boost::multiprecision::cpp_int& gcd() const noexcept { return gcd_; }

private:
    boost::multiprecision::cpp_int gcd_;
};

// A structural invariant failed; indicates a bug, never a caller mistake.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace rcrt
