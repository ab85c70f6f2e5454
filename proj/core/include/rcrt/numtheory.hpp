#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rcrt/errors.hpp"

namespace rcrt {

// All design-time arithmetic is exact. Residues and probabilities live in
// double precision elsewhere; nothing in this header rounds.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

Int rat_num(const Rat& r);
Int rat_den(const Rat& r);
Int floor_rat(const Rat& r);
Int ceil_rat(const Rat& r);
double to_double(const Rat& r);
double to_double(const Int& n);

struct ExtGcd {
    Int g;  // gcd(a, b), always >= 0
    Int u;  // u*a + v*b == g
    Int v;
};

// Extended Euclid. Requires a, b >= 0 and not both zero.
ExtGcd gcd_ext(const Int& a, const Int& b);

bool coprime(const Int& a, const Int& b);

// Euclidean remainder chain of a coprime pair gamma1 < gamma2:
//   sigma_1 = gamma2 mod gamma1, sigma_{j+1} = sigma_{j-1} mod sigma_j,
// recorded until the chain terminates at 1. The number of robust layers is
// K = depth - 1 (the final full-range layer always exists).
struct RemainderChain {
    std::vector<Int> sigma;  // sigma_1 .. sigma_{K+1}; last element is 1

    int depth() const noexcept { return static_cast<int>(sigma.size()); }
    int K() const noexcept { return static_cast<int>(sigma.size()) - 1; }
    bool operator==(const RemainderChain&) const = default;
};

// Requires 1 < gamma1 < gamma2 and gcd(gamma1, gamma2) == 1; throws
// NonCoprimeError (carrying the gcd) otherwise.
RemainderChain remainder_chain(const Int& gamma1, const Int& gamma2);

// Fibonacci-like family: F_{d,0} = d, F_{d,1} = 1, then the usual recurrence.
// d = 0 is the standard sequence shifted, d = 1 the standard sequence,
// d = 2 the Lucas numbers. Requires d >= 0, k >= 0. Values are memoized
// per seed; safe to call from multiple threads.
Int fib_like(const Int& d, long k);

// F_{d,k} == F_{1,k-1} + d * F_{1,k-2}; requires k >= 2.
bool check_linear_in_seed(const Int& d, long k);

// Mixed d'Ocagne identity:
//   F_{d,s} F_{1,t} - F_{d,s+1} F_{1,t-1} == (-1)^t F_{d,s-t};
// requires s >= t >= 1.
bool check_mixed_docagne(const Int& d, long s, long t);

// (1 + sqrt(5)) / 2
double golden_ratio();

}  // namespace rcrt
