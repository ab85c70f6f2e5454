#include "rcrt/numtheory.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace rcrt {

Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

Int floor_rat(const Rat& r) {
    Int n = rat_num(r);
    Int d = rat_den(r);  // always positive in canonical form
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

double to_double(const Rat& r) { return r.convert_to<double>(); }
double to_double(const Int& n) { return n.convert_to<double>(); }

ExtGcd gcd_ext(const Int& a, const Int& b) {
    if (a < 0 || b < 0) throw DomainError("gcd_ext: arguments must be nonnegative");
    if (a == 0 && b == 0) throw DomainError("gcd_ext: gcd(0, 0) is undefined");
    // Iterative extended Euclid on (r0, r1) with Bezout rows.
    Int r0 = a, r1 = b;
    Int u0 = 1, v0 = 0;
    Int u1 = 0, v1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        r0 -= q * r1;
        u0 -= q * u1;
        v0 -= q * v1;
        std::swap(r0, r1);
        std::swap(u0, u1);
        std::swap(v0, v1);
    }
    return ExtGcd{std::move(r0), std::move(u0), std::move(v0)};
}

bool coprime(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b) == 1;
}

RemainderChain remainder_chain(const Int& gamma1, const Int& gamma2) {
    if (!(Int(1) < gamma1 && gamma1 < gamma2))
        throw DomainError("remainder_chain: requires 1 < gamma1 < gamma2");
    Int g = boost::multiprecision::gcd(gamma1, gamma2);
    if (g != 1) throw NonCoprimeError("remainder_chain: moduli share a factor", g);

    RemainderChain chain;
    Int prev = gamma1;        // sigma_0
    Int cur = gamma2 % gamma1;  // sigma_1
    while (true) {
        chain.sigma.push_back(cur);
        if (cur == 1) break;
        Int next = prev % cur;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return chain;
}

namespace {

// Base sequence F_{1,k}: 1, 1, 2, 3, 5, ...
const Int& fib_base(long k) {
    thread_local std::vector<Int> memo{1, 1};
    while (static_cast<long>(memo.size()) <= k) {
        size_t n = memo.size();
        memo.push_back(memo[n - 1] + memo[n - 2]);
    }
    return memo[static_cast<size_t>(k)];
}

}  // namespace

Int fib_like(const Int& d, long k) {
    if (d < 0) throw DomainError("fib_like: seed must be nonnegative");
    if (k < 0) throw DomainError("fib_like: index must be nonnegative");
    if (k == 0) return d;
    if (k == 1) return 1;
    thread_local std::map<Int, std::vector<Int>> memo;
    auto& seq = memo[d];
    if (seq.empty()) seq = {d, Int(1)};
    while (static_cast<long>(seq.size()) <= k) {
        size_t n = seq.size();
        seq.push_back(seq[n - 1] + seq[n - 2]);
    }
    return seq[static_cast<size_t>(k)];
}

bool check_linear_in_seed(const Int& d, long k) {
    if (k < 2) throw DomainError("check_linear_in_seed: requires k >= 2");
    return fib_like(d, k) == fib_base(k - 1) + d * fib_base(k - 2);
}

bool check_mixed_docagne(const Int& d, long s, long t) {
    if (!(s >= t && t >= 1)) throw DomainError("check_mixed_docagne: requires s >= t >= 1");
    Int lhs = fib_like(d, s) * fib_base(t) - fib_like(d, s + 1) * fib_base(t - 1);
    Int rhs = fib_like(d, s - t);
    if (t % 2 != 0) rhs = -rhs;
    return lhs == rhs;
}

double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

}  // namespace rcrt
