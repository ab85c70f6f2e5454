#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcrt/numtheory.hpp"

namespace rcrt {

// A full-layer moduli design. The physical moduli are m * gammas[i]; the
// largest one equals m_max, so m = m_max / gammas.back(). With rho =
// n_th / m_max > 1, feasibility means the product of all gammas except the
// largest is at least rho.
struct ModuliSet {
    std::vector<Int> gammas;  // strictly ascending, pairwise coprime
    Rat rho;
    Rat m_max;
    Rat m;    // m_max / gammas.back()
    Rat P;    // dynamic range: m * prod(gammas)
    Rat tau;  // per-channel error tolerance: m / 4
    std::string case_label;

    int L() const noexcept { return static_cast<int>(gammas.size()); }

    bool operator==(const ModuliSet&) const = default;
};

// Smallest n >= lo with n(n-1) >= rho (two factors) or n(n-1)(n-2) >= rho
// (three factors).
Int factorial_floor(const Rat& rho, int factors, const Int& lo);

// Closed-form optimal design for L in {2, 3, 4}. Optimality means the
// largest gamma is minimal among all feasible pairwise-coprime sets, hence
// the channel scale m = m_max / gamma_L is maximal. Requires rho > 1.
// If m_max is not given it defaults to gamma_L (so m = 1).
ModuliSet design_flat(int L, const Rat& rho, std::optional<Rat> m_max = {});

// Near-optimal design for L in {4, 5, 6}. For L = 4 an odd anchor is forced
// so only the two odd-anchor case shapes are needed; for L = 5, 6 prime
// channels close to rho^(1/(L-1)) are appended and the residual product
// requirement is re-solved with the four-moduli table. Feasible but not
// certified optimal.
ModuliSet design_flat_heuristic(int L, const Rat& rho, std::optional<Rat> m_max = {});

// Exhaustive reference search: minimal gamma_L, ties broken by the
// lexicographically smallest tuple. Throws InfeasibleError if nothing is
// feasible with gamma_L <= gamma_cap.
ModuliSet brute_force_flat(int L, const Rat& rho, const Int& gamma_cap,
                           std::optional<Rat> m_max = {});

// Three-moduli baselines: structured closed form vs best all-prime triple
// vs best {2^n - 1, 2^n, 2^n + 1} triple at the same rho and m_max.
struct BaselineComparison {
    ModuliSet structured;
    ModuliSet prime;
    ModuliSet power_of_two;
    Rat gain_vs_prime;         // m_structured / m_prime
    Rat gain_vs_power_of_two;  // m_structured / m_power_of_two
};

BaselineComparison compare_baselines(const Rat& rho, std::optional<Rat> m_max = {},
                                     std::optional<Int> prime_cap = {});

// Replace m by floor(m * 10^decimals) / 10^decimals and rescale P and tau
// accordingly. Throws DomainError if the truncated scale is zero.
ModuliSet truncate_scale(const ModuliSet& set, int decimals);

// Pairwise coprimality plus the product constraint; used by tests and
// asserted (as an internal invariant) by every designer above.
bool flat_feasible(const std::vector<Int>& gammas, const Rat& rho);

bool is_prime(const Int& n);

}  // namespace rcrt
