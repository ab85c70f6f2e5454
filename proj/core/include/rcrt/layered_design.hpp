#pragma once

#include <optional>
#include <vector>

#include "rcrt/numtheory.hpp"

namespace rcrt {

// Two-moduli design m_i = m * gamma_i whose Euclidean remainder chain yields
// K robust layers. Layer j covers x in [P_{j-1}, P_j) (P_0 = 0) with
// per-residue tolerance tau_j = (m/4) * sigma_j.
struct LayeredDesign {
    Int gamma1;
    Int gamma2;
    Rat m;
    int K = 0;
    RemainderChain chain;          // sigma_1 .. sigma_{K+1}
    std::vector<Rat> breakpoints;  // P_1 .. P_{K+1}
    std::vector<Rat> tolerances;   // tau_1 .. tau_{K+1}

    // Seed metadata, present when the pair belongs to the F_{d,k} family
    // (gamma1 = zeta*F_{d,K+1} + F_{d,K}, gamma2 = gamma1 + F_{d,K+1}).
    std::optional<Int> d;
    std::optional<Int> zeta;

    std::optional<Rat> rho;  // requested range ratio, when known

    bool operator==(const LayeredDesign&) const = default;

    Rat m_max() const { return m * Rat(gamma2); }
    const Rat& range() const { return breakpoints.back(); }  // P_{K+1}
};

struct KStar {
    long exact;  // min{K >= 1 : rho <= F_{1,K+2}}, by sequence scan
    long binet;  // max{1, ceil(ln(rho*sqrt(5))/ln(phi) - 3)}
};

// Smallest layer count whose pure-Fibonacci pair already covers rho.
KStar kstar(const Rat& rho);

// The seed-d candidate pair: zeta_d = max(1, ceil((rho - F_{d,K})/F_{d,K+1})).
// Requires K >= 1, d >= 1.
LayeredDesign layered_candidate(const Rat& rho, int K, const Int& d,
                                std::optional<Rat> m_max = {});

// Scans d in {1,2,3} and keeps the candidate with the smallest gamma2
// (ties toward the smallest d). K = 0 degenerates to the consecutive pair
// (ceil(rho), ceil(rho)+1). m defaults to 1 when no m_max is given,
// otherwise m = m_max / gamma2.
LayeredDesign design_layered(const Rat& rho, int K, std::optional<Rat> m_max = {});

// Direct formulas for K = 1 and K = 2; must agree with design_layered.
LayeredDesign closed_form_small_K(const Rat& rho, int K, std::optional<Rat> m_max = {});

// Wraps an explicit coprime pair, deriving chain, breakpoints and tolerances.
// Seed metadata is recovered when the chain matches the F_{d,k} family.
LayeredDesign layered_from_pair(const Int& gamma1, const Int& gamma2, const Rat& m,
                                std::optional<Rat> rho = {});

// Breakpoints from the closed forms
//   P_{2j0-1} = m*gamma1*F_{zeta,2j0},  P_{2j0} = m*gamma2*F_{zeta-1,2j0+1},
//   P_{K+1}   = m*gamma1*gamma2;
// requires seed metadata for K >= 1.
std::vector<Rat> breakpoints_thm(const LayeredDesign& design);

// Breakpoints from the recursion
//   N_{-1} = gamma1, N_0 = gamma2,
//   N_j = N_{j-2} + floor(sigma_{j-1}/sigma_j) * (N_{j-1} - sigma_j)
// with sigma_0 = gamma1; P_j = m * N_j. Works for any coprime pair.
std::vector<Rat> breakpoints_recursion(const Int& gamma1, const Int& gamma2, const Rat& m);

// 1-based index j of the layer containing x: P_{j-1} <= x < P_j.
int layer_of(const LayeredDesign& design, const Rat& x);

// Staircase tolerance T(x) = tau_{layer_of(x)}.
Rat staircase(const LayeredDesign& design, const Rat& x);

struct ScalingReport {
    std::vector<Rat> tau_ratios;        // tau_j / tau_{j+1}, j = 1..K
    std::optional<Rat> p2_over_p1;      // equals gamma2/gamma1 when K >= 2
    Rat p1_over_pK1;                    // P_1 / P_{K+1}
    std::optional<Rat> pK_over_pK1;     // P_K / P_{K+1}, K >= 1
    std::vector<Rat> two_step_ratios;   // P_{j+2} / P_j, j = 1..K-1
    std::optional<Rat> fib_reference;   // 1 / F_{d,K+1} (needs seed metadata)
    std::optional<Rat> seed_reference;  // 1 / (d+1)
};

ScalingReport scaling_report(const LayeredDesign& design);

// Exhaustive oracle: the coprime pair with minimal gamma2 (then minimal
// gamma1) such that gamma1 >= rho and the chain has exactly K robust layers.
// Scans gamma2 up to gamma2_cap; nullopt when nothing qualifies.
std::optional<std::pair<Int, Int>> brute_force_layered(const Rat& rho, int K,
                                                       const Int& gamma2_cap);

}  // namespace rcrt
