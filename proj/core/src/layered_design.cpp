#include "rcrt/layered_design.hpp"

#include <algorithm>
#include <cmath>

namespace rcrt {

namespace {

Int safe_div_exact(const Int& num, const Int& den) {
    if (den == 0 || num % den != 0) throw InternalError("expected exact division");
    return num / den;
}

// Chain, breakpoints, tolerances and invariant checks for a validated pair.
LayeredDesign finalize(const Int& g1, const Int& g2, const Rat& m, std::optional<Rat> rho,
                       std::optional<Int> d, std::optional<Int> zeta, bool verify_seed) {
    if (m <= 0) throw DomainError("layered design: m must be positive");
    LayeredDesign out;
    out.gamma1 = g1;
    out.gamma2 = g2;
    out.m = m;
    out.chain = remainder_chain(g1, g2);
    out.K = out.chain.K();
    out.breakpoints = breakpoints_recursion(g1, g2, m);
    out.tolerances.reserve(out.chain.sigma.size());
    for (const auto& s : out.chain.sigma) out.tolerances.push_back(m / 4 * Rat(s));
    out.d = std::move(d);
    out.zeta = std::move(zeta);
    out.rho = std::move(rho);

    if (out.breakpoints.back() != m * Rat(g1 * g2))
        throw InternalError("layered design: P_{K+1} != m*gamma1*gamma2");
    for (size_t i = 1; i < out.breakpoints.size(); ++i)
        if (out.breakpoints[i] <= out.breakpoints[i - 1])
            throw InternalError("layered design: breakpoints not strictly increasing");
    if (verify_seed && out.d && out.zeta) {
        for (int j = 1; j <= out.K + 1; ++j)
            if (out.chain.sigma[j - 1] != fib_like(*out.d, out.K + 2 - j))
                throw InternalError("layered design: chain does not match the seeded family");
        if (g2 - g1 != fib_like(*out.d, out.K + 1))
            throw InternalError("layered design: gamma gap does not match the seeded family");
    }
    return out;
}

struct SeedPair {
    Int g1, g2, zeta;
};

SeedPair seed_pair(const Rat& rho, int K, const Int& d) {
    Int fK = fib_like(d, K);
    Int fK1 = fib_like(d, K + 1);
    Int zeta = ceil_rat((rho - Rat(fK)) / Rat(fK1));
    if (zeta < 1) zeta = 1;
    Int g1 = zeta * fK1 + fK;
    return {g1, g1 + fK1, zeta};
}

}  // namespace

KStar kstar(const Rat& rho) {
    if (rho <= 1) throw DomainError("kstar: requires rho > 1");
    KStar ks{};
    long K = 1;
    while (Rat(fib_like(Int(1), K + 2)) < rho) ++K;
    ks.exact = K;

    const long double phi = (1.0L + std::sqrt(5.0L)) / 2.0L;
    long double v = std::log(static_cast<long double>(to_double(rho)) * std::sqrt(5.0L)) /
                        std::log(phi) -
                    3.0L;
    ks.binet = std::max(1L, static_cast<long>(std::ceil(v)));
    return ks;
}

LayeredDesign layered_candidate(const Rat& rho, int K, const Int& d,
                                std::optional<Rat> m_max) {
    if (rho <= 1) throw DomainError("layered_candidate: requires rho > 1");
    if (K < 1) throw DomainError("layered_candidate: requires K >= 1");
    if (d < 1) throw DomainError("layered_candidate: requires seed d >= 1");
    SeedPair p = seed_pair(rho, K, d);
    Rat m = m_max ? *m_max / Rat(p.g2) : Rat(1);
    return finalize(p.g1, p.g2, m, rho, d, p.zeta, true);
}

LayeredDesign design_layered(const Rat& rho, int K, std::optional<Rat> m_max) {
    if (rho <= 1) throw DomainError("design_layered: requires rho > 1");
    if (K < 0) throw DomainError("design_layered: requires K >= 0");
    if (K == 0) {
        Int g1 = ceil_rat(rho);
        Rat m = m_max ? *m_max / Rat(g1 + 1) : Rat(1);
        return finalize(g1, g1 + 1, m, rho, std::nullopt, std::nullopt, false);
    }
    std::optional<SeedPair> best;
    Int best_d = 0;
    for (Int d = 1; d <= 3; ++d) {
        SeedPair p = seed_pair(rho, K, d);
        if (!best || p.g2 < best->g2) {
            best = p;
            best_d = d;
        }
    }
    Rat m = m_max ? *m_max / Rat(best->g2) : Rat(1);
    return finalize(best->g1, best->g2, m, rho, best_d, best->zeta, true);
}

LayeredDesign closed_form_small_K(const Rat& rho, int K, std::optional<Rat> m_max) {
    if (rho <= 1) throw DomainError("closed_form_small_K: requires rho > 1");
    if (K == 1) {
        Int zeta = ceil_rat((rho - 1) / 2);
        if (zeta < 1) zeta = 1;
        Rat m = m_max ? *m_max / Rat(2 * zeta + 3) : Rat(1);
        return finalize(2 * zeta + 1, 2 * zeta + 3, m, rho, Int(1), zeta, true);
    }
    if (K == 2) {
        Int c = ceil_rat(rho);
        if (c >= 15 && (c - 3) % 12 == 0) {
            Int zeta = safe_div_exact(c - 3, Int(12)) * 3;
            Rat m = m_max ? *m_max / Rat(4 * zeta + 7) : Rat(1);
            return finalize(4 * zeta + 3, 4 * zeta + 7, m, rho, Int(2), zeta, true);
        }
        Int zeta = ceil_rat((rho - 2) / 3);
        if (zeta < 1) zeta = 1;
        Rat m = m_max ? *m_max / Rat(3 * zeta + 5) : Rat(1);
        return finalize(3 * zeta + 2, 3 * zeta + 5, m, rho, Int(1), zeta, true);
    }
    throw DomainError("closed_form_small_K: K must be 1 or 2");
}

LayeredDesign layered_from_pair(const Int& gamma1, const Int& gamma2, const Rat& m,
                                std::optional<Rat> rho) {
    RemainderChain chain = remainder_chain(gamma1, gamma2);  // validates the pair
    int K = chain.K();
    std::optional<Int> d, zeta;
    if (K >= 1) {
        Int dd = chain.sigma[K - 1] - 1;  // sigma_K = F_{d,2} = d + 1
        if (dd >= 1 && gamma2 - gamma1 == chain.sigma.front()) {
            bool family = true;
            for (int j = 1; j <= K + 1 && family; ++j)
                family = chain.sigma[j - 1] == fib_like(dd, K + 2 - j);
            if (family) {
                Int fK = fib_like(dd, K);
                Int fK1 = fib_like(dd, K + 1);
                Int num = gamma1 - fK;
                if (num >= fK1 && num % fK1 == 0) {
                    d = dd;
                    zeta = num / fK1;
                }
            }
        }
    }
    return finalize(gamma1, gamma2, m, std::move(rho), std::move(d), std::move(zeta), false);
}

std::vector<Rat> breakpoints_thm(const LayeredDesign& design) {
    if (design.K == 0) return {design.m * Rat(design.gamma1 * design.gamma2)};
    if (!design.d || !design.zeta)
        throw DomainError("breakpoints_thm: design lacks seed metadata");
    const Int& zeta = *design.zeta;
    std::vector<Rat> out;
    out.reserve(design.K + 1);
    for (int j = 1; j <= design.K; ++j) {
        if (j % 2 == 1) {
            long j0 = (j + 1) / 2;
            out.push_back(design.m * Rat(design.gamma1 * fib_like(zeta, 2 * j0)));
        } else {
            long j0 = j / 2;
            out.push_back(design.m * Rat(design.gamma2 * fib_like(zeta - 1, 2 * j0 + 1)));
        }
    }
    out.push_back(design.m * Rat(design.gamma1 * design.gamma2));
    return out;
}

std::vector<Rat> breakpoints_recursion(const Int& gamma1, const Int& gamma2, const Rat& m) {
    if (m <= 0) throw DomainError("breakpoints_recursion: m must be positive");
    RemainderChain chain = remainder_chain(gamma1, gamma2);
    Int n_prev2 = gamma1;  // N_{-1}
    Int n_prev1 = gamma2;  // N_0
    Int s_prev = gamma1;   // sigma_0
    std::vector<Rat> out;
    out.reserve(chain.sigma.size());
    for (const auto& s : chain.sigma) {
        Int n = n_prev2 + (s_prev / s) * (n_prev1 - s);
        out.push_back(m * Rat(n));
        n_prev2 = n_prev1;
        n_prev1 = n;
        s_prev = s;
    }
    if (n_prev1 != gamma1 * gamma2)
        throw InternalError("breakpoints_recursion: N_{K+1} != gamma1*gamma2");
    return out;
}

int layer_of(const LayeredDesign& design, const Rat& x) {
    if (x < 0) throw DomainError("layer_of: x must be nonnegative");
    for (int j = 1; j <= design.K + 1; ++j)
        if (x < design.breakpoints[j - 1]) return j;
    throw DomainError("layer_of: x is out of range (x >= P_{K+1})");
}

Rat staircase(const LayeredDesign& design, const Rat& x) {
    return design.tolerances[layer_of(design, x) - 1];
}

ScalingReport scaling_report(const LayeredDesign& design) {
    ScalingReport r;
    const auto& P = design.breakpoints;
    const auto& tau = design.tolerances;
    for (size_t j = 0; j + 1 < tau.size(); ++j) r.tau_ratios.push_back(tau[j] / tau[j + 1]);
    if (P.size() >= 2) {
        r.p2_over_p1 = P[1] / P[0];
        r.pK_over_pK1 = P[P.size() - 2] / P.back();
    }
    r.p1_over_pK1 = P.front() / P.back();
    for (size_t j = 0; j + 2 < P.size(); ++j) r.two_step_ratios.push_back(P[j + 2] / P[j]);
    if (design.d && design.zeta) {
        r.fib_reference = Rat(1, fib_like(*design.d, design.K + 1));
        r.seed_reference = Rat(1, *design.d + 1);
    }
    return r;
}

std::optional<std::pair<Int, Int>> brute_force_layered(const Rat& rho, int K,
                                                       const Int& gamma2_cap) {
    if (rho <= 1) throw DomainError("brute_force_layered: requires rho > 1");
    if (K < 0) throw DomainError("brute_force_layered: requires K >= 0");
    Int lo = ceil_rat(rho);
    if (lo < 2) lo = 2;
    for (Int g2 = lo + 1; g2 <= gamma2_cap; ++g2) {
        for (Int g1 = lo; g1 < g2; ++g1) {
            if (!coprime(g1, g2)) continue;
            if (remainder_chain(g1, g2).K() == K) return std::make_pair(g1, g2);
        }
    }
    return std::nullopt;
}

}  // namespace rcrt
