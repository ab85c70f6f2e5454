#include "rcrt/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

namespace rcrt {

std::vector<Rat> channel_moduli(const ModuliSet& set) {
    std::vector<Rat> out;
    out.reserve(set.gammas.size());
    for (const auto& g : set.gammas) out.push_back(set.m * Rat(g));
    return out;
}

std::vector<Rat> channel_moduli(const LayeredDesign& design) {
    return {design.m * Rat(design.gamma1), design.m * Rat(design.gamma2)};
}

namespace {

ResidueVector fold_real(std::vector<Rat> moduli, double x) {
    if (x < 0 || !std::isfinite(x)) throw DomainError("fold: x must be finite and nonnegative");
    ResidueVector rv;
    rv.moduli = std::move(moduli);
    rv.true_x = x;
    for (const auto& mi : rv.moduli) {
        double md = to_double(mi);
        if (x / md > 9e18) throw DomainError("fold: x too large for this modulus");
        Int n(static_cast<long long>(std::floor(x / md)));
        double r = x - to_double(Rat(n) * mi);
        while (r < 0) {
            --n;
            r = x - to_double(Rat(n) * mi);
        }
        while (r >= md) {
            ++n;
            r = x - to_double(Rat(n) * mi);
        }
        rv.true_n.push_back(n);
        rv.residues.push_back(r);
    }
    return rv;
}

ResidueVector fold_exact(std::vector<Rat> moduli, const Rat& x) {
    if (x < 0) throw DomainError("fold: x must be nonnegative");
    ResidueVector rv;
    rv.moduli = std::move(moduli);
    rv.true_x = to_double(x);
    for (const auto& mi : rv.moduli) {
        Int n = floor_rat(x / mi);
        rv.true_n.push_back(n);
        rv.residues.push_back(to_double(x - Rat(n) * mi));
    }
    return rv;
}

}  // namespace

ResidueVector fold(const ModuliSet& set, double x) { return fold_real(channel_moduli(set), x); }

ResidueVector fold(const LayeredDesign& design, double x) {
    return fold_real(channel_moduli(design), x);
}

ResidueVector fold(const LayeredDesign& design, const Rat& x) {
    return fold_exact(channel_moduli(design), x);
}

ResidueVector add_noise(const ResidueVector& rv, const NoiseModel& noise, SplitStream& rng) {
    ResidueVector out = rv;
    for (auto& r : out.residues) r += noise.sample(rng);
    return out;
}

PairDecoder::PairDecoder(const LayeredDesign& design, int layer) {
    if (layer == kAutoLayer) layer = design.K + 1;
    if (layer < 1 || layer > design.K + 1)
        throw DomainError("PairDecoder: layer out of range");
    layer_ = layer;

    Rat span = design.breakpoints[layer - 1] / design.m;
    if (rat_den(span) != 1)
        throw InternalError("PairDecoder: breakpoint is not an integer multiple of m");
    Int N = rat_num(span);  // valid pairs cover x/m in [0, N)
    if (N < 1) throw DomainError("PairDecoder: layer range shorter than one period");

    const Int& g1 = design.gamma1;
    const Int& g2 = design.gamma2;
    const Rat m1 = design.m * Rat(g1);
    const Rat m2 = design.m * Rat(g2);

    struct Raw {
        Int c, n1, n2;
    };
    std::vector<Raw> raw;
    Int n1 = 0, n2 = 0;
    Int next1 = g1, next2 = g2;
    raw.push_back({Int(0), n1, n2});
    while (true) {
        // next1 == next2 < g1*g2 is impossible for a coprime pair.
        const Int& nxt = next1 < next2 ? next1 : next2;
        if (nxt >= N) break;
        if (next1 < next2) {
            ++n1;
            next1 += g1;
        } else {
            ++n2;
            next2 += g2;
        }
        raw.push_back({n2 * g2 - n1 * g1, n1, n2});
    }

    std::sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) { return a.c < b.c; });
    const Int& sigma = design.chain.sigma[layer - 1];
    for (size_t i = 1; i < raw.size(); ++i)
        if (raw[i].c - raw[i - 1].c < sigma)
            throw InternalError("PairDecoder: offset gap below m*sigma_layer");

    entries_.reserve(raw.size());
    for (const auto& r : raw) {
        Entry e;
        e.n1 = r.n1;
        e.n2 = r.n2;
        e.offset = to_double(design.m * Rat(r.c));
        e.base_sum = to_double(Rat(r.n1) * m1 + Rat(r.n2) * m2);
        entries_.push_back(std::move(e));
    }
}

DecodeResult PairDecoder::decode(const ResidueVector& rv) const {
    if (rv.residues.size() != 2) throw DomainError("PairDecoder: expected two residues");
    const double r0 = rv.residues[0];
    const double r1 = rv.residues[1];
    const double dtilde = r0 - r1;

    auto it = std::lower_bound(entries_.begin(), entries_.end(), dtilde,
                               [](const Entry& e, double v) { return e.offset < v; });
    const Entry* best = nullptr;
    double best_dist = 0.0;
    double best_estimate = 0.0;
    auto consider = [&](const Entry& e) {
        double dist = std::abs(dtilde - e.offset);
        double estimate = (e.base_sum + r0 + r1) / 2.0;
        if (!best || dist < best_dist || (dist == best_dist && estimate < best_estimate)) {
            best = &e;
            best_dist = dist;
            best_estimate = estimate;
        }
    };
    if (it != entries_.end()) consider(*it);
    if (it != entries_.begin()) consider(*(it - 1));

    DecodeResult res;
    res.folding = {best->n1, best->n2};
    res.estimate = std::max(0.0, best_estimate);
    res.layer_used = layer_;
    res.residual_score = best_dist;
    return res;
}

namespace {

struct DecoderKey {
    Int g1, g2;
    Rat m;
    int layer;

    bool operator<(const DecoderKey& o) const {
        if (g1 != o.g1) return g1 < o.g1;
        if (g2 != o.g2) return g2 < o.g2;
        if (m != o.m) return m < o.m;
        return layer < o.layer;
    }
};

std::mutex g_decoder_mutex;
std::map<DecoderKey, std::shared_ptr<const PairDecoder>> g_decoder_cache;

std::shared_ptr<const PairDecoder> cached_decoder(const LayeredDesign& design, int layer) {
    DecoderKey key{design.gamma1, design.gamma2, design.m, layer};
    std::lock_guard<std::mutex> lock(g_decoder_mutex);
    auto it = g_decoder_cache.find(key);
    if (it != g_decoder_cache.end()) return it->second;
    if (g_decoder_cache.size() >= 256) g_decoder_cache.clear();
    auto dec = std::make_shared<const PairDecoder>(design, layer);
    g_decoder_cache.emplace(std::move(key), dec);
    return dec;
}

}  // namespace

DecodeResult decode_layered(const LayeredDesign& design, const ResidueVector& rv, int layer) {
    if (layer == kAutoLayer) layer = design.K + 1;
    return cached_decoder(design, layer)->decode(rv);
}

namespace {

DecodeResult decode_full_impl(const std::vector<Rat>& moduli, const ResidueVector& rv,
                              const Int& search, int layer_used) {
    const size_t L = moduli.size();
    if (L < 2) throw DomainError("decode_full: needs at least two moduli");
    if (rv.residues.size() != L) throw DomainError("decode_full: residue count mismatch");
    if (search > Int(1000000000))
        throw InfeasibleError("decode_full: search space exceeds 1e9 candidates");

    std::vector<double> md(L);
    for (size_t i = 0; i < L; ++i) md[i] = to_double(moduli[i]);

    const long long limit = static_cast<long long>(search);
    const double r_last = rv.residues[L - 1];

    DecodeResult best;
    double best_score = std::numeric_limits<double>::infinity();
    std::vector<Int> folding(L);
    for (long long nl = 0; nl < limit; ++nl) {
        const double xc = static_cast<double>(nl) * md[L - 1] + r_last;
        double score = 0.0;
        double unfold_sum = 0.0;
        for (size_t i = 0; i < L; ++i) {
            long long n = (i + 1 == L) ? nl
                                       : static_cast<long long>(
                                             std::llround((xc - rv.residues[i]) / md[i]));
            const double unfold = static_cast<double>(n) * md[i] + rv.residues[i];
            score += std::abs(xc - unfold);
            unfold_sum += unfold;
            folding[i] = n;
        }
        if (score < best_score) {
            best_score = score;
            best.folding = folding;
            best.estimate = std::max(0.0, unfold_sum / static_cast<double>(L));
        }
    }
    best.layer_used = layer_used;
    best.residual_score = best_score;
    return best;
}

}  // namespace

DecodeResult decode_full(const ModuliSet& set, const ResidueVector& rv) {
    Int search = 1;
    for (size_t i = 0; i + 1 < set.gammas.size(); ++i) search *= set.gammas[i];
    return decode_full_impl(channel_moduli(set), rv, search, 1);
}

DecodeResult decode_full(const LayeredDesign& design, const ResidueVector& rv) {
    return decode_full_impl(channel_moduli(design), rv, design.gamma1, design.K + 1);
}

bool is_robust(const DecodeResult& result, const ResidueVector& truth) {
    if (truth.true_n.empty()) throw DomainError("is_robust: truth carries no folding integers");
    if (result.folding.size() != truth.true_n.size())
        throw DomainError("is_robust: channel count mismatch");
    return std::equal(result.folding.begin(), result.folding.end(), truth.true_n.begin());
}

}  // namespace rcrt
