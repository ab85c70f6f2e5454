#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rcrt/flat_design.hpp"
#include "rcrt/layered_design.hpp"
#include "rcrt/models.hpp"

namespace rcrt {

inline constexpr int kAutoLayer = -1;

// Noisy residue observations. Channel moduli stay exact; residues live in
// double precision (noise is continuous).
struct ResidueVector {
    std::vector<Rat> moduli;       // m_i = m * gamma_i
    std::vector<double> residues;  // r~_i = r_i + e_i
    std::vector<Int> true_n;       // ground-truth folding integers (when folded)
    std::optional<double> true_x;
};

std::vector<Rat> channel_moduli(const ModuliSet& set);
std::vector<Rat> channel_moduli(const LayeredDesign& design);

// r_i = x - floor(x/m_i)*m_i, recording the true folding integers.
ResidueVector fold(const ModuliSet& set, double x);
ResidueVector fold(const LayeredDesign& design, double x);
// Exact variant: folding integers and residues computed in rational
// arithmetic, each residue rounded once at the end.
ResidueVector fold(const LayeredDesign& design, const Rat& x);

ResidueVector add_noise(const ResidueVector& rv, const NoiseModel& noise, SplitStream& rng);

struct DecodeResult {
    std::vector<Int> folding;     // recovered n^_i
    double estimate = 0.0;        // x^ >= 0, mean of per-channel unfolds
    int layer_used = 0;           // 1-based; 1 for flat full-range decoding
    double residual_score = 0.0;  // decoder-specific fit residual
};

// Nearest-offset decoder for one (design, layer): the valid folding pairs for
// x in [0, P_layer), sorted by line offset n2*m2 - n1*m1 = m*(n2*g2 - n1*g1).
// Construction asserts the minimum adjacent offset gap is >= m*sigma_layer,
// which is what makes |e1 - e2| < m*sigma_layer/2 sufficient for recovery.
class PairDecoder {
  public:
    PairDecoder(const LayeredDesign& design, int layer);

    DecodeResult decode(const ResidueVector& rv) const;

    int layer() const noexcept { return layer_; }
    std::size_t table_size() const noexcept { return entries_.size(); }

  private:
    struct Entry {
        Int n1, n2;
        double offset;    // m * (n2*g2 - n1*g1)
        double base_sum;  // n1*m1 + n2*m2
    };
    std::vector<Entry> entries_;  // strictly increasing offset
    int layer_ = 0;
};

// Convenience wrapper over PairDecoder; tables are cached per (design, layer).
// layer = kAutoLayer decodes at the full layer K+1.
DecodeResult decode_layered(const LayeredDesign& design, const ResidueVector& rv,
                            int layer = kAutoLayer);

// Search decoder over the last channel's folding integer; the contract is
// exact recovery whenever every |e_i| < m/4 and x lies in [0, P).
DecodeResult decode_full(const ModuliSet& set, const ResidueVector& rv);
DecodeResult decode_full(const LayeredDesign& design, const ResidueVector& rv);

// Definition of robust reconstruction: every folding integer recovered.
bool is_robust(const DecodeResult& result, const ResidueVector& truth);

}  // namespace rcrt
