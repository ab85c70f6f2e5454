#pragma once

#include <cstdint>
#include <vector>

#include "rcrt/codec.hpp"

namespace rcrt {

// Prior mass of [a, b); b may be +infinity. Requires 0 <= a <= b.
double interval_mass(const SignalPrior& prior, double a, double b);

// Probability that the channel-difference event |e1 - e2| < 2*tau holds for
// two independent draws. Gaussian(s): erf(tau/s). Uniform(eps): 1 when
// tau >= eps, else 2*(tau/eps) - (tau/eps)^2. Zero parameter -> 1.
double noise_pass_prob(const NoiseModel& noise, double tau);

struct SuccessEstimate {
    std::vector<double> layer_mass;  // prior mass of [P_{j-1}, P_j)
    std::vector<double> layer_pass;  // difference-event probability at tau_j
    double eta = 0.0;                // sum_j mass_j * pass_j, a lower bound
};

// Layered success lower bound: a trial succeeds at least whenever x falls in
// layer j and |e1 - e2| < m*sigma_j/2 = 2*tau_j.
SuccessEstimate success_lower_bound(const LayeredDesign& design, const SignalPrior& prior,
                                    const NoiseModel& noise);

// Flat full-range analogue: all L channels must stay within m/4.
SuccessEstimate success_lower_bound(const ModuliSet& set, const SignalPrior& prior,
                                    const NoiseModel& noise);

enum class Protocol { Layered, Flat };

struct MonteCarloResult {
    long trials = 0;
    long successes = 0;
    double success_rate = 0.0;
    double rrse = 0.0;   // sqrt(sum (x - x^)^2 / sum x^2)
    long rejected = 0;   // prior draws discarded for lying beyond the range
};

// Per trial t: draw x from the prior on stream (master_seed, t), resampling
// while x >= P_{K+1}; fold; perturb; decode at the layer containing x
// (Protocol::Layered) or at the full layer (Protocol::Flat); record
// robustness and squared error. Bit-stable for fixed master_seed.
MonteCarloResult monte_carlo(const LayeredDesign& design, const SignalPrior& prior,
                             const NoiseModel& noise, long trials, std::uint64_t master_seed,
                             Protocol protocol = Protocol::Layered);

// Flat sets always decode with the full search decoder.
MonteCarloResult monte_carlo(const ModuliSet& set, const SignalPrior& prior,
                             const NoiseModel& noise, long trials, std::uint64_t master_seed);

}  // namespace rcrt
