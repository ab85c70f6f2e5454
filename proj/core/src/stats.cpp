#include "rcrt/stats.hpp"

#include <algorithm>
#include <cmath>

namespace rcrt {

double interval_mass(const SignalPrior& prior, double a, double b) {
    if (!(a >= 0) || a > b) throw DomainError("interval_mass: requires 0 <= a <= b");
    switch (prior.kind) {
        case PriorKind::Uniform: {
            const double p = prior.param;
            return (std::min(b, p) - std::min(a, p)) / p;
        }
        case PriorKind::Rayleigh: {
            const double two_b2 = 2.0 * prior.param * prior.param;
            return std::exp(-a * a / two_b2) - std::exp(-b * b / two_b2);
        }
        case PriorKind::Exponential:
            return std::exp(-a / prior.param) - std::exp(-b / prior.param);
        case PriorKind::FoldedGaussian: {
            const double s = prior.param * std::sqrt(2.0);
            return std::erf(b / s) - std::erf(a / s);
        }
    }
    throw InternalError("interval_mass: unknown prior kind");
}

double noise_pass_prob(const NoiseModel& noise, double tau) {
    if (!(tau > 0)) throw DomainError("noise_pass_prob: requires tau > 0");
    if (noise.param == 0.0) return 1.0;
    switch (noise.kind) {
        case NoiseKind::Gaussian:
            return std::erf(tau / noise.param);
        case NoiseKind::Uniform: {
            if (tau > noise.param) return 1.0;
            const double r = tau / noise.param;
            return 2.0 * r - r * r;
        }
    }
    throw InternalError("noise_pass_prob: unknown noise kind");
}

SuccessEstimate success_lower_bound(const LayeredDesign& design, const SignalPrior& prior,
                                    const NoiseModel& noise) {
    SuccessEstimate est;
    double prev = 0.0;
    for (int j = 1; j <= design.K + 1; ++j) {
        const double pj = to_double(design.breakpoints[j - 1]);
        const double mass = interval_mass(prior, prev, pj);
        const double pass = noise_pass_prob(noise, to_double(design.tolerances[j - 1]));
        est.layer_mass.push_back(mass);
        est.layer_pass.push_back(pass);
        est.eta += mass * pass;
        prev = pj;
    }
    return est;
}

SuccessEstimate success_lower_bound(const ModuliSet& set, const SignalPrior& prior,
                                    const NoiseModel& noise) {
    SuccessEstimate est;
    const double tau = to_double(set.tau);
    const double mass = interval_mass(prior, 0.0, to_double(set.P));
    double per_channel = 1.0;
    if (set.tau <= 0) throw DomainError("success_lower_bound: nonpositive tolerance");
    if (noise.param > 0.0) {
        switch (noise.kind) {
            case NoiseKind::Gaussian:
                per_channel = std::erf(tau / (std::sqrt(2.0) * noise.param));
                break;
            case NoiseKind::Uniform:
                per_channel = std::min(1.0, tau / noise.param);
                break;
        }
    }
    const double pass = std::pow(per_channel, static_cast<double>(set.L()));
    est.layer_mass.push_back(mass);
    est.layer_pass.push_back(pass);
    est.eta = mass * pass;
    return est;
}

namespace {

double draw_in_range(const SignalPrior& prior, SplitStream& rng, double limit,
                     long& rejected) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        double x = prior.sample(rng);
        if (x < limit) return x;
        ++rejected;
    }
    throw DomainError("monte_carlo: prior mass beyond the design range is too large");
}

}  // namespace

MonteCarloResult monte_carlo(const LayeredDesign& design, const SignalPrior& prior,
                             const NoiseModel& noise, long trials, std::uint64_t master_seed,
                             Protocol protocol) {
    if (trials < 1) throw DomainError("monte_carlo: requires trials >= 1");

    std::vector<PairDecoder> decoders;
    decoders.reserve(design.K + 1);
    for (int j = 1; j <= design.K + 1; ++j) decoders.emplace_back(design, j);

    std::vector<double> breaks;
    breaks.reserve(design.breakpoints.size());
    for (const auto& p : design.breakpoints) breaks.push_back(to_double(p));
    const double limit = breaks.back();

    MonteCarloResult res;
    res.trials = trials;
    double err2 = 0.0, x2 = 0.0;
    for (long t = 0; t < trials; ++t) {
        SplitStream rng(master_seed, static_cast<std::uint64_t>(t));
        const double x = draw_in_range(prior, rng, limit, res.rejected);
        ResidueVector noisy = add_noise(fold(design, x), noise, rng);
        int layer = design.K + 1;
        if (protocol == Protocol::Layered) {
            layer = static_cast<int>(std::upper_bound(breaks.begin(), breaks.end(), x) -
                                     breaks.begin()) +
                    1;
            layer = std::min(layer, design.K + 1);
        }
        const DecodeResult dec = decoders[layer - 1].decode(noisy);
        if (is_robust(dec, noisy)) ++res.successes;
        err2 += (x - dec.estimate) * (x - dec.estimate);
        x2 += x * x;
    }
    res.success_rate = static_cast<double>(res.successes) / static_cast<double>(trials);
    res.rrse = x2 > 0 ? std::sqrt(err2 / x2) : 0.0;
    return res;
}

MonteCarloResult monte_carlo(const ModuliSet& set, const SignalPrior& prior,
                             const NoiseModel& noise, long trials, std::uint64_t master_seed) {
    if (trials < 1) throw DomainError("monte_carlo: requires trials >= 1");
    const double limit = to_double(set.P);

    MonteCarloResult res;
    res.trials = trials;
    double err2 = 0.0, x2 = 0.0;
    for (long t = 0; t < trials; ++t) {
        SplitStream rng(master_seed, static_cast<std::uint64_t>(t));
        const double x = draw_in_range(prior, rng, limit, res.rejected);
        ResidueVector noisy = add_noise(fold(set, x), noise, rng);
        const DecodeResult dec = decode_full(set, noisy);
        if (is_robust(dec, noisy)) ++res.successes;
        err2 += (x - dec.estimate) * (x - dec.estimate);
        x2 += x * x;
    }
    res.success_rate = static_cast<double>(res.successes) / static_cast<double>(trials);
    res.rrse = x2 > 0 ? std::sqrt(err2 / x2) : 0.0;
    return res;
}

}  // namespace rcrt
