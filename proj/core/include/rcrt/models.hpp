#pragma once

#include "rcrt/errors.hpp"
#include "rcrt/rng.hpp"

namespace rcrt {

enum class NoiseKind { Gaussian, Uniform };

// Per-channel residue perturbation: Gaussian(sigma) or Uniform(-eps, eps).
// A zero parameter means noiseless.
struct NoiseModel {
    NoiseKind kind = NoiseKind::Gaussian;
    double param = 0.0;

    static NoiseModel gaussian(double sigma);
    static NoiseModel uniform(double epsilon);

    double sample(SplitStream& rng) const;

    bool operator==(const NoiseModel&) const = default;
};

enum class PriorKind { Uniform, Rayleigh, Exponential, FoldedGaussian };

// Signal amplitude prior on [0, inf): Uniform(0, upper), Rayleigh(beta),
// Exponential(lambda) or FoldedGaussian(theta).
struct SignalPrior {
    PriorKind kind = PriorKind::Uniform;
    double param = 0.0;

    static SignalPrior uniform(double upper);
    static SignalPrior rayleigh(double beta);
    static SignalPrior exponential(double lambda);
    static SignalPrior folded_gaussian(double theta);

    double sample(SplitStream& rng) const;

    bool operator==(const SignalPrior&) const = default;
};

}  // namespace rcrt
