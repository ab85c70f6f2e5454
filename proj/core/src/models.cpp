#include "rcrt/models.hpp"

#include <cmath>

namespace rcrt {

NoiseModel NoiseModel::gaussian(double sigma) {
    if (sigma < 0 || !std::isfinite(sigma))
        throw DomainError("NoiseModel: sigma must be finite and nonnegative");
    return {NoiseKind::Gaussian, sigma};
}

NoiseModel NoiseModel::uniform(double epsilon) {
    if (epsilon < 0 || !std::isfinite(epsilon))
        throw DomainError("NoiseModel: epsilon must be finite and nonnegative");
    return {NoiseKind::Uniform, epsilon};
}

double NoiseModel::sample(SplitStream& rng) const {
    switch (kind) {
        case NoiseKind::Gaussian:
            return param * rng.next_gaussian();
        case NoiseKind::Uniform:
            return param * (2.0 * rng.next_unit() - 1.0);
    }
    throw InternalError("NoiseModel: unknown kind");
}

namespace {

double positive_param(double v, const char* what) {
    if (!(v > 0) || !std::isfinite(v))
        throw DomainError(std::string("SignalPrior: ") + what + " must be finite and positive");
    return v;
}

}  // namespace

SignalPrior SignalPrior::uniform(double upper) {
    return {PriorKind::Uniform, positive_param(upper, "upper bound")};
}

SignalPrior SignalPrior::rayleigh(double beta) {
    return {PriorKind::Rayleigh, positive_param(beta, "beta")};
}

SignalPrior SignalPrior::exponential(double lambda) {
    return {PriorKind::Exponential, positive_param(lambda, "lambda")};
}

SignalPrior SignalPrior::folded_gaussian(double theta) {
    return {PriorKind::FoldedGaussian, positive_param(theta, "theta")};
}

double SignalPrior::sample(SplitStream& rng) const {
    switch (kind) {
        case PriorKind::Uniform:
            return param * rng.next_unit();
        case PriorKind::Rayleigh:
            return param * std::sqrt(-2.0 * std::log(rng.next_unit()));
        case PriorKind::Exponential:
            return -param * std::log(rng.next_unit());
        case PriorKind::FoldedGaussian:
            return param * std::abs(rng.next_gaussian());
    }
    throw InternalError("SignalPrior: unknown kind");
}

}  // namespace rcrt
