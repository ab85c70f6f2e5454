#include "doctest.h"

#include <cmath>
#include <limits>

#include "rcrt/stats.hpp"

using namespace rcrt;

static constexpr double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("split stream") {
    SplitStream a(42, 7);
    SplitStream b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    SplitStream c(42, 8);
    bool all_equal = true;
    SplitStream a2(42, 7);
    for (int i = 0; i < 16; ++i) all_equal &= (a2.next_u64() == c.next_u64());
    CHECK_FALSE(all_equal);

    SplitStream u(1, 0);
    double mean = 0.0;
    for (int i = 0; i < 20000; ++i) {
        double v = u.next_unit();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
        mean += v;
    }
    CHECK(mean / 20000 == doctest::Approx(0.5).epsilon(0.02));

    SplitStream g(2, 0);
    double m1 = 0.0, m2 = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        double z = g.next_gaussian();
        m1 += z;
        m2 += z * z;
    }
    CHECK(m1 / n == doctest::Approx(0.0).epsilon(1).scale(0.02));
    CHECK(m2 / n == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("noise and prior models") {
    CHECK_THROWS_AS(NoiseModel::gaussian(-1.0), DomainError);
    CHECK_THROWS_AS(NoiseModel::uniform(-0.5), DomainError);
    CHECK_THROWS_AS(SignalPrior::uniform(0.0), DomainError);
    CHECK_THROWS_AS(SignalPrior::rayleigh(-2.0), DomainError);

    SplitStream rng(3, 1);
    auto un = NoiseModel::uniform(0.4);
    for (int i = 0; i < 2000; ++i) {
        double e = un.sample(rng);
        CHECK(e >= -0.4);
        CHECK(e <= 0.4);
    }
    auto zero = NoiseModel::gaussian(0.0);
    CHECK(zero.sample(rng) == 0.0);

    auto expo = SignalPrior::exponential(100.0);
    double mean = 0.0;
    for (int i = 0; i < 40000; ++i) {
        double x = expo.sample(rng);
        CHECK(x >= 0.0);
        mean += x;
    }
    CHECK(mean / 40000 == doctest::Approx(100.0).epsilon(0.03));

    auto ray = SignalPrior::rayleigh(360.0);
    mean = 0.0;
    for (int i = 0; i < 40000; ++i) mean += ray.sample(rng);
    CHECK(mean / 40000 == doctest::Approx(360.0 * std::sqrt(3.141592653589793 / 2)).epsilon(0.02));

    auto fg = SignalPrior::folded_gaussian(2.0);
    for (int i = 0; i < 1000; ++i) CHECK(fg.sample(rng) >= 0.0);

    auto uni = SignalPrior::uniform(680.0);
    for (int i = 0; i < 1000; ++i) {
        double x = uni.sample(rng);
        CHECK(x > 0.0);
        CHECK(x < 680.0);
    }
}

TEST_CASE("interval masses") {
    auto uni = SignalPrior::uniform(680.0);
    CHECK(interval_mass(uni, 0.0, 280.0) == doctest::Approx(280.0 / 680.0).epsilon(1e-12));
    CHECK(interval_mass(uni, 280.0, 680.0) == doctest::Approx(400.0 / 680.0).epsilon(1e-12));
    CHECK(interval_mass(uni, 0.0, kInf) == doctest::Approx(1.0));
    CHECK(interval_mass(uni, 700.0, 800.0) == doctest::Approx(0.0));

    auto ray = SignalPrior::rayleigh(360.0);
    CHECK(interval_mass(ray, 1800.0, kInf) == doctest::Approx(std::exp(-12.5)).epsilon(1e-9));
    CHECK(interval_mass(ray, 1800.0, kInf) == doctest::Approx(3.73e-6).epsilon(2e-3));
    CHECK(interval_mass(ray, 0.0, 360.0) == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-12));
    CHECK(interval_mass(ray, 0.0, kInf) == doctest::Approx(1.0));

    auto expo = SignalPrior::exponential(100.0);
    CHECK(interval_mass(expo, 0.0, 100.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(interval_mass(expo, 100.0, kInf) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    auto fg = SignalPrior::folded_gaussian(1.0);
    CHECK(interval_mass(fg, 0.0, kInf) == doctest::Approx(1.0));
    CHECK(interval_mass(fg, 0.0, 1.0) == doctest::Approx(std::erf(1.0 / std::sqrt(2.0))).epsilon(1e-12));

    CHECK_THROWS_AS(interval_mass(uni, -1.0, 5.0), DomainError);
    CHECK_THROWS_AS(interval_mass(uni, 5.0, 4.0), DomainError);
}

TEST_CASE("difference-event pass probability") {
    // Gaussian channels: e1 - e2 ~ N(0, 2s^2), so P(|e1-e2| < 2t) = erf(t/s).
    CHECK(noise_pass_prob(NoiseModel::gaussian(1.0), 1.0) == doctest::Approx(std::erf(1.0)).epsilon(1e-12));
    CHECK(noise_pass_prob(NoiseModel::gaussian(2.0), 1.0) == doctest::Approx(std::erf(0.5)).epsilon(1e-12));
    CHECK(noise_pass_prob(NoiseModel::gaussian(0.0), 0.5) == 1.0);

    // Uniform channels: triangular difference.
    CHECK(noise_pass_prob(NoiseModel::uniform(2.0), 1.0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(noise_pass_prob(NoiseModel::uniform(2.0), 0.5) == doctest::Approx(0.4375).epsilon(1e-12));
    CHECK(noise_pass_prob(NoiseModel::uniform(2.0), 2.0) == 1.0);
    CHECK(noise_pass_prob(NoiseModel::uniform(2.0), 5.0) == 1.0);
    CHECK(noise_pass_prob(NoiseModel::uniform(0.0), 0.25) == 1.0);

    // Monotone in the tolerance.
    double prev = 0.0;
    for (double t = 0.1; t < 4.0; t += 0.1) {
        double p = noise_pass_prob(NoiseModel::gaussian(1.0), t);
        CHECK(p >= prev);
        prev = p;
    }

    CHECK_THROWS_AS(noise_pass_prob(NoiseModel::gaussian(1.0), 0.0), DomainError);
    CHECK_THROWS_AS(noise_pass_prob(NoiseModel::gaussian(1.0), -1.0), DomainError);
}

TEST_CASE("layered success bound") {
    // (5,17), m=8: P=(280,680), tau=(4,2). Uniform prior over the range,
    // uniform noise eps=3: eta = 7/17 * 1 + 10/17 * 8/9 = 143/153.
    auto d = layered_from_pair(Int(5), Int(17), Rat(8));
    auto est = success_lower_bound(d, SignalPrior::uniform(680.0), NoiseModel::uniform(3.0));
    REQUIRE(est.layer_mass.size() == 2);
    CHECK(est.layer_mass[0] == doctest::Approx(7.0 / 17.0).epsilon(1e-12));
    CHECK(est.layer_mass[1] == doctest::Approx(10.0 / 17.0).epsilon(1e-12));
    CHECK(est.layer_pass[0] == doctest::Approx(1.0));
    CHECK(est.layer_pass[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK(est.eta == doctest::Approx(143.0 / 153.0).epsilon(1e-12));

    // Composition check against the primitives on a three-layer design.
    auto k2 = design_layered(Rat(15), 2, Rat(120));
    auto prior = SignalPrior::rayleigh(360.0);
    auto noise = NoiseModel::gaussian(1.0);
    auto e2 = success_lower_bound(k2, prior, noise);
    double eta = 0.0, lo = 0.0;
    for (int j = 0; j < 3; ++j) {
        double hi = to_double(k2.breakpoints[j]);
        double mass = interval_mass(prior, lo, hi);
        double pass = noise_pass_prob(noise, to_double(k2.tolerances[j]));
        CHECK(e2.layer_mass[j] == doctest::Approx(mass).epsilon(1e-12));
        CHECK(e2.layer_pass[j] == doctest::Approx(pass).epsilon(1e-12));
        eta += mass * pass;
        lo = hi;
    }
    CHECK(e2.eta == doctest::Approx(eta).epsilon(1e-12));
    CHECK(e2.eta == doctest::Approx(0.9895).epsilon(2e-3));

    // Layering pays off once the noise is large relative to m/4; at small
    // noise the single full layer is already near-certain and its bound can
    // sit slightly above the layered one.
    auto k0 = design_layered(Rat(15), 0, Rat(120));
    auto loud = NoiseModel::gaussian(6.0);
    CHECK(success_lower_bound(k2, prior, loud).eta >
          success_lower_bound(k0, prior, loud).eta + 0.2);
}

TEST_CASE("flat success bound") {
    auto flat = design_flat(3, Rat(5));  // {2,3,5}, m=1, tau=1/4, P=30
    auto prior = SignalPrior::uniform(30.0);

    auto est = success_lower_bound(flat, prior, NoiseModel::gaussian(0.25));
    double per = std::erf(0.25 / (0.25 * std::sqrt(2.0)));
    CHECK(est.eta == doctest::Approx(per * per * per).epsilon(1e-12));

    est = success_lower_bound(flat, prior, NoiseModel::uniform(0.2));
    CHECK(est.eta == doctest::Approx(1.0));

    est = success_lower_bound(flat, prior, NoiseModel::uniform(0.5));
    CHECK(est.eta == doctest::Approx(0.125).epsilon(1e-12));

    // Prior mass beyond the range caps the bound.
    auto ray = SignalPrior::rayleigh(20.0);
    est = success_lower_bound(flat, ray, NoiseModel::uniform(0.2));
    CHECK(est.eta == doctest::Approx(1.0 - std::exp(-30.0 * 30.0 / 800.0)).epsilon(1e-12));
}

TEST_CASE("monte carlo determinism and noiseless limit") {
    auto d = design_layered(Rat(15), 2, Rat(120));
    auto prior = SignalPrior::rayleigh(360.0);

    auto quiet = monte_carlo(d, prior, NoiseModel::gaussian(0.0), 2000, 99);
    CHECK(quiet.trials == 2000);
    CHECK(quiet.successes == 2000);
    CHECK(quiet.success_rate == 1.0);
    CHECK(quiet.rrse < 1e-9);

    auto a = monte_carlo(d, prior, NoiseModel::gaussian(1.0), 3000, 1234);
    auto b = monte_carlo(d, prior, NoiseModel::gaussian(1.0), 3000, 1234);
    CHECK(a.successes == b.successes);
    CHECK(a.rrse == b.rrse);
    CHECK(a.rejected == b.rejected);

    auto c = monte_carlo(d, prior, NoiseModel::gaussian(1.0), 3000, 1235);
    CHECK(a.successes != c.successes);  // distinct seeds explore differently
}

TEST_CASE("monte carlo protocols and rejection") {
    auto d = layered_from_pair(Int(12), Int(17), Rat(3, 2));  // P = 306
    auto prior = SignalPrior::uniform(306.0);
    auto noise = NoiseModel::gaussian(1.0);

    auto layered = monte_carlo(d, prior, noise, 4000, 7, Protocol::Layered);
    auto flat = monte_carlo(d, prior, noise, 4000, 7, Protocol::Flat);
    CHECK(layered.success_rate > flat.success_rate + 0.1);
    CHECK(layered.rejected == 0);  // prior never exceeds the range

    auto wide = SignalPrior::uniform(612.0);  // half the draws land beyond P
    auto r = monte_carlo(d, wide, noise, 2000, 7);
    CHECK(r.rejected > 1000);
    CHECK(r.rejected < 3000);

    // Practically no prior mass below the range: resampling gives up.
    CHECK_THROWS_AS(monte_carlo(d, SignalPrior::uniform(1e15), noise, 10, 7), DomainError);

    CHECK_THROWS_AS(monte_carlo(d, prior, noise, 0, 7), DomainError);
}

TEST_CASE("monte carlo over flat sets") {
    auto flat = design_flat(3, Rat(5));  // {2,3,5}, tau = 1/4
    auto prior = SignalPrior::uniform(30.0);

    // Uniform noise strictly inside the tolerance never breaks recovery.
    auto safe = monte_carlo(flat, prior, NoiseModel::uniform(0.2), 3000, 5);
    CHECK(safe.success_rate == 1.0);
    CHECK(safe.rrse < 0.2);

    auto risky = monte_carlo(flat, prior, NoiseModel::uniform(0.5), 3000, 5);
    CHECK(risky.success_rate < 1.0);
    CHECK(risky.success_rate > 0.05);
}
