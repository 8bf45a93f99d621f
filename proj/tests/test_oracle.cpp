#include <doctest.h>

#include <cmath>

#include "model.hpp"
#include "oracle.hpp"

using namespace swarmgain;

namespace {

oracle::McConfig cfg(double u, double r, int m, int64_t cycles, uint64_t seed = 1) {
    oracle::McConfig c;
    c.mean_watch = u;
    c.arrival_rate = r;
    c.min_swarm = m;
    c.cycle_target = cycles;
    c.rng_seed = seed;
    return c;
}

}  // namespace

TEST_CASE("busy period estimate matches the closed form at c = 1") {
    // u(e - 1) = 171.828...
    const auto est = oracle::mc_busy_period(cfg(100.0, 0.01, 1, 200000));
    CHECK(est.samples == 200000);
    CHECK(std::fabs(est.value - 171.82818284590452) < 3.0 * est.std_error);
    CHECK(std::fabs(est.value / 171.82818284590452 - 1.0) < 0.02);
}

TEST_CASE("busy period estimate at small capacity") {
    // c = 0.1: u(e^0.1 - 1)/0.1 = 105.1709...
    const auto est = oracle::mc_busy_period(cfg(100.0, 0.001, 1, 200000));
    CHECK(std::fabs(est.value - 105.17091807564771) < 3.0 * est.std_error);
    CHECK(std::fabs(est.value / 105.17091807564771 - 1.0) < 0.02);
}

TEST_CASE("busy period estimates agree with the formula for m >= 2") {
    for (int m : {2, 3, 5}) {
        const auto est = oracle::mc_busy_period(cfg(100.0, 0.01, m, 60000, 7 + m));
        const double expected = model::expected_busy_period(100.0, 0.01, m);
        INFO("m=", m, " mc=", est.value, " model=", expected);
        CHECK(std::fabs(est.value - expected) < 3.5 * est.std_error);
        CHECK(std::fabs(est.value / expected - 1.0) < 0.03);
    }
}

TEST_CASE("estimates are seed-reproducible") {
    const auto a = oracle::mc_busy_period(cfg(100.0, 0.01, 1, 5000, 99));
    const auto b = oracle::mc_busy_period(cfg(100.0, 0.01, 1, 5000, 99));
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    const auto c = oracle::mc_busy_period(cfg(100.0, 0.01, 1, 5000, 100));
    CHECK(a.value != c.value);
}

TEST_CASE("standard error shrinks like sqrt(cycles)") {
    const auto small = oracle::mc_busy_period(cfg(100.0, 0.01, 1, 2000, 5));
    const auto big = oracle::mc_busy_period(cfg(100.0, 0.01, 1, 200000, 5));
    const double ratio = small.std_error / big.std_error;
    // 100x the cycles should shrink the SE by about 10x.
    CHECK(ratio > 5.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("arrival-sampled unavailability matches e^-c at m = 1") {
    struct Point {
        double c, expected;
    };
    // e^-1, e^-0.01, e^-5.
    for (const auto& p : {Point{1.0, 0.36787944117144233}, Point{0.01, 0.99004983374916811},
                          Point{5.0, 0.006737946999085467}}) {
        oracle::McConfig c = cfg(100.0, p.c / 100.0, 1, 0, 17);
        c.arrival_target = 400000;
        const auto est = oracle::mc_unavailability(c);
        INFO("c=", p.c, " est=", est.value);
        CHECK(std::fabs(est.value - p.expected) < std::max(3.0 * est.std_error, 0.01));
    }
}

TEST_CASE("arrival sampling measures the occupancy distribution for m >= 2") {
    // The renewal-form unavailability is exact only at m = 1. For
    // larger m, arrivals sample the stationary occupancy: the estimate
    // converges to the Poisson tail P(N < m), which exceeds the
    // renewal value because swarms decay below m-1 between busy spells.
    oracle::McConfig c = cfg(100.0, 0.01, 2, 0, 23);
    c.arrival_target = 400000;
    const auto est = oracle::mc_unavailability(c);
    const double poisson = oracle::poisson_below(1.0, 2);  // 2e^-1 = 0.7358
    const double renewal = model::unavailability_from_capacity(1.0, 2);  // 0.5820
    CHECK(std::fabs(est.value - poisson) < std::max(3.0 * est.std_error, 0.01));
    CHECK(est.value > renewal + 0.1);
}

TEST_CASE("poisson_below closed forms") {
    CHECK(oracle::poisson_below(1.0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(oracle::poisson_below(1.0, 2) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(oracle::poisson_below(0.0, 3) == 1.0);
}

TEST_CASE("event budget censors gracefully") {
    oracle::McConfig c = cfg(500.0, 0.1, 1, 1000, 3);  // c = 50: busy period ~ e^50
    c.max_steps = 200000;
    const auto res = oracle::run(c);
    CHECK(res.budget_exhausted);
    CHECK(res.cycles == 0);
    CHECK(res.censored_open_busy > 0.0);
    // The model predicts an astronomically longer period than anything
    // we could observe; the censored observation must be consistent.
    CHECK(model::expected_busy_period(500.0, 0.1, 1) > res.censored_open_busy);
}

TEST_CASE("first passage recursion sanity") {
    // m = 1 closed form.
    CHECK(oracle::first_passage_busy_period(100.0, 0.01, 1) ==
          doctest::Approx(171.82818284590452).epsilon(1e-10));
    // Direct solve of h_2 from h_1: h_1 = (u + c h_2) / 1 must also hold.
    const double h1 = oracle::first_passage_busy_period(100.0, 0.01, 1);
    const double h2 = oracle::first_passage_busy_period(100.0, 0.01, 2);
    CHECK(h1 == doctest::Approx(100.0 + 1.0 * h2).epsilon(1e-10));
}
