#pragma once

#include <cstdint>

// Monte-Carlo ground truth for the swarm model: simulates the M/M/inf
// occupancy chain (Poisson arrivals, exponential sojourns) and measures
// busy periods and arrival-sampled unavailability directly.

namespace swarmgain::oracle {

struct McConfig {
    double mean_watch = 0.0;    // u, seconds
    double arrival_rate = 0.0;  // r, per second
    int min_swarm = 1;          // m
    int64_t cycle_target = 100000;      // complete busy periods wanted
    int64_t arrival_target = 0;         // arrivals wanted (0 = until cycles done)
    int64_t max_steps = 2'000'000'000;  // hard event budget
    uint64_t rng_seed = 1;
};

struct McResult {
    // Busy periods: maximal intervals with occupancy >= m, opened when
    // occupancy rises from m-1 to m and closed when it falls below m.
    double busy_mean = 0.0;
    double busy_std_error = 0.0;
    int64_t cycles = 0;
    double censored_open_busy = 0.0;  // length of the still-open period at stop

    // Arrival-sampled (PASTA) fraction of arrivals finding < m others.
    double unavail_estimate = 0.0;
    double unavail_std_error = 0.0;  // batch-means, arrivals are correlated
    int64_t arrivals = 0;

    double sim_time = 0.0;
    int64_t steps = 0;
    bool budget_exhausted = false;
};

// One chain drive serving both estimators; runs until both targets are
// met or the step budget is gone.
McResult run(const McConfig& cfg);

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    int64_t samples = 0;
};

Estimate mc_busy_period(const McConfig& cfg);
Estimate mc_unavailability(const McConfig& cfg);

// Expected first-passage time of the occupancy chain from state m to
// m-1, by the downward recursion h_k = (u + c*h_{k+1}) / k. Exact
// (to rounding) and independent of the series evaluation; used as a
// deterministic oracle in tests.
double first_passage_busy_period(double mean_watch, double arrival_rate, int min_swarm);

// Stationary probability that an arrival finds fewer than m others:
// the Poisson(c) CDF at m-1. This is what arrival sampling converges
// to; it coincides with the renewal-form unavailability only at m = 1.
double poisson_below(double capacity, int min_swarm);

}  // namespace swarmgain::oracle
