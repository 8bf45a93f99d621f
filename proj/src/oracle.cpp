#include "oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace swarmgain::oracle {

namespace {

void validate(const McConfig& cfg) {
    if (!(cfg.mean_watch > 0.0) || !std::isfinite(cfg.mean_watch))
        throw std::domain_error("mc: mean_watch must be > 0");
    if (!(cfg.arrival_rate > 0.0) || !std::isfinite(cfg.arrival_rate))
        throw std::domain_error("mc: arrival_rate must be > 0");
    if (cfg.min_swarm < 1) throw std::domain_error("mc: min_swarm must be >= 1");
    if (cfg.max_steps < 1) throw std::domain_error("mc: max_steps must be >= 1");
}

}  // namespace

McResult run(const McConfig& cfg) {
    validate(cfg);
    rng::Xoshiro256 gen(cfg.rng_seed);

    const double r = cfg.arrival_rate;
    const double mu = 1.0 / cfg.mean_watch;
    const int m = cfg.min_swarm;

    McResult res;
    int64_t n = 0;  // occupancy
    double t = 0.0;
    bool in_busy = false;
    double busy_start = 0.0;

    // Welford accumulator for cycle lengths.
    double mean = 0.0, m2 = 0.0;

    // Batch means for the arrival-sampled fraction; arrivals within a
    // busy spell are correlated, so batches double in size whenever 64
    // of them pile up, keeping 32+ equal-sized batches at any scale.
    std::vector<int64_t> batches;  // below-count per full batch
    int64_t batch_size = 1024;
    int64_t batch_below = 0, batch_count = 0;
    int64_t below = 0;

    auto targets_met = [&] {
        const bool cycles_ok = res.cycles >= cfg.cycle_target;
        const bool arrivals_ok = cfg.arrival_target == 0 || res.arrivals >= cfg.arrival_target;
        return cycles_ok && arrivals_ok;
    };

    while (!targets_met()) {
        if (res.steps >= cfg.max_steps) {
            res.budget_exhausted = true;
            break;
        }
        ++res.steps;
        const double total_rate = r + static_cast<double>(n) * mu;
        t += gen.exponential(1.0 / total_rate);
        if (gen.u01() <= r / total_rate) {
            // Arrival; n is the occupancy it finds.
            ++res.arrivals;
            if (n < m) {
                ++below;
                ++batch_below;
            }
            if (++batch_count == batch_size) {
                batches.push_back(batch_below);
                batch_below = 0;
                batch_count = 0;
                if (batches.size() == 64) {
                    for (size_t i = 0; i < 32; ++i)
                        batches[i] = batches[2 * i] + batches[2 * i + 1];
                    batches.resize(32);
                    batch_size *= 2;
                }
            }
            ++n;
            if (n == m && !in_busy) {
                in_busy = true;
                busy_start = t;
            }
        } else {
            --n;
            if (in_busy && n == m - 1) {
                in_busy = false;
                const double len = t - busy_start;
                ++res.cycles;
                const double d = len - mean;
                mean += d / static_cast<double>(res.cycles);
                m2 += d * (len - mean);
            }
        }
    }

    res.sim_time = t;
    res.busy_mean = mean;
    if (res.cycles >= 2)
        res.busy_std_error =
            std::sqrt(m2 / static_cast<double>(res.cycles - 1) / static_cast<double>(res.cycles));
    if (in_busy) res.censored_open_busy = t - busy_start;

    if (res.arrivals > 0)
        res.unavail_estimate = static_cast<double>(below) / static_cast<double>(res.arrivals);
    if (batches.size() >= 8) {
        const double bs = static_cast<double>(batch_size);
        double bm = 0.0;
        for (int64_t b : batches) bm += static_cast<double>(b) / bs;
        bm /= static_cast<double>(batches.size());
        double bv = 0.0;
        for (int64_t b : batches) {
            const double f = static_cast<double>(b) / bs;
            bv += (f - bm) * (f - bm);
        }
        bv /= static_cast<double>(batches.size() - 1);
        res.unavail_std_error = std::sqrt(bv / static_cast<double>(batches.size()));
    } else if (res.arrivals > 0) {
        const double p = res.unavail_estimate;
        res.unavail_std_error = std::sqrt(std::max(p * (1.0 - p), 1.0 / res.arrivals) /
                                          static_cast<double>(res.arrivals));
    }
    return res;
}

Estimate mc_busy_period(const McConfig& cfg) {
    McConfig c = cfg;
    c.arrival_target = 0;
    const McResult r = run(c);
    return Estimate{r.busy_mean, r.busy_std_error, r.cycles};
}

Estimate mc_unavailability(const McConfig& cfg) {
    McConfig c = cfg;
    if (c.arrival_target <= 0) c.arrival_target = std::max<int64_t>(c.cycle_target, 1);
    c.cycle_target = 0;
    const McResult r = run(c);
    return Estimate{r.unavail_estimate, r.unavail_std_error, r.arrivals};
}

double first_passage_busy_period(double mean_watch, double arrival_rate, int min_swarm) {
    if (!(mean_watch > 0.0) || !(arrival_rate > 0.0) || min_swarm < 1)
        throw std::domain_error("first_passage_busy_period: bad arguments");
    const double c = mean_watch * arrival_rate;
    // h_k = (u + c * h_{k+1}) / k. The downward recursion contracts by
    // c/k per level, so starting well above max(m, c) converges to
    // machine precision regardless of the tail guess.
    const int top = min_swarm + static_cast<int>(std::ceil(c + 60.0 * std::sqrt(c + 1.0))) + 200;
    double h = mean_watch / static_cast<double>(top + 1);  // rough tail guess
    for (int k = top; k >= min_swarm; --k) h = (mean_watch + c * h) / static_cast<double>(k);
    return h;
}

double poisson_below(double capacity, int min_swarm) {
    if (!(capacity >= 0.0) || min_swarm < 1) throw std::domain_error("poisson_below: bad arguments");
    // Sum Poisson pmf for k = 0..m-1; computed in log space for large c.
    double sum = 0.0;
    for (int k = 0; k < min_swarm; ++k) {
        double log_pmf = -capacity;
        for (int j = 1; j <= k; ++j) log_pmf += std::log(capacity) - std::log(j);
        sum += std::exp(log_pmf);
    }
    return std::min(sum, 1.0);
}

}  // namespace swarmgain::oracle
