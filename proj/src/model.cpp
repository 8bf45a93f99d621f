#include "model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swarmgain::model {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::domain_error(msg);
}

void require_min_swarm(int m) { require(m >= 1, "min_swarm must be a positive integer"); }

}  // namespace

void validate_params(const SwarmParams& p) {
    require(std::isfinite(p.arrival_rate) && p.arrival_rate >= 0.0,
            "arrival_rate must be finite and >= 0");
    require(std::isfinite(p.mean_watch) && p.mean_watch > 0.0,
            "mean_watch must be finite and > 0");
    require(std::isfinite(p.content_length) && p.content_length > 0.0,
            "content_length must be finite and > 0");
    require(std::isfinite(p.bitrate) && p.bitrate > 0.0, "bitrate must be finite and > 0");
}

double capacity(double mean_watch, double arrival_rate) {
    require(std::isfinite(mean_watch) && mean_watch > 0.0, "mean_watch must be finite and > 0");
    require(std::isfinite(arrival_rate) && arrival_rate >= 0.0,
            "arrival_rate must be finite and >= 0");
    return mean_watch * arrival_rate;
}

double scaled_gamma_tail(int min_swarm, double x, double ceiling) {
    require_min_swarm(min_swarm);
    require(std::isfinite(x) && x >= 0.0, "x must be finite and >= 0");
    if (x == 0.0) return 0.0;

    // term_j = m! x^j / (m+j)!; terms rise while x > m+j+1, then decay
    // geometrically. Stop once the next term is below 1e-16 of the sum.
    constexpr long kMaxTerms = 1'000'000;
    double sum = 0.0;
    double term = x / (min_swarm + 1.0);
    for (long j = 1; j <= kMaxTerms; ++j) {
        sum += term;
        if (sum >= ceiling || !std::isfinite(sum)) return ceiling;
        term *= x / (min_swarm + j + 1.0);
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

double expected_busy_period(double mean_watch, double arrival_rate, int min_swarm) {
    require_min_swarm(min_swarm);
    require(std::isfinite(mean_watch) && mean_watch > 0.0, "mean_watch must be finite and > 0");
    require(std::isfinite(arrival_rate) && arrival_rate > 0.0,
            "arrival_rate must be > 0 (busy period undefined without arrivals)");
    const double tail = scaled_gamma_tail(min_swarm, mean_watch * arrival_rate);
    return mean_watch * (1.0 + tail) / min_swarm;
}

double unavailability_from_capacity(double cap, int min_swarm) {
    require_min_swarm(min_swarm);
    require(std::isfinite(cap) && cap >= 0.0, "capacity must be finite and >= 0");
    const double tail = scaled_gamma_tail(min_swarm, cap);
    if (tail >= kTailCeiling) return 0.0;
    // E[B]*r + 1 expressed through capacity: c*(1+S)/m + 1.
    return 1.0 / (cap * (1.0 + tail) / min_swarm + 1.0);
}

double unavailability(const SwarmParams& params, int min_swarm) {
    validate_params(params);
    require_min_swarm(min_swarm);
    if (params.arrival_rate == 0.0) return 1.0;
    return unavailability_from_capacity(params.mean_watch * params.arrival_rate, min_swarm);
}

double single_swarm_gain(double cap, int min_swarm) {
    return 1.0 - unavailability_from_capacity(cap, min_swarm);
}

double server_traffic_rate(const SwarmParams& params, int min_swarm) {
    const double p = unavailability(params, min_swarm);
    // Association fixed as ((beta*l)*r)*P so that a one-item bundle
    // cancels exactly against the per-item sum.
    return ((params.bitrate * params.content_length) * params.arrival_rate) * p;
}

namespace {

// Shared by the plain and partial-participation aggregates; alpha thins
// the upload side only.
GainBreakdown aggregate(std::span<const SwarmParams> swarms, int min_swarm, double alpha) {
    require_min_swarm(min_swarm);
    require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0, "alpha must be in (0, 1]");
    if (swarms.empty()) throw std::domain_error("swarm sequence must be nonempty");

    double useful = 0.0;
    double server = 0.0;
    for (const auto& s : swarms) {
        validate_params(s);
        if (s.arrival_rate == 0.0) continue;  // dead item: no demand, no traffic
        const double load = (s.bitrate * s.content_length) * s.arrival_rate;
        const double p =
            unavailability_from_capacity(s.mean_watch * (alpha * s.arrival_rate), min_swarm);
        useful += load;
        server += load * p;
    }
    if (useful <= 0.0)
        throw std::domain_error("total useful traffic is zero (no swarm with arrivals)");
    return GainBreakdown{useful, server, 1.0 - server / useful};
}

}  // namespace

GainBreakdown multi_swarm_breakdown(std::span<const SwarmParams> swarms, int min_swarm,
                                    double alpha) {
    return aggregate(swarms, min_swarm, alpha);
}

double multi_swarm_gain(std::span<const SwarmParams> swarms, int min_swarm) {
    return aggregate(swarms, min_swarm, 1.0).gain;
}

double partial_participation_gain(std::span<const SwarmParams> swarms, int min_swarm,
                                  double alpha) {
    return aggregate(swarms, min_swarm, alpha).gain;
}

double bundle_server_traffic(std::span<const SwarmParams> bundle, int min_swarm) {
    require_min_swarm(min_swarm);
    if (bundle.empty()) throw std::domain_error("bundle must be nonempty");
    double weight = 0.0;    // sum beta*l, bits
    double rate = 0.0;      // sum r
    double prob = 1.0;      // prod P_i
    for (const auto& s : bundle) {
        weight += s.bitrate * s.content_length;
        rate += s.arrival_rate;
        prob *= unavailability(s, min_swarm);
    }
    return (weight * rate) * prob;
}

double bundle_delta_gain(std::span<const SwarmParams> bundle, int min_swarm) {
    require_min_swarm(min_swarm);
    if (bundle.empty()) throw std::domain_error("bundle must be nonempty");
    double individual = 0.0;
    double useful = 0.0;
    for (const auto& s : bundle) {
        individual += server_traffic_rate(s, min_swarm);
        useful += (s.bitrate * s.content_length) * s.arrival_rate;
    }
    if (useful <= 0.0) throw std::domain_error("total useful traffic of bundle is zero");
    return (individual - bundle_server_traffic(bundle, min_swarm)) / useful;
}

}  // namespace swarmgain::model
