#pragma once

#include <span>
#include <vector>

// Closed-form swarm model: capacity, busy periods, unavailability and
// traffic gain for peer-assisted delivery, including multi-swarm
// aggregation, partial participation and bundle algebra.

namespace swarmgain::model {

// Per-swarm analytic inputs. Units: arrivals per second, seconds,
// seconds, bits per second. mean_watch may exceed content_length
// (rewatching); we record inputs as-is.
struct SwarmParams {
    double arrival_rate = 0.0;    // r, peers per second, >= 0
    double mean_watch = 0.0;      // u, seconds, > 0
    double content_length = 0.0;  // l, seconds, > 0
    double bitrate = 0.0;         // beta, bits per second, > 0
};

struct GainBreakdown {
    double useful_traffic_rate = 0.0;  // bits per second
    double server_traffic_rate = 0.0;  // bits per second
    double gain = 0.0;                 // 1 - server/useful
};

// Saturation ceiling for the busy-period series. Beyond it the
// unavailability underflows to exactly 0.
inline constexpr double kTailCeiling = 1e300;

// Average concurrent swarm members, c = u * r (Little's law).
double capacity(double mean_watch, double arrival_rate);

// S(m, x) = m! * sum_{k>m} x^(k-m)/k!, the growth factor of the busy
// period beyond the single watch time. Equals the classical
// e^x x^-m (m*Gamma(m) - Gamma(1+m, x)) for integer m. Saturates at
// `ceiling` instead of overflowing.
double scaled_gamma_tail(int min_swarm, double x, double ceiling = kTailCeiling);

// Expected length of a peer-availability period: the time from the
// moment a swarm reaches m concurrent members until it drops below m.
// E[B] = u * (1 + S(m, u*r)) / m.
double expected_busy_period(double mean_watch, double arrival_rate, int min_swarm);

// Probability an arriving request cannot be peer-served,
// P = 1 / (E[B]*r + 1). r = 0 maps to P = 1 (never peer-available);
// a saturated busy period maps to exactly 0.
double unavailability(const SwarmParams& params, int min_swarm);

// Same quantity parameterised by capacity only.
double unavailability_from_capacity(double capacity, int min_swarm);

// G = 1 - P as a function of capacity; in [0, 1], 0 at c = 0,
// nondecreasing in c, nonincreasing in m. For m = 1 this is 1 - e^-c.
double single_swarm_gain(double capacity, int min_swarm);

// Server traffic rate beta * l * r * P, bits per second of wall time.
double server_traffic_rate(const SwarmParams& params, int min_swarm);

// Aggregate gain across swarms: 1 - sum(T_s) / sum(beta*l*r). Swarms
// with r = 0 contribute nothing to either sum.
double multi_swarm_gain(std::span<const SwarmParams> swarms, int min_swarm);

// Partial participation: only a fraction alpha of peers upload, so
// availability is computed at rate alpha*r while demand stays at r.
// alpha = 1 reproduces multi_swarm_gain exactly.
double partial_participation_gain(std::span<const SwarmParams> swarms, int min_swarm,
                                  double alpha);

GainBreakdown multi_swarm_breakdown(std::span<const SwarmParams> swarms, int min_swarm,
                                    double alpha);

// Bundling: k items distributed as one unit. Weight and arrival rate
// add; unavailability multiplies.
double bundle_server_traffic(std::span<const SwarmParams> bundle, int min_swarm);

// Delta gain of bundling vs serving items individually,
// (sum beta*l*r*P - T_b) / sum(beta*l*r). Exactly 0 for a single item;
// negative when the added bundle weight outweighs the availability win.
double bundle_delta_gain(std::span<const SwarmParams> bundle, int min_swarm);

void validate_params(const SwarmParams& params);

}  // namespace swarmgain::model
