#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "trace.hpp"

// Seeded synthetic workloads: Zipf popularity, homogeneous Poisson
// arrivals per item, exponential watch times. Stands in for real
// session logs in experiments and model-agreement tests.

namespace swarmgain::workload {

struct WorkloadSpec {
    int64_t catalog_size = 1;
    double zipf_exponent = 0.0;        // >= 0; 0 = uniform popularity
    double total_arrival_rate = 0.0;   // sessions per second across the catalog
    double mean_watch = 0.0;           // seconds
    double content_length = 0.0;       // seconds, uniform across items
    std::vector<double> content_lengths;  // optional per-item override
    double horizon = 0.0;              // seconds
    double start_time = 0.0;           // epoch offset of t = 0
    std::vector<std::pair<std::string, double>> isp_shares;   // sum to 1
    std::vector<std::pair<int, double>> ladder_shares;        // kbps -> share, sum to 1
    double repeat_viewer_fraction = 0.0;  // [0, 1]
    bool truncate_at_length = false;   // clamp watch times at content length
    uint64_t rng_seed = 0;
};

struct Generated {
    trace::Catalog catalog;
    std::vector<trace::SessionRecord> records;  // sorted by start time
};

// Per-item rates proportional to i^-s, normalised to `total`.
std::vector<double> zipf_rates(int64_t n, double s, double total);

void validate_spec(const WorkloadSpec& spec);

Generated generate(const WorkloadSpec& spec);

WorkloadSpec spec_from_json(const std::string& json_text);

}  // namespace swarmgain::workload
