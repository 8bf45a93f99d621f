#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trace.hpp"

// Deterministic event-driven replay of a session trace. At each session
// start the requester is peer-served iff enough eligible uploaders are
// present in its swarm; the decision is permanent. Sources are sessions
// past the streaming-eligibility threshold (within their availability
// window) plus cached items of online users.

namespace swarmgain::sim {

enum class AvailabilityMode {
    watch,     // a peer uploads while its session is playing
    download,  // a peer departs after downloading at bandwidth b
};

struct ScenarioConfig {
    bool isp_split = false;
    bool bitrate_split = false;
    int min_swarm = 1;                  // eligible uploaders required, excluding requester
    double participation_alpha = 1.0;   // (0, 1]
    AvailabilityMode availability_mode = AvailabilityMode::watch;
    double download_bandwidth_bps = 0.0;  // required in download mode
    int cache_size_k = 0;               // last-watched items kept per user
    double eligibility_fraction = 0.10;  // share of content length to stream first; [0, 1)
    uint64_t rng_seed = 0;
    trace::BitrateLadder ladder = trace::BitrateLadder::standard();
};

struct SimReport {
    double useful_bytes = 0.0;
    double server_bytes = 0.0;
    double peer_bytes = 0.0;
    double gain = 0.0;  // 1 - server/useful, 0 on an empty run
    int64_t sessions = 0;
    int64_t peer_served = 0;
    // Unweighted mean of per-(swarm, day) capacities over rows with at
    // least one session.
    double mean_swarm_capacity = 0.0;

    struct DayRow {
        int64_t day = 0;
        int64_t sessions = 0;
        int64_t peer_served = 0;
        double useful_bytes = 0.0;
        double server_bytes = 0.0;
        double gain = 0.0;
    };
    std::vector<DayRow> days;

    struct SwarmRow {
        std::string key;
        int64_t day = 0;
        int64_t sessions = 0;
        int64_t peer_served = 0;
        double capacity = 0.0;  // time-averaged eligible sources over the day
        double gain = 0.0;
    };
    std::vector<SwarmRow> swarms;
};

// Availability interval of a session, [start, end). In download mode
// the upload window is min(watch, beta*l/b).
std::pair<double, double> availability_window(double start, double watch_duration,
                                              double bitrate_bps, double content_length,
                                              AvailabilityMode mode, double bandwidth_bps);

// Stable per-user participation flag; the participating set is nested
// in alpha.
bool user_participates(const std::string& user_id, double alpha, uint64_t seed);

SimReport run(const std::vector<trace::SessionRecord>& records, const trace::Catalog& catalog,
              const ScenarioConfig& config);

void validate_config(const ScenarioConfig& config);

ScenarioConfig scenario_from_json(const std::string& json_text);
std::string scenario_to_json(const ScenarioConfig& config);  // resolved, for manifests

std::string report_to_json(const SimReport& report);
std::string swarms_to_csv(const SimReport& report);

}  // namespace swarmgain::sim
