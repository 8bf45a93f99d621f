#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

// Session-trace data model: CSV ingestion and validation, the bitrate
// ladder, UTC day partitioning and per-swarm (r, u) estimation.

namespace swarmgain::trace {

struct SessionRecord {
    std::string user_id;
    std::string content_id;
    double start_time = 0.0;      // seconds since epoch, UTC
    double watch_duration = 0.0;  // seconds, > 0
    std::string isp_id;
    double avg_bitrate = 0.0;     // kilobits per second, > 0
};

struct ContentRecord {
    std::string content_id;
    double length = 0.0;  // seconds, > 0
    std::optional<double> release_time;
};

using Catalog = std::unordered_map<std::string, ContentRecord>;

// Ascending kbps rungs. Only 762, 1500 and 2800 are attested encoder
// settings; the rest are configurable defaults.
struct BitrateLadder {
    std::vector<double> rungs;
    static BitrateLadder standard() {
        return BitrateLadder{{150, 300, 500, 762, 1000, 1500, 1800, 2400, 2800}};
    }
};

// Swarm identity: content, plus ISP and/or ladder rung when the
// corresponding split is active.
struct SwarmKey {
    std::string content_id;
    std::optional<std::string> isp_id;
    std::optional<int> ladder_rung;  // kbps

    bool operator==(const SwarmKey&) const = default;
    auto operator<=>(const SwarmKey&) const = default;
    std::string str() const;
};

struct SwarmEstimate {
    SwarmKey key;
    int64_t day = 0;               // days since epoch, UTC
    double arrival_rate = 0.0;     // sessions per second, count / 86400
    double mean_watch = 0.0;       // seconds
    double mean_bitrate_kbps = 0.0;
    int64_t session_count = 0;
};

struct ParseResult {
    std::vector<SessionRecord> records;
    int64_t dropped_unknown_content = 0;  // lenient mode only
    std::vector<std::string> warnings;
};

Catalog parse_catalog(const std::string& path);

// Validates every row; strict mode fails on the first problem batch
// with line numbers, lenient mode drops (and counts) rows whose
// content_id is missing from the catalog. Structural problems are
// always errors.
ParseResult parse_trace(const std::string& path, const Catalog& catalog, bool lenient = false);

void write_trace_csv(const std::string& path, const std::vector<SessionRecord>& records);
void write_catalog_csv(const std::string& path, const Catalog& catalog);

// Closest rung by absolute distance; ties break to the lower rung.
double map_bitrate(double avg_bitrate_kbps, const BitrateLadder& ladder);

// UTC day of a timestamp (days since epoch, floor).
int64_t day_of(double start_time);
std::string day_to_string(int64_t day);

// Groups records by the UTC date of their start; sessions are not
// clipped at midnight.
std::map<int64_t, std::vector<SessionRecord>> partition_days(
    const std::vector<SessionRecord>& records);

// One estimate per (swarm key, day): r = count/86400, u = mean watch.
std::vector<SwarmEstimate> estimate_swarm_params(const std::vector<SessionRecord>& records,
                                                 const Catalog& catalog, bool isp_split,
                                                 bool bitrate_split,
                                                 const BitrateLadder& ladder);

std::string format_double(double v);  // shortest round-trip decimal form

}  // namespace swarmgain::trace
