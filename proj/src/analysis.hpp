#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "model.hpp"
#include "trace.hpp"

// Retrospective analytics on traces: per-swarm estimates feeding the
// closed-form model, per-ISP/day gain tables, and bundle scans.
// Arrival rates come from the trace itself (hindsight), since they are
// not known when content is published.

namespace swarmgain::analysis {

// One estimate row as model inputs; content length from the catalog,
// bitrate from the sessions (ladder rung when stratified).
model::SwarmParams params_from_estimate(const trace::SwarmEstimate& est,
                                        const trace::Catalog& catalog);

struct GainRow {
    std::string isp;  // "all" for the unsplit aggregate
    std::string day;  // ISO date or "all"
    double gain_theo = 0.0;
    int64_t sessions = 0;
};

// Analytic gain per (ISP, day) plus aggregate rows, per the multi-swarm
// formula with optional bitrate stratification and participation alpha.
std::vector<GainRow> analyze(const std::vector<trace::SessionRecord>& records,
                             const trace::Catalog& catalog, int min_swarm, double alpha,
                             bool bitrate_split, const trace::BitrateLadder& ladder);

// Corpus-wide analytic gain over per-(swarm, day) estimates.
double corpus_gain(const std::vector<trace::SessionRecord>& records,
                   const trace::Catalog& catalog, int min_swarm, double alpha, bool isp_split,
                   bool bitrate_split, const trace::BitrateLadder& ladder);

// Same, under the online-while-downloading assumption: peers upload for
// min(watch, beta*l/b), so each swarm's mean seeding time shrinks to
// u' = u * (1 - e^(-beta*l/(b*u))) before the gain is evaluated.
double corpus_gain_download(const std::vector<trace::SessionRecord>& records,
                            const trace::Catalog& catalog, int min_swarm, double alpha,
                            bool isp_split, bool bitrate_split,
                            const trace::BitrateLadder& ladder, double bandwidth_bps);

std::string gain_table_csv(const std::vector<GainRow>& rows);

struct BundleSizeResult {
    int bundle_size = 0;
    int64_t combinations = 0;   // evaluated (sampled or exhaustive)
    bool exhaustive = false;
    double positive_share = 0.0;
    double mean_positive_delta_gain = 0.0;  // mean over positive cases, 0 if none
    int64_t positives = 0;
};

struct BundleScanResult {
    std::vector<BundleSizeResult> per_size;
    // sample rows: size, index, delta_gain, item ids joined with '+'
    std::string samples_csv;
};

// Evaluates delta gain over uniformly sampled item combinations of the
// requested sizes. Item parameters are whole-trace estimates (rate over
// the covered days, mean watch and bitrate over sessions). Enumerates
// exhaustively when the combination count fits within sample_count.
BundleScanResult bundle_scan(const std::vector<trace::SessionRecord>& records,
                             const trace::Catalog& catalog, const std::vector<int>& sizes,
                             int64_t sample_count, uint64_t seed, int min_swarm = 1);

std::string bundle_summary_csv(const BundleScanResult& result);

// Per-item model parameters over the whole trace, sorted by content id.
std::vector<std::pair<std::string, model::SwarmParams>> item_params(
    const std::vector<trace::SessionRecord>& records, const trace::Catalog& catalog);

std::string estimates_csv(const std::vector<trace::SwarmEstimate>& estimates);

}  // namespace swarmgain::analysis
