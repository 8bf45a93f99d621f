#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "errors.hpp"
#include "rng.hpp"

namespace swarmgain::analysis {

model::SwarmParams params_from_estimate(const trace::SwarmEstimate& est,
                                        const trace::Catalog& catalog) {
    auto it = catalog.find(est.key.content_id);
    if (it == catalog.end())
        throw ValidationError("estimate references unknown content_id '" + est.key.content_id +
                              "'");
    model::SwarmParams p;
    p.arrival_rate = est.arrival_rate;
    p.mean_watch = est.mean_watch;
    p.content_length = it->second.length;
    p.bitrate = (est.key.ladder_rung ? static_cast<double>(*est.key.ladder_rung)
                                     : est.mean_bitrate_kbps) *
                1000.0;
    return p;
}

std::vector<GainRow> analyze(const std::vector<trace::SessionRecord>& records,
                             const trace::Catalog& catalog, int min_swarm, double alpha,
                             bool bitrate_split, const trace::BitrateLadder& ladder) {
    const auto estimates =
        trace::estimate_swarm_params(records, catalog, /*isp_split=*/true, bitrate_split, ladder);

    struct Group {
        std::vector<model::SwarmParams> swarms;
        int64_t sessions = 0;
    };
    std::map<std::pair<std::string, std::string>, Group> groups;  // (isp, day) -> swarms
    for (const auto& est : estimates) {
        const auto p = params_from_estimate(est, catalog);
        const std::string isp = *est.key.isp_id;
        const std::string day = trace::day_to_string(est.day);
        for (const auto& scope :
             {std::pair{isp, day}, {isp, std::string("all")}, {std::string("all"), day},
              {std::string("all"), std::string("all")}}) {
            auto& g = groups[scope];
            g.swarms.push_back(p);
            g.sessions += est.session_count;
        }
    }

    std::vector<GainRow> rows;
    rows.reserve(groups.size());
    for (const auto& [scope, group] : groups) {
        GainRow row;
        row.isp = scope.first;
        row.day = scope.second;
        row.sessions = group.sessions;
        row.gain_theo = model::partial_participation_gain(group.swarms, min_swarm, alpha);
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::vector<model::SwarmParams> estimate_params(const std::vector<trace::SessionRecord>& records,
                                                const trace::Catalog& catalog, bool isp_split,
                                                bool bitrate_split,
                                                const trace::BitrateLadder& ladder) {
    const auto estimates =
        trace::estimate_swarm_params(records, catalog, isp_split, bitrate_split, ladder);
    std::vector<model::SwarmParams> swarms;
    swarms.reserve(estimates.size());
    for (const auto& est : estimates) swarms.push_back(params_from_estimate(est, catalog));
    return swarms;
}

}  // namespace

double corpus_gain(const std::vector<trace::SessionRecord>& records,
                   const trace::Catalog& catalog, int min_swarm, double alpha, bool isp_split,
                   bool bitrate_split, const trace::BitrateLadder& ladder) {
    const auto swarms = estimate_params(records, catalog, isp_split, bitrate_split, ladder);
    return model::partial_participation_gain(swarms, min_swarm, alpha);
}

double corpus_gain_download(const std::vector<trace::SessionRecord>& records,
                            const trace::Catalog& catalog, int min_swarm, double alpha,
                            bool isp_split, bool bitrate_split,
                            const trace::BitrateLadder& ladder, double bandwidth_bps) {
    if (!(bandwidth_bps > 0.0))
        throw ValidationError("download gain: bandwidth must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ValidationError("download gain: alpha must be in (0, 1]");
    auto swarms = estimate_params(records, catalog, isp_split, bitrate_split, ladder);
    double useful = 0.0, server = 0.0;
    for (auto& s : swarms) {
        if (s.arrival_rate == 0.0) continue;
        if (bandwidth_bps < s.bitrate)
            throw ValidationError("download gain: bandwidth below swarm bitrate");
        const double download_time = s.bitrate * s.content_length / bandwidth_bps;
        // Mean of min(Exp(u), download_time).
        const double seeding = s.mean_watch * (1.0 - std::exp(-download_time / s.mean_watch));
        const double load = (s.bitrate * s.content_length) * s.arrival_rate;
        const double p = model::unavailability_from_capacity(
            seeding * (alpha * s.arrival_rate), min_swarm);
        useful += load;
        server += load * p;
    }
    if (useful <= 0.0) throw ValidationError("download gain: no sessions");
    return 1.0 - server / useful;
}

std::string gain_table_csv(const std::vector<GainRow>& rows) {
    std::string out = "isp,day,sessions,gain_theo\n";
    for (const auto& r : rows) {
        out += r.isp;
        out += ',';
        out += r.day;
        out += ',';
        out += std::to_string(r.sessions);
        out += ',';
        out += trace::format_double(r.gain_theo);
        out += '\n';
    }
    return out;
}

std::vector<std::pair<std::string, model::SwarmParams>> item_params(
    const std::vector<trace::SessionRecord>& records, const trace::Catalog& catalog) {
    if (records.empty()) throw ValidationError("bundle scan: trace has no sessions");
    struct Accum {
        double watch_sum = 0.0, bitrate_sum = 0.0;
        int64_t count = 0;
    };
    std::map<std::string, Accum> per_item;
    std::set<int64_t> days;
    for (const auto& r : records) {
        if (!catalog.count(r.content_id))
            throw ValidationError("record references unknown content_id '" + r.content_id + "'");
        auto& acc = per_item[r.content_id];
        acc.watch_sum += r.watch_duration;
        acc.bitrate_sum += r.avg_bitrate;
        ++acc.count;
        days.insert(trace::day_of(r.start_time));
    }
    // Rate over the covered span: first to last active day, inclusive.
    const double span_s =
        static_cast<double>(*days.rbegin() - *days.begin() + 1) * 86400.0;

    std::vector<std::pair<std::string, model::SwarmParams>> out;
    out.reserve(per_item.size());
    for (const auto& [id, acc] : per_item) {
        model::SwarmParams p;
        p.arrival_rate = static_cast<double>(acc.count) / span_s;
        p.mean_watch = acc.watch_sum / static_cast<double>(acc.count);
        p.bitrate = acc.bitrate_sum / static_cast<double>(acc.count) * 1000.0;
        p.content_length = catalog.at(id).length;
        out.emplace_back(id, p);
    }
    return out;
}

namespace {

// Number of k-subsets of n, saturating instead of overflowing.
int64_t combinations_or_max(int64_t n, int64_t k, int64_t cap) {
    double c = 1.0;
    for (int64_t i = 1; i <= k; ++i) {
        c *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (c > static_cast<double>(cap) * 2.0) return cap + 1;
    }
    return static_cast<int64_t>(std::llround(c));
}

}  // namespace

BundleScanResult bundle_scan(const std::vector<trace::SessionRecord>& records,
                             const trace::Catalog& catalog, const std::vector<int>& sizes,
                             int64_t sample_count, uint64_t seed, int min_swarm) {
    if (sample_count < 1) throw ValidationError("bundle scan: sample_count must be >= 1");
    if (min_swarm < 1) throw ValidationError("bundle scan: min_swarm must be >= 1");
    const auto items = item_params(records, catalog);
    const auto n = static_cast<int64_t>(items.size());

    BundleScanResult result;
    result.samples_csv = "bundle_size,sample,delta_gain,items\n";

    for (int k : sizes) {
        if (k < 2) throw ValidationError("bundle scan: bundle size must be >= 2");
        if (k > n)
            throw ValidationError("bundle scan: bundle size " + std::to_string(k) +
                                  " exceeds catalog size " + std::to_string(n));
        BundleSizeResult sres;
        sres.bundle_size = k;

        std::vector<std::vector<int64_t>> combos;
        const int64_t total = combinations_or_max(n, k, sample_count);
        if (total <= sample_count) {
            sres.exhaustive = true;
            // Lexicographic enumeration.
            std::vector<int64_t> idx(k);
            for (int i = 0; i < k; ++i) idx[i] = i;
            while (true) {
                combos.push_back(idx);
                int i = k - 1;
                while (i >= 0 && idx[i] == n - k + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            }
        } else {
            // Uniform k-subsets via partial Fisher-Yates on an index pool.
            rng::Xoshiro256 gen(rng::derive_seed(seed, static_cast<uint64_t>(k)));
            std::vector<int64_t> pool(n);
            for (int64_t i = 0; i < n; ++i) pool[i] = i;
            combos.reserve(sample_count);
            for (int64_t s = 0; s < sample_count; ++s) {
                for (int i = 0; i < k; ++i) {
                    const auto j = i + static_cast<int64_t>(gen.below(n - i));
                    std::swap(pool[i], pool[j]);
                }
                std::vector<int64_t> take(pool.begin(), pool.begin() + k);
                std::sort(take.begin(), take.end());
                combos.push_back(std::move(take));
            }
        }

        double positive_sum = 0.0;
        std::vector<model::SwarmParams> bundle(k);
        for (size_t s = 0; s < combos.size(); ++s) {
            std::string ids;
            for (int i = 0; i < k; ++i) {
                bundle[i] = items[combos[s][i]].second;
                if (i) ids += '+';
                ids += items[combos[s][i]].first;
            }
            const double dg = model::bundle_delta_gain(bundle, min_swarm);
            if (dg > 0.0) {
                ++sres.positives;
                positive_sum += dg;
            }
            result.samples_csv += std::to_string(k);
            result.samples_csv += ',';
            result.samples_csv += std::to_string(s);
            result.samples_csv += ',';
            result.samples_csv += trace::format_double(dg);
            result.samples_csv += ',';
            result.samples_csv += ids;
            result.samples_csv += '\n';
        }
        sres.combinations = static_cast<int64_t>(combos.size());
        sres.positive_share =
            static_cast<double>(sres.positives) / static_cast<double>(sres.combinations);
        if (sres.positives > 0)
            sres.mean_positive_delta_gain = positive_sum / static_cast<double>(sres.positives);
        result.per_size.push_back(sres);
    }
    return result;
}

std::string bundle_summary_csv(const BundleScanResult& result) {
    std::string out =
        "bundle_size,combinations,exhaustive,positive_share,mean_positive_delta_gain\n";
    for (const auto& r : result.per_size) {
        out += std::to_string(r.bundle_size);
        out += ',';
        out += std::to_string(r.combinations);
        out += ',';
        out += r.exhaustive ? "true" : "false";
        out += ',';
        out += trace::format_double(r.positive_share);
        out += ',';
        out += trace::format_double(r.mean_positive_delta_gain);
        out += '\n';
    }
    return out;
}

std::string estimates_csv(const std::vector<trace::SwarmEstimate>& estimates) {
    std::string out = "swarm_key,day,sessions,arrival_rate,mean_watch_s,mean_bitrate_kbps\n";
    for (const auto& e : estimates) {
        out += e.key.str();
        out += ',';
        out += trace::day_to_string(e.day);
        out += ',';
        out += std::to_string(e.session_count);
        out += ',';
        out += trace::format_double(e.arrival_rate);
        out += ',';
        out += trace::format_double(e.mean_watch);
        out += ',';
        out += trace::format_double(e.mean_bitrate_kbps);
        out += '\n';
    }
    return out;
}

}  // namespace swarmgain::analysis
