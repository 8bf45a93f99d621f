#include "workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "errors.hpp"
#include "rng.hpp"

namespace swarmgain::workload {

namespace {

std::string item_id(int64_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "item-%05lld", static_cast<long long>(i));
    return buf;
}

void require(bool ok, const std::string& field, const std::string& why) {
    if (!ok) throw ValidationError("workload spec: field '" + field + "' " + why);
}

double shares_sum(const auto& shares) {
    double sum = 0.0;
    for (const auto& [k, v] : shares) sum += v;
    return sum;
}

// Categorical draw by cumulative share scan; share lists are short.
template <typename T>
const T& pick_share(const std::vector<std::pair<T, double>>& shares, double u) {
    double acc = 0.0;
    for (const auto& [key, share] : shares) {
        acc += share;
        if (u <= acc) return key;
    }
    return shares.back().first;
}

}  // namespace

std::vector<double> zipf_rates(int64_t n, double s, double total) {
    if (n < 1) throw ValidationError("zipf_rates: n must be >= 1");
    if (!(s >= 0.0) || !std::isfinite(s)) throw ValidationError("zipf_rates: s must be >= 0");
    if (!(total > 0.0)) throw ValidationError("zipf_rates: total must be > 0");
    std::vector<double> weights(n);
    double norm = 0.0;
    for (int64_t i = 0; i < n; ++i) {
        weights[i] = std::pow(static_cast<double>(i + 1), -s);
        norm += weights[i];
    }
    for (auto& w : weights) w *= total / norm;
    return weights;
}

void validate_spec(const WorkloadSpec& spec) {
    require(spec.catalog_size >= 1, "catalog_size", "must be >= 1");
    require(std::isfinite(spec.zipf_exponent) && spec.zipf_exponent >= 0.0, "zipf_exponent",
            "must be >= 0");
    require(spec.total_arrival_rate > 0.0, "total_arrival_rate", "must be > 0");
    require(spec.mean_watch > 0.0, "mean_watch_s", "must be > 0");
    require(spec.horizon > 0.0, "horizon_s", "must be > 0");
    if (spec.content_lengths.empty()) {
        require(spec.content_length > 0.0, "content_length_s", "must be > 0");
    } else {
        require(static_cast<int64_t>(spec.content_lengths.size()) == spec.catalog_size,
                "content_lengths", "must have catalog_size entries");
        for (double l : spec.content_lengths)
            require(l > 0.0, "content_lengths", "entries must be > 0");
    }
    require(!spec.isp_shares.empty(), "isp_shares", "must be nonempty");
    require(std::abs(shares_sum(spec.isp_shares) - 1.0) <= 1e-9, "isp_shares", "must sum to 1");
    require(!spec.ladder_shares.empty(), "ladder_shares", "must be nonempty");
    require(std::abs(shares_sum(spec.ladder_shares) - 1.0) <= 1e-9, "ladder_shares",
            "must sum to 1");
    for (const auto& [rung, share] : spec.ladder_shares) {
        require(rung > 0, "ladder_shares", "rungs must be positive kbps values");
        require(share >= 0.0, "ladder_shares", "shares must be >= 0");
    }
    for (const auto& [isp, share] : spec.isp_shares) {
        require(!isp.empty(), "isp_shares", "isp ids must be nonempty");
        require(share >= 0.0, "isp_shares", "shares must be >= 0");
    }
    require(spec.repeat_viewer_fraction >= 0.0 && spec.repeat_viewer_fraction <= 1.0,
            "repeat_viewer_fraction", "must be in [0, 1]");
}

Generated generate(const WorkloadSpec& spec) {
    validate_spec(spec);

    Generated out;
    for (int64_t i = 0; i < spec.catalog_size; ++i) {
        trace::ContentRecord rec;
        rec.content_id = item_id(i);
        rec.length = spec.content_lengths.empty() ? spec.content_length : spec.content_lengths[i];
        out.catalog.emplace(rec.content_id, std::move(rec));
    }

    const auto rates = zipf_rates(spec.catalog_size, spec.zipf_exponent, spec.total_arrival_rate);

    // Arrivals, durations, ISP and rung first, with one derived stream
    // per item so the draw sequence is independent of catalog size.
    for (int64_t i = 0; i < spec.catalog_size; ++i) {
        if (rates[i] <= 0.0) continue;
        rng::Xoshiro256 gen(rng::derive_seed(spec.rng_seed, static_cast<uint64_t>(i)));
        const double length =
            spec.content_lengths.empty() ? spec.content_length : spec.content_lengths[i];
        double t = gen.exponential(1.0 / rates[i]);
        while (t < spec.horizon) {
            trace::SessionRecord rec;
            rec.content_id = item_id(i);
            rec.start_time = spec.start_time + t;
            double watch = gen.exponential(spec.mean_watch);
            if (spec.truncate_at_length) watch = std::min(watch, length);
            rec.watch_duration = watch;
            rec.isp_id = pick_share(spec.isp_shares, gen.u01());
            rec.avg_bitrate = static_cast<double>(pick_share(spec.ladder_shares, gen.u01()));
            out.records.push_back(std::move(rec));
            t += gen.exponential(1.0 / rates[i]);
        }
    }

    std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.start_time, a.content_id) < std::tie(b.start_time, b.content_id);
    });

    // User identities in arrival order: a repeat_viewer_fraction of
    // sessions reuse an already-seen user, the rest mint a new one.
    rng::Xoshiro256 users(rng::derive_seed(spec.rng_seed, 0x757365727374726dULL));
    std::vector<std::string> seen;
    int64_t next_user = 0;
    for (auto& rec : out.records) {
        if (!seen.empty() && users.u01() < spec.repeat_viewer_fraction) {
            rec.user_id = seen[users.below(seen.size())];
        } else {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "u-%07lld", static_cast<long long>(next_user++));
            rec.user_id = buf;
            seen.push_back(rec.user_id);
        }
    }
    return out;
}

WorkloadSpec spec_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("workload spec: invalid JSON: ") + e.what());
    }
    WorkloadSpec spec;
    try {
        spec.catalog_size = j.value("catalog_size", spec.catalog_size);
        spec.zipf_exponent = j.value("zipf_exponent", spec.zipf_exponent);
        spec.total_arrival_rate = j.value("total_arrival_rate", spec.total_arrival_rate);
        spec.mean_watch = j.value("mean_watch_s", spec.mean_watch);
        spec.content_length = j.value("content_length_s", spec.content_length);
        if (j.contains("content_lengths_s"))
            spec.content_lengths = j.at("content_lengths_s").get<std::vector<double>>();
        spec.horizon = j.value("horizon_s", spec.horizon);
        spec.start_time = j.value("start_ts", spec.start_time);
        if (j.contains("isp_shares")) {
            for (const auto& [isp, share] : j.at("isp_shares").items())
                spec.isp_shares.emplace_back(isp, share.get<double>());
            std::sort(spec.isp_shares.begin(), spec.isp_shares.end());
        }
        if (j.contains("ladder_shares")) {
            for (const auto& [rung, share] : j.at("ladder_shares").items())
                spec.ladder_shares.emplace_back(std::stoi(rung), share.get<double>());
            std::sort(spec.ladder_shares.begin(), spec.ladder_shares.end());
        }
        spec.repeat_viewer_fraction = j.value("repeat_viewer_fraction", spec.repeat_viewer_fraction);
        spec.truncate_at_length = j.value("truncate_at_length", spec.truncate_at_length);
        spec.rng_seed = j.value("rng_seed", spec.rng_seed);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("workload spec: ") + e.what());
    }
    return spec;
}

}  // namespace swarmgain::workload
