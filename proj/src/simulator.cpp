#include "simulator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include <json.hpp>

#include "errors.hpp"
#include "rng.hpp"

namespace swarmgain::sim {

std::pair<double, double> availability_window(double start, double watch_duration,
                                              double bitrate_bps, double content_length,
                                              AvailabilityMode mode, double bandwidth_bps) {
    if (mode == AvailabilityMode::watch) return {start, start + watch_duration};
    if (!(bandwidth_bps >= bitrate_bps))
        throw ValidationError("download mode requires bandwidth >= session bitrate");
    const double download_time = bitrate_bps * content_length / bandwidth_bps;
    return {start, start + std::min(watch_duration, download_time)};
}

bool user_participates(const std::string& user_id, double alpha, uint64_t seed) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must be in (0, 1]");
    return rng::user_participates(user_id, alpha, seed);
}

void validate_config(const ScenarioConfig& c) {
    if (c.min_swarm < 1) throw ValidationError("scenario: min_swarm_m must be >= 1");
    if (!(c.participation_alpha > 0.0 && c.participation_alpha <= 1.0))
        throw ValidationError("scenario: participation_alpha must be in (0, 1]");
    if (c.cache_size_k < 0) throw ValidationError("scenario: cache_size_k must be >= 0");
    if (!(c.eligibility_fraction >= 0.0 && c.eligibility_fraction < 1.0))
        throw ValidationError("scenario: eligibility_fraction must be in [0, 1)");
    if (c.availability_mode == AvailabilityMode::download && !(c.download_bandwidth_bps > 0.0))
        throw ValidationError("scenario: download mode requires download_bandwidth_bps > 0");
    if (c.ladder.rungs.empty()) throw ValidationError("scenario: bitrate ladder must be nonempty");
    for (size_t i = 1; i < c.ladder.rungs.size(); ++i)
        if (!(c.ladder.rungs[i - 1] < c.ladder.rungs[i]))
            throw ValidationError("scenario: ladder rungs must be strictly ascending");
}

namespace {

struct Session {
    int user = 0;
    int key = 0;   // swarm under the active split flags
    int content = 0;
    int isp = 0;
    int rung = 0;  // kbps
    double start = 0.0;
    double watch_end = 0.0;
    double source_begin = 0.0;  // start + eligibility_fraction * content_length
    double source_end = 0.0;    // availability window end
    double bits = 0.0;          // bitrate * watch_duration
    int64_t start_day = 0;
};

// Phase order at equal timestamps: expiring sources and sessions leave
// first, then ends feed caches, then threshold crossings, then new
// arrivals decide. Keeps half-open windows and the inclusive streaming
// threshold exact.
enum Phase : int { kSourceEnd = 0, kSessionEnd = 1, kSourceBegin = 2, kSessionStart = 3 };

struct Event {
    double t;
    int phase;
    int64_t seq;  // index in sorted session order; makes ties deterministic
};

struct UserKeyState {
    int session_sources = 0;
    int cache_matches = 0;
    bool contributing = false;
};

struct CacheEntry {
    int content, isp, rung;
    bool operator==(const CacheEntry&) const = default;
};

struct User {
    bool participating = false;
    int online = 0;                 // active watch intervals
    std::vector<CacheEntry> cache;  // most recently watched first
    std::unordered_map<int, UserKeyState> keys;
};

struct GroupStats {
    int64_t sessions = 0;
    int64_t peer_served = 0;
    double useful_bits = 0.0;
    double server_bits = 0.0;
};

class Interner {
public:
    int intern(const std::string& s) {
        auto [it, fresh] = index_.try_emplace(s, static_cast<int>(names_.size()));
        if (fresh) names_.push_back(s);
        return it->second;
    }
    const std::string& name(int id) const { return names_[id]; }
    size_t size() const { return names_.size(); }

private:
    std::unordered_map<std::string, int> index_;
    std::vector<std::string> names_;
};

struct PackedKey {
    int content, isp, rung;  // -1 where the split is inactive
    bool operator==(const PackedKey&) const = default;
};

struct PackedKeyHash {
    size_t operator()(const PackedKey& k) const {
        uint64_t h = static_cast<uint64_t>(k.content) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<uint64_t>(k.isp + 1) * 0xc2b2ae3d27d4eb4fULL;
        h ^= static_cast<uint64_t>(k.rung + 1) * 0x165667b19e3779f9ULL;
        return static_cast<size_t>(h ^ (h >> 29));
    }
};

struct KeyDayHash {
    size_t operator()(const std::pair<int, int64_t>& p) const {
        return std::hash<int64_t>()((static_cast<int64_t>(p.first) << 20) ^ p.second);
    }
};

class Engine {
public:
    Engine(const std::vector<trace::SessionRecord>& records, const trace::Catalog& catalog,
           const ScenarioConfig& config)
        : config_(config) {
        build_sessions(records, catalog);
        build_events();
    }

    SimReport run() {
        for (const auto& ev : events_) {
            current_t_ = ev.t;
            Session& s = sessions_[ev.seq];
            switch (ev.phase) {
                case kSessionStart: on_session_start(s); break;
                case kSourceBegin: source_delta(s, +1); break;
                case kSourceEnd: source_delta(s, -1); break;
                case kSessionEnd: on_session_end(s); break;
            }
        }
        return finish();
    }

private:
    void build_sessions(const std::vector<trace::SessionRecord>& records,
                        const trace::Catalog& catalog) {
        std::vector<const trace::SessionRecord*> sorted;
        sorted.reserve(records.size());
        for (const auto& r : records) sorted.push_back(&r);
        std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
            return std::tie(a->start_time, a->user_id, a->content_id) <
                   std::tie(b->start_time, b->user_id, b->content_id);
        });

        sessions_.reserve(sorted.size());
        for (const auto* r : sorted) {
            auto cat = catalog.find(r->content_id);
            if (cat == catalog.end())
                throw ValidationError("trace references unknown content_id '" + r->content_id +
                                      "'");
            Session s;
            s.user = user_names_.intern(r->user_id);
            s.content = contents_.intern(r->content_id);
            s.isp = isps_.intern(r->isp_id);
            s.rung =
                static_cast<int>(std::lround(trace::map_bitrate(r->avg_bitrate, config_.ladder)));
            s.key = intern_key(s.content, s.isp, s.rung);
            s.start = r->start_time;
            s.watch_end = r->start_time + r->watch_duration;
            const double beta_bps = r->avg_bitrate * 1000.0;
            const auto window =
                availability_window(r->start_time, r->watch_duration, beta_bps,
                                    cat->second.length, config_.availability_mode,
                                    config_.download_bandwidth_bps);
            s.source_begin = r->start_time + config_.eligibility_fraction * cat->second.length;
            s.source_end = window.second;
            s.bits = beta_bps * r->watch_duration;
            s.start_day = trace::day_of(r->start_time);
            sessions_.push_back(std::move(s));
        }

        users_.resize(user_names_.size());
        for (size_t u = 0; u < users_.size(); ++u)
            users_[u].participating = rng::user_participates(
                user_names_.name(static_cast<int>(u)), config_.participation_alpha,
                config_.rng_seed);
    }

    void build_events() {
        events_.reserve(sessions_.size() * 4);
        for (size_t i = 0; i < sessions_.size(); ++i) {
            const auto& s = sessions_[i];
            const auto seq = static_cast<int64_t>(i);
            events_.push_back({s.start, kSessionStart, seq});
            events_.push_back({s.watch_end, kSessionEnd, seq});
            if (users_[s.user].participating && s.source_begin < s.source_end) {
                // A zero threshold activates inline at session start.
                if (s.source_begin > s.start)
                    events_.push_back({s.source_begin, kSourceBegin, seq});
                events_.push_back({s.source_end, kSourceEnd, seq});
            }
        }
        std::sort(events_.begin(), events_.end(), [](const Event& a, const Event& b) {
            return std::tie(a.t, a.phase, a.seq) < std::tie(b.t, b.phase, b.seq);
        });
    }

    void on_session_start(Session& s) {
        User& user = users_[s.user];
        int eligible_others = key_counts_[s.key];
        auto it = user.keys.find(s.key);
        if (it != user.keys.end() && it->second.contributing) --eligible_others;
        const bool peer = eligible_others >= config_.min_swarm;

        auto& per_key = key_day_stats_[{s.key, s.start_day}];
        auto& per_day = day_stats_[s.start_day];
        ++totals_.sessions;
        ++per_key.sessions;
        ++per_day.sessions;
        totals_.useful_bits += s.bits;
        per_key.useful_bits += s.bits;
        per_day.useful_bits += s.bits;
        if (peer) {
            ++totals_.peer_served;
            ++per_key.peer_served;
            ++per_day.peer_served;
        } else {
            totals_.server_bits += s.bits;
            per_key.server_bits += s.bits;
            per_day.server_bits += s.bits;
        }

        // Activate the session only after its own decision.
        user.online += 1;
        if (user.participating) {
            if (user.online == 1)
                for (const auto& e : user.cache) refresh(s.user, entry_key(e));
            if (s.source_begin <= s.start && s.start < s.source_end) source_delta(s, +1);
        }
    }

    void on_session_end(Session& s) {
        User& user = users_[s.user];
        user.online -= 1;
        if (!user.participating) return;
        if (user.online == 0)
            for (const auto& e : user.cache) refresh(s.user, entry_key(e));
        if (config_.cache_size_k > 0) push_cache(s);
    }

    void push_cache(const Session& s) {
        User& user = users_[s.user];
        const CacheEntry entry{s.content, s.isp, s.rung};
        auto pos = std::find(user.cache.begin(), user.cache.end(), entry);
        if (pos != user.cache.end()) {
            std::rotate(user.cache.begin(), pos, pos + 1);  // just refresh recency
            return;
        }
        user.cache.insert(user.cache.begin(), entry);
        const int key = entry_key(entry);
        user.keys[key].cache_matches += 1;
        refresh(s.user, key);
        if (static_cast<int>(user.cache.size()) > config_.cache_size_k) {
            const CacheEntry evicted = user.cache.back();
            user.cache.pop_back();
            const int ek = entry_key(evicted);
            user.keys[ek].cache_matches -= 1;
            refresh(s.user, ek);
        }
    }

    void source_delta(Session& s, int delta) {
        users_[s.user].keys[s.key].session_sources += delta;
        refresh(s.user, s.key);
    }

    // Recompute one user's eligibility for one swarm and fold any change
    // into the concurrency count and its time integral.
    void refresh(int user_idx, int key) {
        User& user = users_[user_idx];
        auto& st = user.keys[key];
        const bool now = user.participating &&
                         (st.session_sources > 0 || (st.cache_matches > 0 && user.online > 0));
        if (now == st.contributing) return;
        integrate(key);
        key_counts_[key] += now ? 1 : -1;
        st.contributing = now;
    }

    void integrate(int key) {
        auto [it, fresh] = key_last_update_.try_emplace(key, current_t_);
        if (fresh) return;
        double from = it->second;
        it->second = current_t_;
        const int count = key_counts_[key];
        if (count == 0 || current_t_ <= from) return;
        // Split the segment across UTC days for per-day capacities.
        while (from < current_t_) {
            const int64_t d = trace::day_of(from);
            const double day_end = static_cast<double>(d + 1) * 86400.0;
            const double seg_end = std::min(current_t_, day_end);
            key_day_integral_[{key, d}] += count * (seg_end - from);
            from = seg_end;
        }
    }

    int intern_key(int content, int isp, int rung) {
        const PackedKey pk{content, config_.isp_split ? isp : -1,
                           config_.bitrate_split ? rung : -1};
        auto [it, fresh] = key_index_.try_emplace(pk, static_cast<int>(key_counts_.size()));
        if (fresh) {
            key_counts_.push_back(0);
            key_packed_.push_back(pk);
        }
        return it->second;
    }

    int entry_key(const CacheEntry& e) { return intern_key(e.content, e.isp, e.rung); }

    std::string key_name(int key) const {
        const PackedKey& pk = key_packed_[key];
        std::string s = contents_.name(pk.content);
        if (pk.isp >= 0) s += "|" + isps_.name(pk.isp);
        if (pk.rung >= 0) s += "|" + std::to_string(pk.rung);
        return s;
    }

    SimReport finish() {
        SimReport report;
        report.useful_bytes = totals_.useful_bits / 8.0;
        report.server_bytes = totals_.server_bits / 8.0;
        report.peer_bytes = (totals_.useful_bits - totals_.server_bits) / 8.0;
        report.gain =
            totals_.useful_bits > 0.0 ? 1.0 - totals_.server_bits / totals_.useful_bits : 0.0;
        report.sessions = totals_.sessions;
        report.peer_served = totals_.peer_served;

        for (const auto& [day, st] : day_stats_) {
            SimReport::DayRow row;
            row.day = day;
            row.sessions = st.sessions;
            row.peer_served = st.peer_served;
            row.useful_bytes = st.useful_bits / 8.0;
            row.server_bytes = st.server_bits / 8.0;
            row.gain = st.useful_bits > 0.0 ? 1.0 - st.server_bits / st.useful_bits : 0.0;
            report.days.push_back(row);
        }

        double capacity_sum = 0.0;
        for (const auto& [key_day, st] : key_day_stats_) {
            SimReport::SwarmRow row;
            row.key = key_name(key_day.first);
            row.day = key_day.second;
            row.sessions = st.sessions;
            row.peer_served = st.peer_served;
            auto integral = key_day_integral_.find(key_day);
            row.capacity = integral == key_day_integral_.end() ? 0.0 : integral->second / 86400.0;
            row.gain = st.useful_bits > 0.0 ? 1.0 - st.server_bits / st.useful_bits : 0.0;
            capacity_sum += row.capacity;
            report.swarms.push_back(std::move(row));
        }
        std::sort(report.swarms.begin(), report.swarms.end(), [](const auto& a, const auto& b) {
            return std::tie(a.key, a.day) < std::tie(b.key, b.day);
        });
        if (!report.swarms.empty())
            report.mean_swarm_capacity = capacity_sum / static_cast<double>(report.swarms.size());
        return report;
    }

    ScenarioConfig config_;
    std::vector<Session> sessions_;
    std::vector<Event> events_;
    Interner user_names_, contents_, isps_;
    std::vector<User> users_;
    std::unordered_map<PackedKey, int, PackedKeyHash> key_index_;
    std::vector<PackedKey> key_packed_;
    std::vector<int> key_counts_;
    std::unordered_map<int, double> key_last_update_;
    std::unordered_map<std::pair<int, int64_t>, double, KeyDayHash> key_day_integral_;
    std::unordered_map<std::pair<int, int64_t>, GroupStats, KeyDayHash> key_day_stats_;
    std::map<int64_t, GroupStats> day_stats_;
    GroupStats totals_;
    double current_t_ = 0.0;
};

}  // namespace

SimReport run(const std::vector<trace::SessionRecord>& records, const trace::Catalog& catalog,
              const ScenarioConfig& config) {
    validate_config(config);
    Engine engine(records, catalog, config);
    return engine.run();
}

ScenarioConfig scenario_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("scenario: invalid JSON: ") + e.what());
    }
    ScenarioConfig c;
    try {
        c.isp_split = j.value("isp_split", c.isp_split);
        c.bitrate_split = j.value("bitrate_split", c.bitrate_split);
        c.min_swarm = j.value("min_swarm_m", c.min_swarm);
        c.participation_alpha = j.value("participation_alpha", c.participation_alpha);
        const std::string mode = j.value("availability_mode", std::string("watch"));
        if (mode == "watch") {
            c.availability_mode = AvailabilityMode::watch;
        } else if (mode == "download") {
            c.availability_mode = AvailabilityMode::download;
        } else {
            throw ValidationError("scenario: availability_mode must be 'watch' or 'download'");
        }
        c.download_bandwidth_bps = j.value("download_bandwidth_bps", c.download_bandwidth_bps);
        c.cache_size_k = j.value("cache_size_k", c.cache_size_k);
        c.eligibility_fraction = j.value("eligibility_fraction", c.eligibility_fraction);
        c.rng_seed = j.value("rng_seed", c.rng_seed);
        if (j.contains("ladder")) c.ladder.rungs = j.at("ladder").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("scenario: ") + e.what());
    }
    validate_config(c);
    return c;
}

std::string scenario_to_json(const ScenarioConfig& c) {
    nlohmann::json j;
    j["isp_split"] = c.isp_split;
    j["bitrate_split"] = c.bitrate_split;
    j["min_swarm_m"] = c.min_swarm;
    j["participation_alpha"] = c.participation_alpha;
    j["availability_mode"] = c.availability_mode == AvailabilityMode::watch ? "watch" : "download";
    if (c.availability_mode == AvailabilityMode::download)
        j["download_bandwidth_bps"] = c.download_bandwidth_bps;
    j["cache_size_k"] = c.cache_size_k;
    j["eligibility_fraction"] = c.eligibility_fraction;
    j["rng_seed"] = c.rng_seed;
    j["ladder"] = c.ladder.rungs;
    return j.dump(2);
}

std::string report_to_json(const SimReport& r) {
    nlohmann::json j;
    j["useful_bytes"] = r.useful_bytes;
    j["server_bytes"] = r.server_bytes;
    j["peer_bytes"] = r.peer_bytes;
    j["gain"] = r.gain;
    j["sessions"] = r.sessions;
    j["peer_served"] = r.peer_served;
    j["mean_swarm_capacity"] = r.mean_swarm_capacity;
    j["days"] = nlohmann::json::array();
    for (const auto& d : r.days) {
        nlohmann::json row;
        row["date"] = trace::day_to_string(d.day);
        row["sessions"] = d.sessions;
        row["peer_served"] = d.peer_served;
        row["useful_bytes"] = d.useful_bytes;
        row["server_bytes"] = d.server_bytes;
        row["gain"] = d.gain;
        j["days"].push_back(row);
    }
    return j.dump(2);
}

std::string swarms_to_csv(const SimReport& r) {
    std::string out = "swarm_key,day,sessions,served_by_peers,capacity,gain\n";
    for (const auto& s : r.swarms) {
        out += s.key;
        out += ',';
        out += trace::day_to_string(s.day);
        out += ',';
        out += std::to_string(s.sessions);
        out += ',';
        out += std::to_string(s.peer_served);
        out += ',';
        out += trace::format_double(s.capacity);
        out += ',';
        out += trace::format_double(s.gain);
        out += '\n';
    }
    return out;
}

}  // namespace swarmgain::sim
