#include "trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace swarmgain::trace {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        const size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r')
        out.back().pop_back();  // CRLF input
    return out;
}

bool parse_number(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    return in;
}

[[noreturn]] void fail_rows(const std::string& path, const std::vector<std::string>& problems) {
    std::ostringstream msg;
    msg << path << ": " << problems.size() << " invalid row(s)";
    const size_t shown = std::min<size_t>(problems.size(), 10);
    for (size_t i = 0; i < shown; ++i) msg << "\n  " << problems[i];
    if (problems.size() > shown) msg << "\n  ...";
    throw ValidationError(msg.str());
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

Catalog parse_catalog(const std::string& path) {
    auto in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path + ": empty catalog file");
    auto header = split_fields(line);
    if (header.size() < 2 || header[0] != "content_id" || header[1] != "length_s")
        throw ValidationError(path + ": expected header content_id,length_s[,release_ts]");

    Catalog catalog;
    std::vector<std::string> problems;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto f = split_fields(line);
        auto bad = [&](const std::string& why) {
            problems.push_back("line " + std::to_string(line_no) + ": " + why);
        };
        if (f.size() < 2 || f.size() > 3) {
            bad("expected 2 or 3 fields, got " + std::to_string(f.size()));
            continue;
        }
        ContentRecord rec;
        rec.content_id = f[0];
        double length = 0.0;
        if (rec.content_id.empty()) {
            bad("empty content_id");
        } else if (!parse_number(f[1], length) || length <= 0.0) {
            bad("length_s must be a positive number, got '" + f[1] + "'");
        } else {
            rec.length = length;
            if (f.size() == 3 && !f[2].empty()) {
                double rel = 0.0;
                if (!parse_number(f[2], rel)) {
                    bad("release_ts must be a number, got '" + f[2] + "'");
                    continue;
                }
                rec.release_time = rel;
            }
            if (catalog.count(rec.content_id)) {
                bad("duplicate content_id '" + rec.content_id + "'");
            } else {
                catalog.emplace(rec.content_id, std::move(rec));
            }
        }
    }
    if (!problems.empty()) fail_rows(path, problems);
    if (catalog.empty()) throw ValidationError(path + ": catalog has no entries");
    return catalog;
}

ParseResult parse_trace(const std::string& path, const Catalog& catalog, bool lenient) {
    auto in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path + ": empty trace file");
    auto header = split_fields(line);
    static const std::vector<std::string> kHeader = {"user_id",    "content_id", "start_ts",
                                                     "duration_s", "isp",        "avg_bitrate_kbps"};
    if (std::vector<std::string>(header.begin(), header.end()) != kHeader)
        throw ValidationError(path +
                              ": expected header user_id,content_id,start_ts,duration_s,isp,"
                              "avg_bitrate_kbps");

    ParseResult result;
    std::vector<std::string> problems;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto f = split_fields(line);
        auto bad = [&](const std::string& why) {
            problems.push_back("line " + std::to_string(line_no) + ": " + why);
        };
        if (f.size() != 6) {
            bad("expected 6 fields, got " + std::to_string(f.size()));
            continue;
        }
        SessionRecord rec;
        rec.user_id = f[0];
        rec.content_id = f[1];
        if (rec.user_id.empty() || rec.content_id.empty()) {
            bad("empty user_id or content_id");
            continue;
        }
        if (!parse_number(f[2], rec.start_time)) {
            bad("start_ts must be a finite number, got '" + f[2] + "'");
            continue;
        }
        if (!parse_number(f[3], rec.watch_duration) || rec.watch_duration <= 0.0) {
            bad("duration_s must be > 0, got '" + f[3] + "'");
            continue;
        }
        rec.isp_id = f[4];
        if (rec.isp_id.empty()) {
            bad("empty isp");
            continue;
        }
        if (!parse_number(f[5], rec.avg_bitrate) || rec.avg_bitrate <= 0.0) {
            bad("avg_bitrate_kbps must be > 0, got '" + f[5] + "'");
            continue;
        }
        if (!catalog.count(rec.content_id)) {
            if (lenient) {
                ++result.dropped_unknown_content;
                result.warnings.push_back("line " + std::to_string(line_no) +
                                          ": unknown content_id '" + rec.content_id +
                                          "' dropped");
            } else {
                bad("unknown content_id '" + rec.content_id + "'");
            }
            continue;
        }
        result.records.push_back(std::move(rec));
    }
    if (!problems.empty()) fail_rows(path, problems);
    return result;
}

void write_trace_csv(const std::string& path, const std::vector<SessionRecord>& records) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "user_id,content_id,start_ts,duration_s,isp,avg_bitrate_kbps\n";
    for (const auto& r : records) {
        out << r.user_id << ',' << r.content_id << ',' << format_double(r.start_time) << ','
            << format_double(r.watch_duration) << ',' << r.isp_id << ','
            << format_double(r.avg_bitrate) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_catalog_csv(const std::string& path, const Catalog& catalog) {
    std::vector<const ContentRecord*> rows;
    rows.reserve(catalog.size());
    for (const auto& [id, rec] : catalog) rows.push_back(&rec);
    std::sort(rows.begin(), rows.end(),
              [](const auto* a, const auto* b) { return a->content_id < b->content_id; });

    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "content_id,length_s,release_ts\n";
    for (const auto* r : rows) {
        out << r->content_id << ',' << format_double(r->length) << ',';
        if (r->release_time) out << format_double(*r->release_time);
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

double map_bitrate(double avg_bitrate_kbps, const BitrateLadder& ladder) {
    if (ladder.rungs.empty()) throw ValidationError("bitrate ladder is empty");
    double best = ladder.rungs.front();
    double best_dist = std::abs(avg_bitrate_kbps - best);
    for (double rung : ladder.rungs) {
        const double dist = std::abs(avg_bitrate_kbps - rung);
        // Strict < keeps the lower rung on ties (rungs ascend).
        if (dist < best_dist) {
            best = rung;
            best_dist = dist;
        }
    }
    return best;
}

int64_t day_of(double start_time) {
    return static_cast<int64_t>(std::floor(start_time / 86400.0));
}

std::string day_to_string(int64_t day) {
    // Civil-from-days (Howard Hinnant's algorithm), proleptic Gregorian.
    int64_t z = day + 719468;
    const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int64_t y = static_cast<int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    const int64_t year = y + (m <= 2);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02u", static_cast<long long>(year), m, d);
    return buf;
}

std::map<int64_t, std::vector<SessionRecord>> partition_days(
    const std::vector<SessionRecord>& records) {
    std::map<int64_t, std::vector<SessionRecord>> days;
    for (const auto& r : records) days[day_of(r.start_time)].push_back(r);
    return days;
}

std::string SwarmKey::str() const {
    std::string s = content_id;
    if (isp_id) s += "|" + *isp_id;
    if (ladder_rung) s += "|" + std::to_string(*ladder_rung);
    return s;
}

std::vector<SwarmEstimate> estimate_swarm_params(const std::vector<SessionRecord>& records,
                                                 const Catalog& catalog, bool isp_split,
                                                 bool bitrate_split,
                                                 const BitrateLadder& ladder) {
    struct Accum {
        double watch_sum = 0.0;
        double bitrate_sum = 0.0;
        int64_t count = 0;
    };
    std::map<std::pair<SwarmKey, int64_t>, Accum> groups;
    for (const auto& r : records) {
        if (!catalog.count(r.content_id))
            throw ValidationError("record references unknown content_id '" + r.content_id + "'");
        SwarmKey key{r.content_id, std::nullopt, std::nullopt};
        if (isp_split) key.isp_id = r.isp_id;
        if (bitrate_split)
            key.ladder_rung = static_cast<int>(std::lround(map_bitrate(r.avg_bitrate, ladder)));
        auto& acc = groups[{std::move(key), day_of(r.start_time)}];
        acc.watch_sum += r.watch_duration;
        acc.bitrate_sum += r.avg_bitrate;
        ++acc.count;
    }
    std::vector<SwarmEstimate> out;
    out.reserve(groups.size());
    for (const auto& [key_day, acc] : groups) {
        SwarmEstimate est;
        est.key = key_day.first;
        est.day = key_day.second;
        est.session_count = acc.count;
        est.arrival_rate = static_cast<double>(acc.count) / 86400.0;
        est.mean_watch = acc.watch_sum / static_cast<double>(acc.count);
        est.mean_bitrate_kbps = acc.bitrate_sum / static_cast<double>(acc.count);
        out.push_back(std::move(est));
    }
    return out;
}

}  // namespace swarmgain::trace
