// swarmgain command-line tool: workload generation, trace simulation,
// analytic tables, parameter sweeps, bundle scans and the Monte-Carlo
// oracle. Every command writes a run manifest next to its outputs;
// `swarmgain replay <manifest>` reproduces a run byte for byte.

#include <swarmgain.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliError {
    int code;  // 1 runtime, 2 validation
    std::string message;
};

void check(sg_status status) {
    if (status != SG_OK) throw CliError{static_cast<int>(status), sg_last_error()};
}

std::string take_string(char* owned) {
    std::string s = owned ? owned : "";
    sg_string_free(owned);
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{2, "cannot open file: " + path};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{1, "cannot write file: " + path};
    out << content;
    if (!out) throw CliError{1, "write failed: " + path};
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{2, "cannot open file for digest: " + path};
    uint64_t h = 0xcbf29ce484222325ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const auto n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char hex[32];
    std::snprintf(hex, sizeof(hex), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return hex;
}

uint64_t mix_seed(uint64_t base, uint64_t stream) {
    uint64_t x = base ^ (stream * 0x9e3779b97f4a7c15ULL + 0x51ed270b0a128f1ULL);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw CliError{2, what + ": invalid JSON: " + e.what()};
    }
}

struct TraceHandle {
    sg_trace* ptr = nullptr;
    ~TraceHandle() { sg_trace_free(ptr); }
};

struct ReportHandle {
    sg_report* ptr = nullptr;
    ~ReportHandle() { sg_report_free(ptr); }
};

void load_trace(const std::string& trace_path, const std::string& catalog_path, bool lenient,
                TraceHandle& out) {
    check(sg_trace_load(trace_path.c_str(), catalog_path.c_str(), lenient ? 1 : 0, &out.ptr));
    const auto dropped = sg_trace_dropped_rows(out.ptr);
    if (dropped > 0)
        std::cerr << "warning: dropped " << dropped << " row(s) with unknown content_id\n";
}

// ------------------------------------------------------------------
// Run manifests

void write_manifest(const std::string& out_dir, const std::string& command, const json& config,
                    const std::map<std::string, std::string>& inputs,
                    const std::vector<std::string>& outputs, uint64_t seed) {
    json m;
    m["tool"] = "swarmgain";
    m["version"] = sg_version();
    m["command"] = command;
    m["config"] = config;
    m["seed"] = seed;
    m["inputs"] = json::object();
    for (const auto& [name, path] : inputs) {
        m["inputs"][name] = {{"path", fs::absolute(path).string()}, {"digest", file_digest(path)}};
    }
    m["outputs"] = outputs;
    write_file((fs::path(out_dir) / "manifest.json").string(), m.dump(2) + "\n");
}

void ensure_out_dir(const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw CliError{1, "cannot create output directory: " + out_dir};
}

// ------------------------------------------------------------------
// Command bodies. Each takes the resolved config (as stored in the
// manifest) so that replay can call it directly.

void run_generate(const json& config, const std::map<std::string, std::string>&,
                  const std::string& out_dir) {
    ensure_out_dir(out_dir);
    const json spec = config.at("workload_spec");
    TraceHandle trace;
    check(sg_trace_generate(spec.dump().c_str(), &trace.ptr));
    const auto trace_path = (fs::path(out_dir) / "trace.csv").string();
    const auto catalog_path = (fs::path(out_dir) / "catalog.csv").string();
    check(sg_trace_write(trace.ptr, trace_path.c_str(), catalog_path.c_str()));
    std::cout << "generated " << sg_trace_session_count(trace.ptr) << " sessions -> "
              << trace_path << "\n";
    write_manifest(out_dir, "generate", config, {}, {"trace.csv", "catalog.csv"},
                   spec.value("rng_seed", 0ULL));
}

void run_simulate(const json& config, const std::map<std::string, std::string>& inputs,
                  const std::string& out_dir) {
    ensure_out_dir(out_dir);
    TraceHandle trace;
    load_trace(inputs.at("trace"), inputs.at("catalog"), config.value("lenient", false), trace);
    const json scenario = config.at("scenario");
    ReportHandle report;
    check(sg_simulate(trace.ptr, scenario.dump().c_str(), &report.ptr));

    char* text = nullptr;
    check(sg_report_json(report.ptr, &text));
    write_file((fs::path(out_dir) / "report.json").string(), take_string(text) + "\n");
    check(sg_report_swarms_csv(report.ptr, &text));
    write_file((fs::path(out_dir) / "swarms.csv").string(), take_string(text));

    std::cout << "sessions=" << sg_report_sessions(report.ptr)
              << " peer_served=" << sg_report_peer_served(report.ptr)
              << " gain=" << sg_report_gain(report.ptr) << "\n";
    write_manifest(out_dir, "simulate", config, inputs, {"report.json", "swarms.csv"},
                   scenario.value("rng_seed", 0ULL));
}

void run_analyze(const json& config, const std::map<std::string, std::string>& inputs,
                 const std::string& out_dir) {
    ensure_out_dir(out_dir);
    TraceHandle trace;
    load_trace(inputs.at("trace"), inputs.at("catalog"), config.value("lenient", false), trace);
    char* text = nullptr;
    check(sg_analyze_csv(trace.ptr, config.at("min_swarm_m").get<int>(),
                         config.at("participation_alpha").get<double>(),
                         config.value("bitrate_split", false) ? 1 : 0, &text));
    write_file((fs::path(out_dir) / "analysis.csv").string(), take_string(text));
    std::cout << "analytic gain table -> " << (fs::path(out_dir) / "analysis.csv").string()
              << "\n";
    write_manifest(out_dir, "analyze", config, inputs, {"analysis.csv"}, 0);
}

void run_bundle_scan(const json& config, const std::map<std::string, std::string>& inputs,
                     const std::string& out_dir) {
    ensure_out_dir(out_dir);
    TraceHandle trace;
    load_trace(inputs.at("trace"), inputs.at("catalog"), config.value("lenient", false), trace);
    const auto sizes = config.at("sizes").get<std::vector<int>>();
    char* summary = nullptr;
    char* samples = nullptr;
    check(sg_bundle_scan_csv(trace.ptr, sizes.data(), sizes.size(),
                             config.at("samples").get<int64_t>(),
                             config.at("seed").get<uint64_t>(),
                             config.value("min_swarm_m", 1), &summary, &samples));
    const auto summary_text = take_string(summary);
    write_file((fs::path(out_dir) / "bundle_summary.csv").string(), summary_text);
    write_file((fs::path(out_dir) / "bundle_samples.csv").string(), take_string(samples));
    std::cout << summary_text;
    write_manifest(out_dir, "bundle-scan", config, inputs,
                   {"bundle_summary.csv", "bundle_samples.csv"},
                   config.at("seed").get<uint64_t>());
}

void run_oracle(const json& config, const std::map<std::string, std::string>&,
                const std::string& out_dir) {
    const double u = config.at("mean_watch_s").get<double>();
    const double r = config.at("arrival_rate").get<double>();
    const int m = config.at("min_swarm_m").get<int>();
    const auto cycles = config.at("cycles").get<int64_t>();
    const auto arrivals = config.at("arrivals").get<int64_t>();
    const auto max_steps = config.at("max_steps").get<int64_t>();
    const auto seed = config.at("seed").get<uint64_t>();

    double busy_model = 0.0;
    check(sg_expected_busy_period(u, r, m, &busy_model));
    const sg_swarm_params params{r, u, 1.0, 1.0};
    double p_model = 0.0;
    check(sg_unavailability(&params, m, &p_model));

    double busy = 0.0, busy_se = 0.0;
    int64_t done = 0;
    check(sg_mc_busy_period(u, r, m, cycles, max_steps, seed, &busy, &busy_se, &done));
    double unavail = 0.0, unavail_se = 0.0;
    check(sg_mc_unavailability(u, r, m, arrivals, max_steps, seed + 1, &unavail, &unavail_se));

    std::printf("busy period   : mc=%.6g  se=%.3g  cycles=%lld  | model=%.6g\n", busy, busy_se,
                static_cast<long long>(done), busy_model);
    std::printf("unavailability: mc=%.6g  se=%.3g               | model=%.6g (renewal form)\n",
                unavail, unavail_se, p_model);
    if (m > 1)
        std::printf("note: arrival sampling measures the occupancy tail; the renewal form"
                    " is exact only for m=1\n");

    if (!out_dir.empty()) {
        ensure_out_dir(out_dir);
        json out;
        out["busy_period"] = {{"estimate", busy}, {"std_error", busy_se}, {"cycles", done},
                              {"model", busy_model}};
        out["unavailability"] = {
            {"estimate", unavail}, {"std_error", unavail_se}, {"model_renewal", p_model}};
        write_file((fs::path(out_dir) / "oracle.json").string(), out.dump(2) + "\n");
        write_manifest(out_dir, "oracle", config, {}, {"oracle.json"}, seed);
    }
}

struct SweepPoint {
    double x = 0.0;
    double g_sim = 0.0;
    double g_theo = 0.0;
};

void run_sweep(const json& config, const std::map<std::string, std::string>& inputs,
               const std::string& out_dir) {
    ensure_out_dir(out_dir);
    const std::string axis = config.at("axis").get<std::string>();
    const auto grid = config.at("grid").get<std::vector<double>>();
    const json scenario = config.at("scenario");
    const int jobs = std::max(1, config.value("jobs", 1));
    if (grid.empty()) throw CliError{2, "sweep: grid must be nonempty"};

    const bool capacity_axis = axis == "capacity";
    json spec;
    TraceHandle base_trace;
    if (capacity_axis) {
        if (!config.contains("workload_spec") || config.at("workload_spec").is_null())
            throw CliError{2, "sweep: capacity axis requires --spec"};
        spec = config.at("workload_spec");
    } else if (inputs.count("trace")) {
        load_trace(inputs.at("trace"), inputs.at("catalog"), config.value("lenient", false),
                   base_trace);
    } else if (config.contains("workload_spec") && !config.at("workload_spec").is_null()) {
        spec = config.at("workload_spec");
        check(sg_trace_generate(spec.dump().c_str(), &base_trace.ptr));
    } else {
        throw CliError{2, "sweep: provide --trace/--catalog or --spec"};
    }

    const int base_m = scenario.value("min_swarm_m", 1);
    const double base_alpha = scenario.value("participation_alpha", 1.0);
    const int isp_split = scenario.value("isp_split", false) ? 1 : 0;
    const int rung_split = scenario.value("bitrate_split", false) ? 1 : 0;

    std::vector<SweepPoint> points(grid.size());
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= grid.size() || failed.load()) return;
            try {
                const double x = grid[i];
                json point_scenario = scenario;
                SweepPoint result;
                result.x = x;

                TraceHandle point_trace;
                const sg_trace* trace = base_trace.ptr;
                if (capacity_axis) {
                    const double u = spec.at("mean_watch_s").get<double>();
                    json point_spec = spec;
                    point_spec["catalog_size"] = 1;
                    point_spec["zipf_exponent"] = 0.0;
                    point_spec["total_arrival_rate"] = x / u;
                    point_spec["rng_seed"] =
                        mix_seed(spec.value("rng_seed", 0ULL), static_cast<uint64_t>(i));
                    check(sg_trace_generate(point_spec.dump().c_str(), &point_trace.ptr));
                    trace = point_trace.ptr;
                    const sg_swarm_params swarm{x / u, u,
                                                spec.at("content_length_s").get<double>(), 1.5e6};
                    check(sg_partial_participation_gain(&swarm, 1, base_m, base_alpha,
                                                        &result.g_theo));
                } else if (axis == "m") {
                    const int m = static_cast<int>(std::llround(x));
                    if (m < 1 || std::fabs(x - m) > 1e-9)
                        throw CliError{2, "sweep: m grid values must be positive integers"};
                    point_scenario["min_swarm_m"] = m;
                    check(sg_corpus_gain(trace, m, base_alpha, isp_split, rung_split,
                                         &result.g_theo));
                } else if (axis == "alpha") {
                    point_scenario["participation_alpha"] = x;
                    check(sg_corpus_gain(trace, base_m, x, isp_split, rung_split,
                                         &result.g_theo));
                } else if (axis == "bandwidth") {
                    point_scenario["availability_mode"] = "download";
                    point_scenario["download_bandwidth_bps"] = x;
                    check(sg_corpus_gain_download(trace, base_m, base_alpha, isp_split,
                                                  rung_split, x, &result.g_theo));
                } else if (axis == "cache_k") {
                    const int k = static_cast<int>(std::llround(x));
                    if (k < 0 || std::fabs(x - k) > 1e-9)
                        throw CliError{2, "sweep: cache_k grid values must be integers >= 0"};
                    point_scenario["cache_size_k"] = k;
                    check(sg_corpus_gain(trace, base_m, base_alpha, isp_split, rung_split,
                                         &result.g_theo));
                } else {
                    throw CliError{2, "sweep: unknown axis '" + axis + "'"};
                }

                ReportHandle report;
                check(sg_simulate(trace, point_scenario.dump().c_str(), &report.ptr));
                result.g_sim = sg_report_gain(report.ptr);
                points[i] = result;
            } catch (const CliError& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                failure = e.message;
            }
        }
    };

    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load()) throw CliError{2, "sweep: " + failure};

    std::string csv = "x,G_sim,G_theo\n";
    char line[128];
    for (const auto& p : points) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", p.x, p.g_sim, p.g_theo);
        csv += line;
    }
    write_file((fs::path(out_dir) / "sweep.csv").string(), csv);
    std::cout << "sweep " << axis << ": " << grid.size() << " points -> "
              << (fs::path(out_dir) / "sweep.csv").string() << "\n";
    write_manifest(out_dir, "sweep", config, inputs, {"sweep.csv"},
                   scenario.value("rng_seed", 0ULL));
}

void run_replay(const std::string& manifest_path, const std::string& out_dir) {
    const json manifest = parse_json(read_file(manifest_path), "manifest");
    std::map<std::string, std::string> inputs;
    if (manifest.contains("inputs"))
        for (const auto& [name, entry] : manifest.at("inputs").items()) {
            const auto path = entry.at("path").get<std::string>();
            const auto digest = entry.at("digest").get<std::string>();
            if (file_digest(path) != digest)
                throw CliError{2, "replay: input '" + name + "' changed since the original run (" +
                                      path + ")"};
            inputs[name] = path;
        }
    const auto command = manifest.at("command").get<std::string>();
    const json config = manifest.at("config");
    if (command == "generate") run_generate(config, inputs, out_dir);
    else if (command == "simulate") run_simulate(config, inputs, out_dir);
    else if (command == "analyze") run_analyze(config, inputs, out_dir);
    else if (command == "bundle-scan") run_bundle_scan(config, inputs, out_dir);
    else if (command == "sweep") run_sweep(config, inputs, out_dir);
    else if (command == "oracle") run_oracle(config, inputs, out_dir);
    else throw CliError{2, "replay: unknown command '" + command + "' in manifest"};
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            grid.push_back(std::stod(item));
        } catch (...) {
            throw CliError{2, "invalid grid value '" + item + "'"};
        }
    }
    return grid;
}

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> sizes;
    for (double v : parse_grid(text)) {
        const int k = static_cast<int>(std::llround(v));
        if (k < 2 || std::fabs(v - k) > 1e-9)
            throw CliError{2, "bundle sizes must be integers >= 2"};
        sizes.push_back(k);
    }
    return sizes;
}

// Resolve a scenario file (or defaults) into the canonical JSON object.
json resolved_scenario(const std::string& path, const std::optional<uint64_t>& seed) {
    json raw = path.empty() ? json::object() : parse_json(read_file(path), "scenario");
    if (seed) raw["rng_seed"] = *seed;
    char* text = nullptr;
    check(sg_scenario_resolve(raw.dump().c_str(), &text));
    return parse_json(take_string(text), "resolved scenario");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"swarmgain: peer-assisted CDN gain model and trace simulator"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a synthetic session trace");
    std::string gen_spec, gen_out;
    std::optional<uint64_t> gen_seed;
    gen->add_option("--spec", gen_spec, "workload spec JSON file")->required();
    gen->add_option("--out", gen_out, "output directory")->required();
    gen->add_option("--seed", gen_seed, "override the spec's rng_seed");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Replay a trace under a scenario");
    std::string sim_trace, sim_catalog, sim_scenario, sim_out;
    std::optional<uint64_t> sim_seed;
    bool sim_lenient = false;
    sim->add_option("--trace", sim_trace, "session trace CSV")->required();
    sim->add_option("--catalog", sim_catalog, "content catalog CSV")->required();
    sim->add_option("--scenario", sim_scenario, "scenario JSON file (defaults apply)");
    sim->add_option("--out", sim_out, "output directory")->required();
    sim->add_option("--seed", sim_seed, "override the scenario's rng_seed");
    sim->add_flag("--lenient", sim_lenient, "drop rows with unknown content ids");

    // analyze
    auto* ana = app.add_subcommand("analyze", "Analytic gain table per ISP and day");
    std::string ana_trace, ana_catalog, ana_out;
    int ana_m = 1;
    double ana_alpha = 1.0;
    bool ana_strat = false, ana_lenient = false;
    ana->add_option("--trace", ana_trace)->required();
    ana->add_option("--catalog", ana_catalog)->required();
    ana->add_option("--out", ana_out)->required();
    ana->add_option("--m", ana_m, "minimum swarm size");
    ana->add_option("--alpha", ana_alpha, "participation fraction");
    ana->add_flag("--bitrate-split", ana_strat, "stratify swarms by bitrate rung");
    ana->add_flag("--lenient", ana_lenient);

    // sweep
    auto* swp = app.add_subcommand("sweep", "Sweep one scenario axis, emitting G_sim and G_theo");
    std::string swp_axis, swp_grid, swp_spec, swp_scenario, swp_trace, swp_catalog, swp_out;
    std::optional<uint64_t> swp_seed;
    int swp_jobs = 1;
    bool swp_lenient = false;
    swp->add_option("--axis", swp_axis, "capacity|m|alpha|bandwidth|cache_k")->required();
    swp->add_option("--grid", swp_grid, "comma-separated grid values")->required();
    swp->add_option("--spec", swp_spec, "workload spec JSON (trace source)");
    swp->add_option("--trace", swp_trace, "session trace CSV (trace source)");
    swp->add_option("--catalog", swp_catalog, "content catalog CSV");
    swp->add_option("--scenario", swp_scenario, "base scenario JSON");
    swp->add_option("--out", swp_out)->required();
    swp->add_option("--seed", swp_seed, "override the scenario's rng_seed");
    swp->add_option("--jobs", swp_jobs, "parallel workers");
    swp->add_flag("--lenient", swp_lenient);

    // bundle-scan
    auto* bnd = app.add_subcommand("bundle-scan", "Delta gain over sampled content bundles");
    std::string bnd_trace, bnd_catalog, bnd_out, bnd_sizes = "2,3,4,5,6,7";
    int64_t bnd_samples = 100000;
    uint64_t bnd_seed = 1;
    int bnd_m = 1;
    bool bnd_lenient = false;
    bnd->add_option("--trace", bnd_trace)->required();
    bnd->add_option("--catalog", bnd_catalog)->required();
    bnd->add_option("--out", bnd_out)->required();
    bnd->add_option("--sizes", bnd_sizes, "bundle sizes, comma separated");
    bnd->add_option("--samples", bnd_samples, "combinations sampled per size");
    bnd->add_option("--seed", bnd_seed);
    bnd->add_option("--m", bnd_m, "minimum swarm size");
    bnd->add_flag("--lenient", bnd_lenient);

    // oracle
    auto* orc = app.add_subcommand("oracle", "Monte-Carlo busy period and unavailability");
    double orc_u = 100.0, orc_r = 0.01;
    int orc_m = 1;
    int64_t orc_cycles = 1000000, orc_arrivals = 1000000, orc_steps = 2000000000;
    uint64_t orc_seed = 1;
    std::string orc_out;
    orc->add_option("--u", orc_u, "mean watch time, seconds")->required();
    orc->add_option("--r", orc_r, "arrival rate, per second")->required();
    orc->add_option("--m", orc_m, "minimum swarm size");
    orc->add_option("--cycles", orc_cycles, "busy periods to collect");
    orc->add_option("--arrivals", orc_arrivals, "arrivals to sample");
    orc->add_option("--max-steps", orc_steps, "hard event budget");
    orc->add_option("--seed", orc_seed);
    orc->add_option("--out", orc_out, "optional output directory");

    // replay
    auto* rep = app.add_subcommand("replay", "Re-run a recorded manifest");
    std::string rep_manifest, rep_out;
    rep->add_option("manifest", rep_manifest, "manifest.json from a previous run")->required();
    rep->add_option("--out", rep_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            json spec = parse_json(read_file(gen_spec), "workload spec");
            if (gen_seed) spec["rng_seed"] = *gen_seed;
            run_generate(json{{"workload_spec", spec}}, {}, gen_out);
        } else if (sim->parsed()) {
            json config;
            config["scenario"] = resolved_scenario(sim_scenario, sim_seed);
            config["lenient"] = sim_lenient;
            run_simulate(config, {{"trace", sim_trace}, {"catalog", sim_catalog}}, sim_out);
        } else if (ana->parsed()) {
            json config{{"min_swarm_m", ana_m},
                        {"participation_alpha", ana_alpha},
                        {"bitrate_split", ana_strat},
                        {"lenient", ana_lenient}};
            run_analyze(config, {{"trace", ana_trace}, {"catalog", ana_catalog}}, ana_out);
        } else if (swp->parsed()) {
            json config;
            config["axis"] = swp_axis;
            config["grid"] = parse_grid(swp_grid);
            config["scenario"] = resolved_scenario(swp_scenario, swp_seed);
            config["jobs"] = swp_jobs;
            config["lenient"] = swp_lenient;
            std::map<std::string, std::string> inputs;
            if (!swp_spec.empty())
                config["workload_spec"] = parse_json(read_file(swp_spec), "workload spec");
            if (!swp_trace.empty()) {
                if (swp_catalog.empty()) throw CliError{2, "sweep: --trace requires --catalog"};
                inputs["trace"] = swp_trace;
                inputs["catalog"] = swp_catalog;
            }
            run_sweep(config, inputs, swp_out);
        } else if (bnd->parsed()) {
            json config{{"sizes", parse_sizes(bnd_sizes)}, {"samples", bnd_samples},
                        {"seed", bnd_seed},                {"min_swarm_m", bnd_m},
                        {"lenient", bnd_lenient}};
            run_bundle_scan(config, {{"trace", bnd_trace}, {"catalog", bnd_catalog}}, bnd_out);
        } else if (orc->parsed()) {
            json config{{"mean_watch_s", orc_u}, {"arrival_rate", orc_r},
                        {"min_swarm_m", orc_m},  {"cycles", orc_cycles},
                        {"arrivals", orc_arrivals},
                        {"max_steps", orc_steps}, {"seed", orc_seed}};
            run_oracle(config, {}, orc_out);
        } else if (rep->parsed()) {
            run_replay(rep_manifest, rep_out);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code == 2 ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
