// Acceptance suite: deterministic end-to-end checks of the analytic
// model, the Monte-Carlo oracle, the trace simulator and the CLI.
// Prints one PASS/FAIL line per criterion and exits nonzero if any
// criterion fails. Run with a list of criterion numbers to restrict.
//
// Criteria 2 and 4 compare the renewal-form model against direct
// simulation. For m >= 2 the renewal form is a known approximation of
// the occupancy process (it treats every idle spell as a single
// exponential arrival wait), so those sub-points carry the measured gap
// next to the verdict; see the README's model notes.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>
#include <unistd.h>

#include "analysis.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "simulator.hpp"
#include "trace.hpp"
#include "workload.hpp"

using namespace swarmgain;
namespace fs = std::filesystem;

namespace {

int g_indent = 2;

void detail(const char* fmt, ...) {
    std::printf("%*s", g_indent, "");
    va_list args;
    va_start(args, fmt);
    std::vfprintf(stdout, fmt, args);
    va_end(args);
    std::printf("\n");
}

void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 4u));
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

double poisson_pmf(int k, double c) {
    double log_pmf = -c;
    for (int j = 1; j <= k; ++j) log_pmf += std::log(c) - std::log(j);
    return std::exp(log_pmf);
}

// ------------------------------------------------------------------
// 1. Closed-form identity: G(c, 1) vs 1 - e^-c on 500 grid points.

bool criterion1() {
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double c = 50.0 * i / 499.0;
        worst = std::max(worst,
                         std::fabs(model::single_swarm_gain(c, 1) - (1.0 - std::exp(-c))));
    }
    detail("max |G(c,1) - (1 - e^-c)| = %.3g over 500 points in [0, 50] (tolerance 1e-10)",
           worst);
    return worst < 1e-10;
}

// ------------------------------------------------------------------
// 2. Oracle equivalence over the (u, r, m) grid.

struct OraclePoint {
    double u, r;
    int m;
    double c = 0.0;
    oracle::McResult mc;
    int64_t target = 0;
    bool censored = false;
    bool busy_ok = false, busy_rel_ok = true, unavail_ok = false;
    double busy_model = 0.0, p_model = 0.0, p_pasta_expected = 0.0;
};

bool criterion2() {
    const double us[] = {50.0, 100.0, 500.0};
    const double rs[] = {0.001, 0.01, 0.1};
    const int ms[] = {1, 2, 5};
    constexpr int64_t kBudget = 600'000'000;
    constexpr int64_t kCycleGoal = 1'000'000;

    std::vector<OraclePoint> points;
    for (double u : us)
        for (double r : rs)
            for (int m : ms) points.push_back({u, r, m});

    parallel_for(points.size(), [&](size_t i) {
        OraclePoint& p = points[i];
        p.c = p.u * p.r;
        p.busy_model = model::expected_busy_period(p.u, p.r, p.m);
        p.p_model = model::unavailability_from_capacity(p.c, p.m);
        p.p_pasta_expected = oracle::poisson_below(p.c, p.m);

        // Cycles cost about 2/pmf(m-1, c) events each; budget accordingly.
        const double per_cycle = 2.0 / std::max(poisson_pmf(p.m - 1, p.c), 1e-300);
        const auto affordable = static_cast<int64_t>(
            std::min(static_cast<double>(kCycleGoal), kBudget / per_cycle));

        oracle::McConfig cfg;
        cfg.mean_watch = p.u;
        cfg.arrival_rate = p.r;
        cfg.min_swarm = p.m;
        cfg.rng_seed = 0x5eedULL * 1000 + i;
        if (affordable < 50) {
            // Busy periods too long or too rare to sample: run a short
            // horizon for the censored-consistency and arrival checks.
            p.censored = true;
            cfg.cycle_target = kCycleGoal;
            cfg.max_steps = 20'000'000;
        } else {
            cfg.cycle_target = affordable;
            cfg.max_steps = kBudget;
        }
        p.target = cfg.cycle_target;
        p.mc = oracle::run(cfg);

        if (p.censored || p.mc.cycles < 50) {
            // No completed cycle may contradict the model: the open
            // period we watched must not already exceed it.
            p.busy_ok = p.mc.cycles == 0
                            ? p.busy_model >= p.mc.censored_open_busy
                            : std::fabs(p.mc.busy_mean - p.busy_model) <=
                                  3.0 * p.mc.busy_std_error + 1e-9;
        } else {
            p.busy_ok =
                std::fabs(p.mc.busy_mean - p.busy_model) <= 3.0 * p.mc.busy_std_error;
            if (p.mc.cycles >= kCycleGoal)
                p.busy_rel_ok = std::fabs(p.mc.busy_mean / p.busy_model - 1.0) <= 0.02;
        }
        p.unavail_ok = std::fabs(p.mc.unavail_estimate - p.p_model) <=
                       3.0 * p.mc.unavail_std_error;
    });

    int busy_pass = 0, unavail_pass = 0, unavail_pass_m1 = 0, m1_points = 0;
    bool all = true;
    for (const auto& p : points) {
        const bool busy = p.busy_ok && p.busy_rel_ok;
        busy_pass += busy;
        unavail_pass += p.unavail_ok;
        if (p.m == 1) {
            ++m1_points;
            unavail_pass_m1 += p.unavail_ok;
        }
        all = all && busy && p.unavail_ok;
        if (p.censored) {
            detail("u=%-3g r=%-5g m=%d c=%-4g  busy: open>=%.3gs model=%.3g %s | "
                   "unavail: mc=%.3g model=%.3g %s (both ~0)",
                   p.u, p.r, p.m, p.c, p.mc.censored_open_busy, p.busy_model,
                   busy ? "ok" : "FAIL", p.mc.unavail_estimate, p.p_model,
                   p.unavail_ok ? "ok" : "FAIL");
        } else {
            detail("u=%-3g r=%-5g m=%d c=%-4g  busy: mc=%-9.4g se=%-8.2g n=%-7lld model=%-9.4g "
                   "%s | unavail: mc=%-9.4g se=%-8.2g model=%-9.4g %s%s",
                   p.u, p.r, p.m, p.c, p.mc.busy_mean, p.mc.busy_std_error,
                   static_cast<long long>(p.mc.cycles), p.busy_model, busy ? "ok" : "FAIL",
                   p.mc.unavail_estimate, p.mc.unavail_std_error, p.p_model,
                   p.unavail_ok ? "ok" : "FAIL",
                   (!p.unavail_ok && p.m > 1)
                       ? " [renewal form; arrival sampling converges to the occupancy tail]"
                       : "");
        }
    }
    detail("busy-period leg: %d/27 within 3 SE (2%% where 1e6 cycles completed)", busy_pass);
    detail("unavailability leg: %d/27 within 3 SE (%d/%d at m=1; the m>=2 gap is the model's"
           " renewal approximation, see README)",
           unavail_pass, unavail_pass_m1, m1_points);
    return all;
}

// ------------------------------------------------------------------
// 3. Server-traffic peak at c = 1 for m = 1, u fixed.

bool criterion3() {
    const double u = 100.0;
    double best_c = 0.0, best_ts = -1.0;
    for (double c = 0.05; c <= 5.0 + 1e-9; c += 0.05) {
        model::SwarmParams params{c / u, u, 1800.0, 1.5e6};
        const double ts = model::server_traffic_rate(params, 1);
        if (ts > best_ts) {
            best_ts = ts;
            best_c = c;
        }
    }
    detail("argmax of T_s over c (step 0.05) = %.2f, required in [0.9, 1.1]", best_c);
    return best_c >= 0.9 && best_c <= 1.1;
}

// ------------------------------------------------------------------
// 4. Simulator-model agreement on single-swarm Poisson workloads.

struct AgreementPoint {
    double c, alpha;
    int m;
    double g_sim = 0.0, g_theo = 0.0, g_occupancy = 0.0;
    bool ok = false;
};

bool criterion4() {
    const double cs[] = {0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    const int ms[] = {1, 2, 5};
    const double alphas[] = {0.3, 1.0};
    const double u = 50.0;
    const double horizon = 1e6;

    std::vector<AgreementPoint> points;
    for (double c : cs)
        for (int m : ms)
            for (double a : alphas) points.push_back({c, a, m});

    parallel_for(points.size(), [&](size_t i) {
        AgreementPoint& p = points[i];
        workload::WorkloadSpec spec;
        spec.catalog_size = 1;
        spec.total_arrival_rate = p.c / u;
        spec.mean_watch = u;
        spec.content_length = 1800.0;
        spec.horizon = horizon;
        spec.isp_shares = {{"isp-a", 1.0}};
        spec.ladder_shares = {{1500, 1.0}};
        spec.rng_seed = 0xace40000ULL + i;
        const auto generated = workload::generate(spec);

        sim::ScenarioConfig config;
        config.eligibility_fraction = 0.0;  // the model has no threshold
        config.min_swarm = p.m;
        config.participation_alpha = p.alpha;
        config.rng_seed = 0xbee40000ULL + i;
        p.g_sim = sim::run(generated.records, generated.catalog, config).gain;

        const model::SwarmParams swarm{p.c / u, u, spec.content_length, 1.5e6};
        std::vector<model::SwarmParams> one{swarm};
        p.g_theo = model::partial_participation_gain(one, p.m, p.alpha);
        p.g_occupancy = 1.0 - oracle::poisson_below(p.alpha * p.c, p.m);
        p.ok = std::fabs(p.g_sim - p.g_theo) <= 0.03;
    });

    bool all = true;
    int pass_m1 = 0, n_m1 = 0, pass_rest = 0, n_rest = 0;
    for (const auto& p : points) {
        all = all && p.ok;
        (p.m == 1 ? n_m1 : n_rest) += 1;
        (p.m == 1 ? pass_m1 : pass_rest) += p.ok;
        detail("c=%-4g m=%d alpha=%-3g  G_sim=%.4f G_theo=%.4f |diff|=%.4f %s%s", p.c, p.m,
               p.alpha, p.g_sim, p.g_theo, std::fabs(p.g_sim - p.g_theo),
               p.ok ? "ok" : "FAIL",
               p.ok ? ""
                    : (std::fabs(p.g_sim - p.g_occupancy) <= 0.03
                           ? " [simulator matches the occupancy tail; gap is the renewal form]"
                           : " [unexplained]"));
    }
    detail("m=1: %d/%d within 0.03; m in {2,5}: %d/%d (renewal-form gap, see README)", pass_m1,
           n_m1, pass_rest, n_rest);
    return all;
}

// ------------------------------------------------------------------
// 5. Hand-simulated micro-traces, exact gains.

bool criterion5() {
    trace::Catalog catalog;
    catalog.emplace("item", trace::ContentRecord{"item", 100.0, {}});
    auto rec = [](const char* user, double start, double watch, const char* isp) {
        return trace::SessionRecord{user, "item", start, watch, isp, 1500.0};
    };
    const sim::ScenarioConfig base;

    const auto one =
        sim::run({rec("a", 0, 100, "isp-x"), rec("b", 20, 50, "isp-x")}, catalog, base);
    const bool ok1 = std::fabs(one.gain - 1.0 / 3.0) < 1e-12;
    detail("follower at t=20: gain = %.15g (want exactly 1/3) %s", one.gain, ok1 ? "ok" : "FAIL");

    const auto two =
        sim::run({rec("a", 0, 100, "isp-x"), rec("b", 5, 50, "isp-x")}, catalog, base);
    const bool ok2 = two.gain == 0.0;
    detail("follower at t=5: gain = %g (want exactly 0) %s", two.gain, ok2 ? "ok" : "FAIL");

    sim::ScenarioConfig split = base;
    split.isp_split = true;
    const auto three =
        sim::run({rec("a", 0, 100, "isp-x"), rec("b", 20, 50, "isp-y")}, catalog, split);
    const bool ok3 = three.gain == 0.0;
    detail("cross-ISP follower under isp_split: gain = %g (want exactly 0) %s", three.gain,
           ok3 ? "ok" : "FAIL");
    return ok1 && ok2 && ok3;
}

// ------------------------------------------------------------------
// 6. Monotonicity suite on a fixed skewed corpus.

workload::Generated make_corpus(uint64_t seed) {
    workload::WorkloadSpec spec;
    spec.catalog_size = 1000;
    spec.zipf_exponent = 0.8;
    spec.total_arrival_rate = 0.3858;  // ~1e5 sessions over 3 days
    spec.mean_watch = 600.0;
    spec.content_length = 1800.0;
    spec.horizon = 3.0 * 86400.0;
    spec.isp_shares = {{"isp-a", 0.5}, {"isp-b", 0.3}, {"isp-c", 0.2}};
    spec.ladder_shares = {{762, 0.3}, {1500, 0.5}, {2800, 0.2}};
    spec.repeat_viewer_fraction = 0.3;
    spec.rng_seed = seed;
    return workload::generate(spec);
}

bool criterion6() {
    const auto corpus = make_corpus(0xc0de6);
    detail("corpus: %zu sessions, 1000 items, zipf 0.8", corpus.records.size());
    const sim::ScenarioConfig base;
    auto gain = [&](const sim::ScenarioConfig& config) {
        return sim::run(corpus.records, corpus.catalog, config).gain;
    };
    const double g_base = gain(base);
    bool all = true;

    {
        std::string row = "m 1..10:";
        double prev = 2.0;
        bool ok = true;
        for (int m : {1, 2, 3, 5, 7, 10}) {
            sim::ScenarioConfig c = base;
            c.min_swarm = m;
            const double g = m == 1 ? g_base : gain(c);
            ok = ok && g <= prev + 1e-15;
            prev = g;
            row += " " + std::to_string(g).substr(0, 6);
        }
        detail("%s nonincreasing %s", row.c_str(), ok ? "ok" : "FAIL");
        all = all && ok;
    }
    {
        std::string row = "alpha 0.1..1:";
        double prev = -1.0;
        bool ok = true;
        for (double a : {0.1, 0.3, 0.5, 0.8, 1.0}) {
            sim::ScenarioConfig c = base;
            c.participation_alpha = a;
            c.rng_seed = 99;
            const double g = gain(c);
            ok = ok && g >= prev - 1e-15;
            prev = g;
            row += " " + std::to_string(g).substr(0, 6);
        }
        detail("%s nondecreasing %s", row.c_str(), ok ? "ok" : "FAIL");
        all = all && ok;
    }
    {
        std::string row = "cache k 0..10:";
        double prev = -1.0;
        bool ok = true;
        for (int k : {0, 1, 3, 10}) {
            sim::ScenarioConfig c = base;
            c.cache_size_k = k;
            const double g = k == 0 ? g_base : gain(c);
            ok = ok && g >= prev - 1e-15;
            prev = g;
            row += " " + std::to_string(g).substr(0, 6);
        }
        detail("%s nondecreasing %s", row.c_str(), ok ? "ok" : "FAIL");
        all = all && ok;
    }
    {
        sim::ScenarioConfig isp = base;
        isp.isp_split = true;
        sim::ScenarioConfig rung = base;
        rung.bitrate_split = true;
        const double g_isp = gain(isp), g_rung = gain(rung);
        const bool ok = g_isp <= g_base + 1e-15 && g_rung <= g_base + 1e-15;
        detail("splits: base=%.4f isp=%.4f bitrate=%.4f (splits never help) %s", g_base, g_isp,
               g_rung, ok ? "ok" : "FAIL");
        all = all && ok;
    }
    {
        std::string row = "download 10/50/100 Mbps:";
        double prev = g_base;
        bool ok = true;
        for (double b : {1e7, 5e7, 1e8}) {
            sim::ScenarioConfig c = base;
            c.availability_mode = sim::AvailabilityMode::download;
            c.download_bandwidth_bps = b;
            const double g = gain(c);
            ok = ok && g <= prev + 1e-15;
            prev = g;
            row += " " + std::to_string(g).substr(0, 6);
        }
        detail("%s each <= watch-mode %.4f, ordered by bandwidth %s", row.c_str(), g_base,
               ok ? "ok" : "FAIL");
        all = all && ok;
    }
    return all;
}

// ------------------------------------------------------------------
// 7. Bundling properties on the same corpus.

bool criterion7() {
    const auto corpus = make_corpus(0xc0de6);
    bool all = true;

    // Size-1 bundles cancel exactly.
    const auto items = analysis::item_params(corpus.records, corpus.catalog);
    double worst = 0.0;
    for (const auto& [id, params] : items) {
        std::vector<model::SwarmParams> solo{params};
        worst = std::max(worst, std::fabs(model::bundle_delta_gain(solo, 1)));
    }
    detail("max |delta gain| over %zu single-item bundles = %g (want exactly 0)", items.size(),
           worst);
    all = all && worst == 0.0;

    const auto scan =
        analysis::bundle_scan(corpus.records, corpus.catalog, {2, 3, 4, 5, 6, 7}, 20000, 0xb0b);
    for (const auto& r : scan.per_size) {
        const bool ok = r.positive_share < 0.5;
        detail("size %d: positive share = %.3f (%lld of %lld), mean positive dG = %.4f %s",
               r.bundle_size, r.positive_share, static_cast<long long>(r.positives),
               static_cast<long long>(r.combinations), r.mean_positive_delta_gain,
               ok ? "ok" : "FAIL");
        all = all && ok;
    }
    return all;
}

// ------------------------------------------------------------------
// 8. Caching raises capacity and gain on a repeat-viewer trace.

bool criterion8() {
    workload::WorkloadSpec spec;
    spec.catalog_size = 200;
    spec.zipf_exponent = 0.8;
    spec.total_arrival_rate = 0.2;
    spec.mean_watch = 600.0;
    spec.content_length = 1800.0;
    spec.horizon = 3.0 * 86400.0;
    spec.isp_shares = {{"isp-a", 0.6}, {"isp-b", 0.4}};
    spec.ladder_shares = {{1500, 0.7}, {2800, 0.3}};
    spec.repeat_viewer_fraction = 0.6;
    spec.rng_seed = 0xcac8e;
    const auto corpus = workload::generate(spec);

    sim::ScenarioConfig off;
    sim::ScenarioConfig on = off;
    on.cache_size_k = 10;
    const auto base = sim::run(corpus.records, corpus.catalog, off);
    const auto cached = sim::run(corpus.records, corpus.catalog, on);
    detail("k=0:  capacity=%.4f gain=%.4f", base.mean_swarm_capacity, base.gain);
    detail("k=10: capacity=%.4f gain=%.4f (x%.2f capacity, +%.4f gain)",
           cached.mean_swarm_capacity, cached.gain,
           cached.mean_swarm_capacity / base.mean_swarm_capacity, cached.gain - base.gain);
    return cached.mean_swarm_capacity > base.mean_swarm_capacity && cached.gain > base.gain;
}

// ------------------------------------------------------------------
// 9. Manifest replay reproduces outputs byte for byte.

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return "<missing:" + p.string() + ">";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool criterion9() {
    const char* cli = std::getenv("SWARMGAIN_CLI");
    if (!cli) {
        detail("SWARMGAIN_CLI is not set; cannot exercise the command line");
        return false;
    }
    const fs::path root =
        fs::temp_directory_path() / ("swarmgain-acc9-" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
    const auto spec_path = root / "spec.json";
    {
        std::ofstream spec(spec_path);
        spec << R"({"catalog_size": 40, "zipf_exponent": 0.8, "total_arrival_rate": 0.03,
                    "mean_watch_s": 300, "content_length_s": 1200, "horizon_s": 90000,
                    "isp_shares": {"isp-a": 0.6, "isp-b": 0.4},
                    "ladder_shares": {"762": 0.4, "1500": 0.6},
                    "repeat_viewer_fraction": 0.4, "rng_seed": 99})";
    }
    auto sh = [&](const std::string& cmd) {
        const std::string full = std::string(cli) + " " + cmd + " >/dev/null 2>&1";
        return std::system(full.c_str()) == 0;
    };
    auto same = [&](const fs::path& a, const fs::path& b, const char* name) {
        const bool ok = slurp(a) == slurp(b) && fs::exists(a);
        detail("%-12s %s", name, ok ? "replay byte-identical" : "MISMATCH");
        return ok;
    };

    bool all = true;
    const std::string sp = spec_path.string(), rt = root.string();
    all = all && sh("generate --spec " + sp + " --out " + rt + "/gen");
    all = all && sh("replay " + rt + "/gen/manifest.json --out " + rt + "/gen2");
    all = all && same(root / "gen" / "trace.csv", root / "gen2" / "trace.csv", "generate");

    all = all && sh("simulate --trace " + rt + "/gen/trace.csv --catalog " + rt +
                    "/gen/catalog.csv --out " + rt + "/sim");
    all = all && sh("replay " + rt + "/sim/manifest.json --out " + rt + "/sim2");
    all = all && same(root / "sim" / "report.json", root / "sim2" / "report.json", "simulate");
    all = all && same(root / "sim" / "swarms.csv", root / "sim2" / "swarms.csv", "simulate/csv");

    all = all && sh("analyze --trace " + rt + "/gen/trace.csv --catalog " + rt +
                    "/gen/catalog.csv --out " + rt + "/ana");
    all = all && sh("replay " + rt + "/ana/manifest.json --out " + rt + "/ana2");
    all = all && same(root / "ana" / "analysis.csv", root / "ana2" / "analysis.csv", "analyze");

    all = all && sh("sweep --axis alpha --grid 0.3,0.6,1 --trace " + rt +
                    "/gen/trace.csv --catalog " + rt + "/gen/catalog.csv --jobs 2 --out " + rt +
                    "/swp");
    all = all && sh("replay " + rt + "/swp/manifest.json --out " + rt + "/swp2");
    all = all && same(root / "swp" / "sweep.csv", root / "swp2" / "sweep.csv", "sweep");

    all = all && sh("bundle-scan --trace " + rt + "/gen/trace.csv --catalog " + rt +
                    "/gen/catalog.csv --sizes 2,3 --samples 2000 --seed 5 --out " + rt + "/bnd");
    all = all && sh("replay " + rt + "/bnd/manifest.json --out " + rt + "/bnd2");
    all = all &&
          same(root / "bnd" / "bundle_samples.csv", root / "bnd2" / "bundle_samples.csv",
               "bundle-scan");

    all = all && sh("oracle --u 100 --r 0.01 --m 1 --cycles 20000 --arrivals 20000 --seed 4 "
                    "--out " + rt + "/orc");
    all = all && sh("replay " + rt + "/orc/manifest.json --out " + rt + "/orc2");
    all = all && same(root / "orc" / "oracle.json", root / "orc2" / "oracle.json", "oracle");

    // Every command wrote a manifest next to its outputs.
    for (const char* dir : {"gen", "sim", "ana", "swp", "bnd", "orc"})
        all = all && fs::exists(root / dir / "manifest.json");

    fs::remove_all(root);
    return all;
}

struct Criterion {
    int id;
    const char* name;
    bool (*fn)();
};

const Criterion kCriteria[] = {
    {1, "closed-form identity", criterion1},
    {2, "oracle equivalence", criterion2},
    {3, "server-traffic peak", criterion3},
    {4, "simulator-model agreement", criterion4},
    {5, "micro-trace exactness", criterion5},
    {6, "monotonicity suite", criterion6},
    {7, "bundling properties", criterion7},
    {8, "caching effect", criterion8},
    {9, "determinism and replay", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failed = 0, ran = 0;
    for (const auto& c : kCriteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        ++ran;
        std::printf("criterion %d (%s):\n", c.id, c.name);
        const bool ok = c.fn();
        std::printf("criterion %d (%s): %s\n", c.id, c.name, ok ? "PASS" : "FAIL");
        failed += !ok;
    }
    std::printf("acceptance: %d/%d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
