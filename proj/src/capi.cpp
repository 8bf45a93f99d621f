#include "swarmgain.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <span>
#include <sstream>
#include <string>

#include "analysis.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "simulator.hpp"
#include "trace.hpp"
#include "workload.hpp"

namespace {

thread_local std::string g_last_error;

sg_status fail(sg_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

// Translate core exceptions into status codes at the library boundary.
template <typename Fn>
sg_status guarded(Fn&& fn) {
    try {
        fn();
        return SG_OK;
    } catch (const swarmgain::ValidationError& e) {
        return fail(SG_ERROR_VALIDATION, e.what());
    } catch (const std::domain_error& e) {
        return fail(SG_ERROR_VALIDATION, e.what());
    } catch (const std::exception& e) {
        return fail(SG_ERROR_RUNTIME, e.what());
    }
}

swarmgain::model::SwarmParams to_params(const sg_swarm_params& p) {
    return {p.arrival_rate, p.mean_watch, p.content_length, p.bitrate};
}

std::vector<swarmgain::model::SwarmParams> to_params(const sg_swarm_params* arr, size_t n) {
    std::vector<swarmgain::model::SwarmParams> out;
    out.reserve(n);
    for (size_t i = 0; i < n; ++i) out.push_back(to_params(arr[i]));
    return out;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

sg_status require_out(const void* p) {
    if (!p) return fail(SG_ERROR_VALIDATION, "output pointer must not be null");
    return SG_OK;
}

}  // namespace

struct sg_trace {
    swarmgain::trace::Catalog catalog;
    std::vector<swarmgain::trace::SessionRecord> records;
    int64_t dropped = 0;
};

struct sg_report {
    swarmgain::sim::SimReport report;
};

extern "C" {

const char* sg_last_error(void) { return g_last_error.c_str(); }

const char* sg_version(void) { return "0.1.0"; }

sg_status sg_capacity(double mean_watch, double arrival_rate, double* out) {
    if (auto s = require_out(out)) return s;
    return guarded([&] { *out = swarmgain::model::capacity(mean_watch, arrival_rate); });
}

sg_status sg_scaled_gamma_tail(int min_swarm, double x, double* out) {
    if (auto s = require_out(out)) return s;
    return guarded([&] { *out = swarmgain::model::scaled_gamma_tail(min_swarm, x); });
}

sg_status sg_expected_busy_period(double mean_watch, double arrival_rate, int min_swarm,
                                  double* out) {
    if (auto s = require_out(out)) return s;
    return guarded(
        [&] { *out = swarmgain::model::expected_busy_period(mean_watch, arrival_rate, min_swarm); });
}

sg_status sg_unavailability(const sg_swarm_params* params, int min_swarm, double* out) {
    if (auto s = require_out(out)) return s;
    if (auto s = require_out(params)) return s;
    return guarded([&] { *out = swarmgain::model::unavailability(to_params(*params), min_swarm); });
}

sg_status sg_single_swarm_gain(double capacity, int min_swarm, double* out) {
    if (auto s = require_out(out)) return s;
    return guarded([&] { *out = swarmgain::model::single_swarm_gain(capacity, min_swarm); });
}

sg_status sg_server_traffic_rate(const sg_swarm_params* params, int min_swarm, double* out) {
    if (auto s = require_out(out)) return s;
    if (auto s = require_out(params)) return s;
    return guarded(
        [&] { *out = swarmgain::model::server_traffic_rate(to_params(*params), min_swarm); });
}

sg_status sg_multi_swarm_gain(const sg_swarm_params* swarms, size_t count, int min_swarm,
                              double* out) {
    if (auto s = require_out(out)) return s;
    if (auto s = require_out(swarms)) return s;
    return guarded(
        [&] { *out = swarmgain::model::multi_swarm_gain(to_params(swarms, count), min_swarm); });
}

sg_status sg_partial_participation_gain(const sg_swarm_params* swarms, size_t count,
                                        int min_swarm, double alpha, double* out) {
    if (auto s = require_out(out)) return s;
    if (auto s = require_out(swarms)) return s;
    return guarded([&] {
        *out = swarmgain::model::partial_participation_gain(to_params(swarms, count), min_swarm,
                                                            alpha);
    });
}

sg_status sg_bundle_server_traffic(const sg_swarm_params* bundle, size_t count, int min_swarm,
                                   double* out) {
    if (auto s = require_out(out)) return s;
    if (auto s = require_out(bundle)) return s;
    return guarded([&] {
        *out = swarmgain::model::bundle_server_traffic(to_params(bundle, count), min_swarm);
    });
}

sg_status sg_bundle_delta_gain(const sg_swarm_params* bundle, size_t count, int min_swarm,
                               double* out) {
    if (auto s = require_out(out)) return s;
    if (auto s = require_out(bundle)) return s;
    return guarded(
        [&] { *out = swarmgain::model::bundle_delta_gain(to_params(bundle, count), min_swarm); });
}

sg_status sg_trace_load(const char* trace_csv_path, const char* catalog_csv_path, int lenient,
                        sg_trace** out) {
    if (auto s = require_out(out)) return s;
    if (!trace_csv_path || !catalog_csv_path)
        return fail(SG_ERROR_VALIDATION, "trace and catalog paths must not be null");
    return guarded([&] {
        auto handle = std::make_unique<sg_trace>();
        handle->catalog = swarmgain::trace::parse_catalog(catalog_csv_path);
        auto parsed =
            swarmgain::trace::parse_trace(trace_csv_path, handle->catalog, lenient != 0);
        handle->records = std::move(parsed.records);
        handle->dropped = parsed.dropped_unknown_content;
        *out = handle.release();
    });
}

sg_status sg_trace_generate(const char* workload_spec_json, sg_trace** out) {
    if (auto s = require_out(out)) return s;
    if (!workload_spec_json) return fail(SG_ERROR_VALIDATION, "workload spec must not be null");
    return guarded([&] {
        const auto spec = swarmgain::workload::spec_from_json(workload_spec_json);
        auto generated = swarmgain::workload::generate(spec);
        auto handle = std::make_unique<sg_trace>();
        handle->catalog = std::move(generated.catalog);
        handle->records = std::move(generated.records);
        *out = handle.release();
    });
}

sg_status sg_trace_write(const sg_trace* trace, const char* trace_csv_path,
                         const char* catalog_csv_path) {
    if (!trace) return fail(SG_ERROR_VALIDATION, "trace handle must not be null");
    if (!trace_csv_path || !catalog_csv_path)
        return fail(SG_ERROR_VALIDATION, "trace and catalog paths must not be null");
    return guarded([&] {
        swarmgain::trace::write_trace_csv(trace_csv_path, trace->records);
        swarmgain::trace::write_catalog_csv(catalog_csv_path, trace->catalog);
    });
}

size_t sg_trace_session_count(const sg_trace* trace) { return trace ? trace->records.size() : 0; }

int64_t sg_trace_dropped_rows(const sg_trace* trace) { return trace ? trace->dropped : 0; }

sg_status sg_trace_estimates_csv(const sg_trace* trace, int isp_split, int bitrate_split,
                                 char** out_csv) {
    if (auto s = require_out(out_csv)) return s;
    if (!trace) return fail(SG_ERROR_VALIDATION, "trace handle must not be null");
    return guarded([&] {
        const auto estimates = swarmgain::trace::estimate_swarm_params(
            trace->records, trace->catalog, isp_split != 0, bitrate_split != 0,
            swarmgain::trace::BitrateLadder::standard());
        *out_csv = dup_string(swarmgain::analysis::estimates_csv(estimates));
    });
}

void sg_trace_free(sg_trace* trace) { delete trace; }

sg_status sg_simulate(const sg_trace* trace, const char* scenario_json, sg_report** out) {
    if (auto s = require_out(out)) return s;
    if (!trace) return fail(SG_ERROR_VALIDATION, "trace handle must not be null");
    return guarded([&] {
        const auto config =
            swarmgain::sim::scenario_from_json(scenario_json ? scenario_json : "{}");
        auto handle = std::make_unique<sg_report>();
        handle->report = swarmgain::sim::run(trace->records, trace->catalog, config);
        *out = handle.release();
    });
}

double sg_report_gain(const sg_report* r) { return r ? r->report.gain : 0.0; }
double sg_report_useful_bytes(const sg_report* r) { return r ? r->report.useful_bytes : 0.0; }
double sg_report_server_bytes(const sg_report* r) { return r ? r->report.server_bytes : 0.0; }
double sg_report_mean_swarm_capacity(const sg_report* r) {
    return r ? r->report.mean_swarm_capacity : 0.0;
}
int64_t sg_report_sessions(const sg_report* r) { return r ? r->report.sessions : 0; }
int64_t sg_report_peer_served(const sg_report* r) { return r ? r->report.peer_served : 0; }

sg_status sg_report_json(const sg_report* report, char** out_json) {
    if (auto s = require_out(out_json)) return s;
    if (!report) return fail(SG_ERROR_VALIDATION, "report handle must not be null");
    return guarded([&] { *out_json = dup_string(swarmgain::sim::report_to_json(report->report)); });
}

sg_status sg_report_swarms_csv(const sg_report* report, char** out_csv) {
    if (auto s = require_out(out_csv)) return s;
    if (!report) return fail(SG_ERROR_VALIDATION, "report handle must not be null");
    return guarded([&] { *out_csv = dup_string(swarmgain::sim::swarms_to_csv(report->report)); });
}

void sg_report_free(sg_report* report) { delete report; }

sg_status sg_analyze_csv(const sg_trace* trace, int min_swarm, double alpha, int bitrate_split,
                         char** out_csv) {
    if (auto s = require_out(out_csv)) return s;
    if (!trace) return fail(SG_ERROR_VALIDATION, "trace handle must not be null");
    return guarded([&] {
        const auto rows = swarmgain::analysis::analyze(
            trace->records, trace->catalog, min_swarm, alpha, bitrate_split != 0,
            swarmgain::trace::BitrateLadder::standard());
        *out_csv = dup_string(swarmgain::analysis::gain_table_csv(rows));
    });
}

sg_status sg_corpus_gain(const sg_trace* trace, int min_swarm, double alpha, int isp_split,
                         int bitrate_split, double* out) {
    if (auto s = require_out(out)) return s;
    if (!trace) return fail(SG_ERROR_VALIDATION, "trace handle must not be null");
    return guarded([&] {
        *out = swarmgain::analysis::corpus_gain(trace->records, trace->catalog, min_swarm, alpha,
                                                isp_split != 0, bitrate_split != 0,
                                                swarmgain::trace::BitrateLadder::standard());
    });
}

sg_status sg_corpus_gain_download(const sg_trace* trace, int min_swarm, double alpha,
                                  int isp_split, int bitrate_split, double bandwidth_bps,
                                  double* out) {
    if (auto s = require_out(out)) return s;
    if (!trace) return fail(SG_ERROR_VALIDATION, "trace handle must not be null");
    return guarded([&] {
        *out = swarmgain::analysis::corpus_gain_download(
            trace->records, trace->catalog, min_swarm, alpha, isp_split != 0, bitrate_split != 0,
            swarmgain::trace::BitrateLadder::standard(), bandwidth_bps);
    });
}

sg_status sg_scenario_resolve(const char* scenario_json, char** out_json) {
    if (auto s = require_out(out_json)) return s;
    return guarded([&] {
        const auto config =
            swarmgain::sim::scenario_from_json(scenario_json ? scenario_json : "{}");
        *out_json = dup_string(swarmgain::sim::scenario_to_json(config));
    });
}

sg_status sg_bundle_scan_csv(const sg_trace* trace, const int* sizes, size_t size_count,
                             int64_t sample_count, uint64_t seed, int min_swarm,
                             char** out_summary_csv, char** out_samples_csv) {
    if (!trace) return fail(SG_ERROR_VALIDATION, "trace handle must not be null");
    if (!sizes || size_count == 0)
        return fail(SG_ERROR_VALIDATION, "at least one bundle size is required");
    return guarded([&] {
        const auto result = swarmgain::analysis::bundle_scan(
            trace->records, trace->catalog, std::vector<int>(sizes, sizes + size_count),
            sample_count, seed, min_swarm);
        if (out_summary_csv)
            *out_summary_csv = dup_string(swarmgain::analysis::bundle_summary_csv(result));
        if (out_samples_csv) *out_samples_csv = dup_string(result.samples_csv);
    });
}

sg_status sg_mc_busy_period(double mean_watch, double arrival_rate, int min_swarm,
                            int64_t cycles, int64_t max_steps, uint64_t seed, double* out_mean,
                            double* out_std_error, int64_t* out_cycles) {
    if (auto s = require_out(out_mean)) return s;
    return guarded([&] {
        swarmgain::oracle::McConfig cfg;
        cfg.mean_watch = mean_watch;
        cfg.arrival_rate = arrival_rate;
        cfg.min_swarm = min_swarm;
        cfg.cycle_target = cycles;
        cfg.max_steps = max_steps;
        cfg.rng_seed = seed;
        const auto est = swarmgain::oracle::mc_busy_period(cfg);
        *out_mean = est.value;
        if (out_std_error) *out_std_error = est.std_error;
        if (out_cycles) *out_cycles = est.samples;
    });
}

sg_status sg_mc_unavailability(double mean_watch, double arrival_rate, int min_swarm,
                               int64_t arrivals, int64_t max_steps, uint64_t seed,
                               double* out_estimate, double* out_std_error) {
    if (auto s = require_out(out_estimate)) return s;
    return guarded([&] {
        swarmgain::oracle::McConfig cfg;
        cfg.mean_watch = mean_watch;
        cfg.arrival_rate = arrival_rate;
        cfg.min_swarm = min_swarm;
        cfg.arrival_target = arrivals;
        cfg.max_steps = max_steps;
        cfg.rng_seed = seed;
        const auto est = swarmgain::oracle::mc_unavailability(cfg);
        *out_estimate = est.value;
        if (out_std_error) *out_std_error = est.std_error;
    });
}

void sg_string_free(char* s) { delete[] s; }

}  // extern "C"
