#ifndef SWARMGAIN_H
#define SWARMGAIN_H

/*
 * swarmgain -- peer-assisted CDN traffic-gain model and trace simulator.
 *
 * C API of the shared library. All functions return a status code
 * (sg_status); results come back through out-parameters. On failure,
 * sg_last_error() returns a thread-local description of what went
 * wrong. Handles are opaque and must be released with the matching
 * *_free function. Loaded traces are immutable, so one handle may be
 * shared by any number of concurrently running simulations.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sg_status {
    SG_OK = 0,
    SG_ERROR_RUNTIME = 1,    /* I/O failures, internal errors */
    SG_ERROR_VALIDATION = 2, /* bad arguments, malformed input files */
} sg_status;

/* Message describing the most recent failure on this thread. The
 * pointer stays valid until the next failing call on the same thread. */
const char* sg_last_error(void);

const char* sg_version(void);

/* ------------------------------------------------------------------ */
/* Closed-form model                                                   */

typedef struct sg_swarm_params {
    double arrival_rate;   /* peers per second, >= 0 */
    double mean_watch;     /* seconds, > 0 */
    double content_length; /* seconds, > 0 */
    double bitrate;        /* bits per second, > 0 */
} sg_swarm_params;

/* Average swarm size c = u * r. */
sg_status sg_capacity(double mean_watch, double arrival_rate, double* out);

/* Busy-period growth factor S(m, x); saturates at 1e300. */
sg_status sg_scaled_gamma_tail(int min_swarm, double x, double* out);

/* Expected peer-availability period, seconds. */
sg_status sg_expected_busy_period(double mean_watch, double arrival_rate, int min_swarm,
                                  double* out);

/* Probability an arriving request is not peer-served. */
sg_status sg_unavailability(const sg_swarm_params* params, int min_swarm, double* out);

/* Gain of one swarm as a function of capacity; 1 - e^-c for m = 1. */
sg_status sg_single_swarm_gain(double capacity, int min_swarm, double* out);

/* Server traffic rate beta * l * r * P, bits per second. */
sg_status sg_server_traffic_rate(const sg_swarm_params* params, int min_swarm, double* out);

sg_status sg_multi_swarm_gain(const sg_swarm_params* swarms, size_t count, int min_swarm,
                              double* out);

/* Gain when only a fraction alpha of peers upload. */
sg_status sg_partial_participation_gain(const sg_swarm_params* swarms, size_t count,
                                        int min_swarm, double alpha, double* out);

/* Server traffic of items distributed as one bundle. */
sg_status sg_bundle_server_traffic(const sg_swarm_params* bundle, size_t count, int min_swarm,
                                   double* out);

/* Gain delta of bundling vs individual distribution; may be negative. */
sg_status sg_bundle_delta_gain(const sg_swarm_params* bundle, size_t count, int min_swarm,
                               double* out);

/* ------------------------------------------------------------------ */
/* Traces                                                              */

typedef struct sg_trace sg_trace;

/* Load and validate a session trace plus its content catalog.
 * lenient != 0 drops (and counts) rows with unknown content ids
 * instead of failing. */
sg_status sg_trace_load(const char* trace_csv_path, const char* catalog_csv_path, int lenient,
                        sg_trace** out);

/* Generate a synthetic trace from a workload spec (JSON text). */
sg_status sg_trace_generate(const char* workload_spec_json, sg_trace** out);

sg_status sg_trace_write(const sg_trace* trace, const char* trace_csv_path,
                         const char* catalog_csv_path);

size_t sg_trace_session_count(const sg_trace* trace);
int64_t sg_trace_dropped_rows(const sg_trace* trace);

/* Per-swarm-per-day estimates as CSV text (caller frees with
 * sg_string_free). */
sg_status sg_trace_estimates_csv(const sg_trace* trace, int isp_split, int bitrate_split,
                                 char** out_csv);

void sg_trace_free(sg_trace* trace);

/* ------------------------------------------------------------------ */
/* Simulation                                                          */

typedef struct sg_report sg_report;

/* Run the event-driven replay under a scenario (JSON text; all fields
 * optional): isp_split, bitrate_split, min_swarm_m, participation_alpha,
 * availability_mode ("watch"|"download"), download_bandwidth_bps,
 * cache_size_k, eligibility_fraction, rng_seed, ladder. */
sg_status sg_simulate(const sg_trace* trace, const char* scenario_json, sg_report** out);

double sg_report_gain(const sg_report* report);
double sg_report_useful_bytes(const sg_report* report);
double sg_report_server_bytes(const sg_report* report);
double sg_report_mean_swarm_capacity(const sg_report* report);
int64_t sg_report_sessions(const sg_report* report);
int64_t sg_report_peer_served(const sg_report* report);

sg_status sg_report_json(const sg_report* report, char** out_json);
sg_status sg_report_swarms_csv(const sg_report* report, char** out_csv);

void sg_report_free(sg_report* report);

/* ------------------------------------------------------------------ */
/* Analysis                                                            */

/* Analytic gain table per (ISP, day) with aggregate rows, CSV text. */
sg_status sg_analyze_csv(const sg_trace* trace, int min_swarm, double alpha, int bitrate_split,
                         char** out_csv);

/* Corpus-wide analytic gain over trace-estimated swarm parameters. */
sg_status sg_corpus_gain(const sg_trace* trace, int min_swarm, double alpha, int isp_split,
                         int bitrate_split, double* out);

/* Same under online-while-downloading: peers seed for
 * min(watch, beta*l/bandwidth). */
sg_status sg_corpus_gain_download(const sg_trace* trace, int min_swarm, double alpha,
                                  int isp_split, int bitrate_split, double bandwidth_bps,
                                  double* out);

/* Parse a scenario (empty or partial JSON allowed), validate it, and
 * return the fully resolved configuration as JSON text. */
sg_status sg_scenario_resolve(const char* scenario_json, char** out_json);

/* Delta-gain scan over sampled bundles of each size in `sizes`.
 * Either output may be NULL if not wanted. */
sg_status sg_bundle_scan_csv(const sg_trace* trace, const int* sizes, size_t size_count,
                             int64_t sample_count, uint64_t seed, int min_swarm,
                             char** out_summary_csv, char** out_samples_csv);

/* ------------------------------------------------------------------ */
/* Monte-Carlo oracle                                                  */

/* Mean busy-period length of the simulated swarm occupancy chain.
 * Stops at `cycles` completed periods or `max_steps` events, whichever
 * comes first; *out_cycles reports how many completed. */
sg_status sg_mc_busy_period(double mean_watch, double arrival_rate, int min_swarm,
                            int64_t cycles, int64_t max_steps, uint64_t seed, double* out_mean,
                            double* out_std_error, int64_t* out_cycles);

/* Fraction of simulated arrivals finding fewer than m peers. */
sg_status sg_mc_unavailability(double mean_watch, double arrival_rate, int min_swarm,
                               int64_t arrivals, int64_t max_steps, uint64_t seed,
                               double* out_estimate, double* out_std_error);

void sg_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SWARMGAIN_H */
