/*
   Copyright 2026 The relaysel Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/* C interface to relaysel. Every call returns an rsel_status; on failure the
   thread-local message from rsel_last_error() says why. Handles are opaque and
   owned by the caller once created. Powers and thresholds are linear. */

#ifndef RELAYSEL_RELAYSEL_H
#define RELAYSEL_RELAYSEL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RELAYSEL_BUILDING)
#    define RSEL_API __declspec(dllexport)
#  else
#    define RSEL_API __declspec(dllimport)
#  endif
#else
#  define RSEL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rsel_status {
    RSEL_OK = 0,
    RSEL_ERR_NULL_POINTER = 1,
    RSEL_ERR_INVALID_ARGUMENT = 2,
    RSEL_ERR_DOMAIN = 3,
    RSEL_ERR_SIZE = 4,
    RSEL_ERR_BUFFER_TOO_SMALL = 5,
    RSEL_ERR_UNSUPPORTED = 6,
    RSEL_ERR_INTERNAL = 7
} rsel_status;

typedef enum rsel_scheme {
    RSEL_SCHEME_ORS = 0,
    RSEL_SCHEME_SRS = 1,
    RSEL_SCHEME_NAIVE = 2,
    RSEL_SCHEME_RANDOM = 3
} rsel_scheme;

typedef struct rsel_config rsel_config;
typedef struct rsel_sweep rsel_sweep;
typedef struct rsel_report rsel_report;

typedef struct rsel_sweep_options {
    uint64_t trials;
    uint64_t seed;
    unsigned workers;             /* 0 means 1 */
    int relay_power_tracks_user;  /* nonzero: Q follows P along the grid */
    int track_ranks;              /* nonzero: tally the rank of the minimum SNR */
} rsel_sweep_options;

typedef struct rsel_estimate {
    uint64_t trials;
    uint64_t failures;
    double p_hat;
    double std_err;
    int reliable;                 /* at least 10 failures observed */
} rsel_estimate;

RSEL_API const char* rsel_version(void);
RSEL_API const char* rsel_status_string(rsel_status status);
RSEL_API const char* rsel_last_error(void);

RSEL_API const char* rsel_scheme_name(rsel_scheme scheme);
RSEL_API rsel_status rsel_parse_scheme(const char* name, rsel_scheme* out);

/* Special functions */
RSEL_API rsel_status rsel_bessel_k1(double x, double* out);
RSEL_API rsel_status rsel_log_binomial(unsigned n, unsigned k, double* out);

/* Network configuration */
RSEL_API rsel_status rsel_config_create(int num_users, int num_relays, double user_power,
                                        double relay_power, double snr_threshold, rsel_config** out);
RSEL_API void rsel_config_destroy(rsel_config* config);
RSEL_API rsel_status rsel_config_get(const rsel_config* config, int* num_users, int* num_relays,
                                     double* user_power, double* relay_power, double* snr_threshold);

/* One channel draw for stream (seed, stream_id); snr_out is row-major users x relays. */
RSEL_API rsel_status rsel_draw_snr_matrix(const rsel_config* config, uint64_t seed, uint64_t stream_id,
                                          double* snr_out, size_t capacity);

/* Selection on a row-major users x relays SNR matrix. relay_of_out has room for
   num_users entries; seed only matters for RSEL_SCHEME_RANDOM. */
RSEL_API rsel_status rsel_select(rsel_scheme scheme, const double* snr, int num_users, int num_relays,
                                 uint64_t seed, int* relay_of_out, double* min_snr_out,
                                 uint64_t* op_count_out);
RSEL_API rsel_status rsel_brute_force(const double* snr, int num_users, int num_relays,
                                      int* relay_of_out, double* min_snr_out);
RSEL_API rsel_status rsel_srs_complexity(int num_users, int num_relays, uint64_t* out);
RSEL_API rsel_status rsel_naive_complexity(int num_users, int num_relays, uint64_t* out);

/* Analytics */
RSEL_API rsel_status rsel_cdf_snr(double x, double user_power, double relay_power, double* out);
RSEL_API rsel_status rsel_cdf_snr_approx(double x, double user_power, double relay_power, double* out);
RSEL_API rsel_status rsel_pdf_snr(double x, double user_power, double relay_power, double* out);
RSEL_API rsel_status rsel_order_stat_cdf(int rank, double x, int num_users, int num_relays,
                                         double user_power, double relay_power, double* out);
/* probs_out[k-1] = Prob(min SNR is the k-th largest entry), k = 1..2*num_relays. */
RSEL_API rsel_status rsel_rank_probs_two_user(rsel_scheme scheme, int num_relays, double* probs_out,
                                              size_t capacity, size_t* count_out);
/* Exact table by exhaustive rank placement; at most 10 matrix entries. */
RSEL_API rsel_status rsel_enumerate_rank_probs(rsel_scheme scheme, int num_users, int num_relays,
                                               double* probs_out, size_t capacity, size_t* count_out);
/* Closed-form outage of the minimum SNR. RSEL_ERR_UNSUPPORTED where none exists. */
RSEL_API rsel_status rsel_outage_bound(rsel_scheme scheme, const rsel_config* config, double* out);
RSEL_API rsel_status rsel_outage_asymptotic(rsel_scheme scheme, int num_users, int num_relays,
                                            double threshold, double power, double* out);
/* user is 0-based */
RSEL_API rsel_status rsel_outage_naive_user(double threshold, double user_power, double relay_power,
                                            int user, int num_relays, double* out);
RSEL_API rsel_status rsel_outage_single_user(double threshold, double user_power, double relay_power,
                                             int num_relays, double* out);
RSEL_API rsel_status rsel_diversity_order(rsel_scheme scheme, int num_users, int num_relays, int* out);
RSEL_API rsel_status rsel_naive_user_diversity_order(int user, int num_relays, int* out);
RSEL_API rsel_status rsel_array_gain_ratios(int num_relays, double* ors_vs_single, double* naive_vs_srs_db);

/* Negated least-squares slope of log10(outage) against power in dB / 10. With
   has_window zero the top third of the grid is used. */
RSEL_API rsel_status rsel_diversity_slope(const double* power_db, const double* outage, size_t count,
                                          int has_window, double window_lo_db, double window_hi_db,
                                          double* out);

/* Monte Carlo */
RSEL_API rsel_status rsel_sweep_run(const rsel_config* config, rsel_scheme scheme, const double* power_grid_db,
                                    size_t grid_size, const rsel_sweep_options* options, rsel_sweep** out);
RSEL_API void rsel_sweep_destroy(rsel_sweep* sweep);
RSEL_API rsel_status rsel_sweep_grid_size(const rsel_sweep* sweep, size_t* out);
/* user is 0-based */
RSEL_API rsel_status rsel_sweep_user_outage(const rsel_sweep* sweep, int user, size_t grid_index,
                                            rsel_estimate* out);
RSEL_API rsel_status rsel_sweep_min_outage(const rsel_sweep* sweep, size_t grid_index, rsel_estimate* out);
/* rank is 1-based; RSEL_ERR_INVALID_ARGUMENT unless the sweep tracked ranks. */
RSEL_API rsel_status rsel_sweep_rank_count(const rsel_sweep* sweep, size_t grid_index, int rank, uint64_t* out);

/* Oracle, enumeration and operation-count self checks. */
RSEL_API rsel_status rsel_verify_run(int max_users, int max_relays, uint64_t matrices, uint64_t seed,
                                     rsel_report** out);
RSEL_API void rsel_report_destroy(rsel_report* report);
RSEL_API rsel_status rsel_report_size(const rsel_report* report, size_t* out);
/* Strings stay valid until the report is destroyed. */
RSEL_API rsel_status rsel_report_entry(const rsel_report* report, size_t index, const char** name,
                                       int* passed, int* informational, const char** detail);
RSEL_API rsel_status rsel_report_passed(const rsel_report* report, int* out);

#ifdef __cplusplus
}
#endif

#endif /* RELAYSEL_RELAYSEL_H */
