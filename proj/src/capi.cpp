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

#include "relaysel/relaysel.h"

#include <cmath>
#include <exception>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relaysel/analytics.hpp"
#include "relaysel/errors.hpp"
#include "relaysel/montecarlo.hpp"
#include "relaysel/special_math.hpp"
#include "relaysel/verification.hpp"

using namespace relaysel;

struct rsel_config {
    NetworkConfig value;
};

struct rsel_sweep {
    ExperimentResult value;
};

struct rsel_report {
    std::vector<VerificationCheck> checks;
};

namespace {

thread_local std::string last_error;

rsel_status fail(rsel_status status, const char* what) {
    last_error = what;
    return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
rsel_status guarded(Fn&& fn) noexcept {
    try {
        last_error.clear();
        return std::forward<Fn>(fn)();
    } catch (const UnsupportedError& e) {
        return fail(RSEL_ERR_UNSUPPORTED, e.what());
    } catch (const std::domain_error& e) {
        return fail(RSEL_ERR_DOMAIN, e.what());
    } catch (const std::length_error& e) {
        return fail(RSEL_ERR_SIZE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(RSEL_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(RSEL_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(RSEL_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(RSEL_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(RSEL_ERR_INTERNAL, "unknown error");
    }
}

#define RSEL_REQUIRE(ptr)                                              \
    do {                                                               \
        if ((ptr) == nullptr) {                                        \
            return fail(RSEL_ERR_NULL_POINTER, #ptr " is null");       \
        }                                                              \
    } while (0)

Scheme to_scheme(rsel_scheme s) {
    switch (s) {
        case RSEL_SCHEME_ORS: return Scheme::ors;
        case RSEL_SCHEME_SRS: return Scheme::srs;
        case RSEL_SCHEME_NAIVE: return Scheme::naive;
        case RSEL_SCHEME_RANDOM: return Scheme::random;
    }
    throw std::invalid_argument("unknown scheme");
}

SnrMatrix to_matrix(const double* snr, int num_users, int num_relays) {
    if (num_users < 1 || num_relays < 1) {
        throw std::invalid_argument("matrix dimensions must be positive");
    }
    Matrix<double> m(static_cast<std::size_t>(num_users), static_cast<std::size_t>(num_relays));
    std::copy(snr, snr + m.values().size(), m.values().begin());
    return SnrMatrix(std::move(m));
}

rsel_status copy_table(const RankProbabilityTable& table, double* probs_out, size_t capacity,
                       size_t* count_out) {
    const auto entries = static_cast<size_t>(table.num_users) * static_cast<size_t>(table.num_relays);
    *count_out = entries;
    if (capacity < entries) {
        return fail(RSEL_ERR_BUFFER_TOO_SMALL, "probability buffer too small");
    }
    for (size_t k = 1; k <= entries; ++k) {
        const auto it = table.probs.find(static_cast<int>(k));
        probs_out[k - 1] = it == table.probs.end() ? 0.0 : it->second;
    }
    return RSEL_OK;
}

rsel_estimate to_estimate(const OutageEstimate& e) {
    return {e.trials, e.failures, e.p_hat(), e.std_err(), e.reliable() ? 1 : 0};
}

template <typename Fn>
rsel_status scalar(double* out, Fn&& fn) noexcept {
    RSEL_REQUIRE(out);
    return guarded([&] {
        *out = fn();
        return RSEL_OK;
    });
}

}  // namespace

extern "C" {

const char* rsel_version(void) { return "0.1.0"; }

const char* rsel_status_string(rsel_status status) {
    switch (status) {
        case RSEL_OK: return "ok";
        case RSEL_ERR_NULL_POINTER: return "null pointer";
        case RSEL_ERR_INVALID_ARGUMENT: return "invalid argument";
        case RSEL_ERR_DOMAIN: return "domain error";
        case RSEL_ERR_SIZE: return "size limit exceeded";
        case RSEL_ERR_BUFFER_TOO_SMALL: return "buffer too small";
        case RSEL_ERR_UNSUPPORTED: return "unsupported";
        case RSEL_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* rsel_last_error(void) { return last_error.c_str(); }

const char* rsel_scheme_name(rsel_scheme scheme) {
    switch (scheme) {
        case RSEL_SCHEME_ORS: return "ors";
        case RSEL_SCHEME_SRS: return "srs";
        case RSEL_SCHEME_NAIVE: return "naive";
        case RSEL_SCHEME_RANDOM: return "random";
    }
    return nullptr;
}

rsel_status rsel_parse_scheme(const char* name, rsel_scheme* out) {
    RSEL_REQUIRE(name);
    RSEL_REQUIRE(out);
    const auto s = parse_scheme(name);
    if (!s) {
        return fail(RSEL_ERR_INVALID_ARGUMENT, "unknown scheme name");
    }
    *out = static_cast<rsel_scheme>(static_cast<int>(*s));
    return RSEL_OK;
}

rsel_status rsel_bessel_k1(double x, double* out) {
    return scalar(out, [&] { return bessel_k1(x); });
}

rsel_status rsel_log_binomial(unsigned n, unsigned k, double* out) {
    return scalar(out, [&] { return log_binomial(n, k); });
}

rsel_status rsel_config_create(int num_users, int num_relays, double user_power, double relay_power,
                               double snr_threshold, rsel_config** out) {
    RSEL_REQUIRE(out);
    return guarded([&] {
        *out = new rsel_config{NetworkConfig(num_users, num_relays, user_power, relay_power, snr_threshold)};
        return RSEL_OK;
    });
}

void rsel_config_destroy(rsel_config* config) { delete config; }

rsel_status rsel_config_get(const rsel_config* config, int* num_users, int* num_relays, double* user_power,
                            double* relay_power, double* snr_threshold) {
    RSEL_REQUIRE(config);
    const NetworkConfig& c = config->value;
    if (num_users) *num_users = c.num_users();
    if (num_relays) *num_relays = c.num_relays();
    if (user_power) *user_power = c.user_power();
    if (relay_power) *relay_power = c.relay_power();
    if (snr_threshold) *snr_threshold = c.snr_threshold();
    return RSEL_OK;
}

rsel_status rsel_draw_snr_matrix(const rsel_config* config, uint64_t seed, uint64_t stream_id, double* snr_out,
                                 size_t capacity) {
    RSEL_REQUIRE(config);
    RSEL_REQUIRE(snr_out);
    return guarded([&] {
        const NetworkConfig& c = config->value;
        if (capacity < static_cast<size_t>(c.num_users()) * static_cast<size_t>(c.num_relays())) {
            return fail(RSEL_ERR_BUFFER_TOO_SMALL, "SNR buffer too small");
        }
        RandomStream stream(seed, stream_id);
        const SnrMatrix gamma = build_snr_matrix(draw_channels(c, stream), c);
        std::copy(gamma.values().values().begin(), gamma.values().values().end(), snr_out);
        return RSEL_OK;
    });
}

rsel_status rsel_select(rsel_scheme scheme, const double* snr, int num_users, int num_relays, uint64_t seed,
                        int* relay_of_out, double* min_snr_out, uint64_t* op_count_out) {
    RSEL_REQUIRE(snr);
    RSEL_REQUIRE(relay_of_out);
    return guarded([&] {
        RandomStream stream(seed, 0);
        const SelectionOutcome o = select(to_scheme(scheme), to_matrix(snr, num_users, num_relays), stream);
        std::copy(o.assignment.relay_of.begin(), o.assignment.relay_of.end(), relay_of_out);
        if (min_snr_out) *min_snr_out = o.min_snr;
        if (op_count_out) *op_count_out = o.op_count;
        return RSEL_OK;
    });
}

rsel_status rsel_brute_force(const double* snr, int num_users, int num_relays, int* relay_of_out,
                             double* min_snr_out) {
    RSEL_REQUIRE(snr);
    RSEL_REQUIRE(relay_of_out);
    return guarded([&] {
        const SelectionOutcome o = brute_force_lex_optimal(to_matrix(snr, num_users, num_relays));
        std::copy(o.assignment.relay_of.begin(), o.assignment.relay_of.end(), relay_of_out);
        if (min_snr_out) *min_snr_out = o.min_snr;
        return RSEL_OK;
    });
}

rsel_status rsel_srs_complexity(int num_users, int num_relays, uint64_t* out) {
    RSEL_REQUIRE(out);
    return guarded([&] {
        *out = srs_complexity(num_users, num_relays);
        return RSEL_OK;
    });
}

rsel_status rsel_naive_complexity(int num_users, int num_relays, uint64_t* out) {
    RSEL_REQUIRE(out);
    return guarded([&] {
        *out = naive_complexity(num_users, num_relays);
        return RSEL_OK;
    });
}

rsel_status rsel_cdf_snr(double x, double user_power, double relay_power, double* out) {
    return scalar(out, [&] { return cdf_snr_exact(x, user_power, relay_power); });
}

rsel_status rsel_cdf_snr_approx(double x, double user_power, double relay_power, double* out) {
    return scalar(out, [&] { return cdf_snr_approx(x, user_power, relay_power); });
}

rsel_status rsel_pdf_snr(double x, double user_power, double relay_power, double* out) {
    return scalar(out, [&] { return pdf_snr(x, user_power, relay_power); });
}

rsel_status rsel_order_stat_cdf(int rank, double x, int num_users, int num_relays, double user_power,
                                double relay_power, double* out) {
    return scalar(out, [&] { return order_stat_cdf(rank, x, num_users, num_relays, user_power, relay_power); });
}

rsel_status rsel_rank_probs_two_user(rsel_scheme scheme, int num_relays, double* probs_out, size_t capacity,
                                     size_t* count_out) {
    RSEL_REQUIRE(probs_out);
    RSEL_REQUIRE(count_out);
    return guarded([&] {
        return copy_table(rank_probs_two_user(to_scheme(scheme), num_relays), probs_out, capacity, count_out);
    });
}

rsel_status rsel_enumerate_rank_probs(rsel_scheme scheme, int num_users, int num_relays, double* probs_out,
                                      size_t capacity, size_t* count_out) {
    RSEL_REQUIRE(probs_out);
    RSEL_REQUIRE(count_out);
    return guarded([&] {
        return copy_table(enumerate_rank_probabilities(to_scheme(scheme), num_users, num_relays), probs_out,
                          capacity, count_out);
    });
}

rsel_status rsel_outage_bound(rsel_scheme scheme, const rsel_config* config, double* out) {
    RSEL_REQUIRE(config);
    RSEL_REQUIRE(out);
    return guarded([&] {
        const std::optional<double> v = outage_upper_bound(to_scheme(scheme), config->value);
        if (!v) {
            return fail(RSEL_ERR_UNSUPPORTED, "no closed-form outage for this scheme and network size");
        }
        *out = *v;
        return RSEL_OK;
    });
}

rsel_status rsel_outage_asymptotic(rsel_scheme scheme, int num_users, int num_relays, double threshold,
                                   double power, double* out) {
    return scalar(out, [&] { return outage_asymptotic(to_scheme(scheme), num_users, num_relays, threshold, power); });
}

rsel_status rsel_outage_naive_user(double threshold, double user_power, double relay_power, int user,
                                   int num_relays, double* out) {
    return scalar(out, [&] { return outage_naive_user(threshold, user_power, relay_power, user, num_relays); });
}

rsel_status rsel_outage_single_user(double threshold, double user_power, double relay_power, int num_relays,
                                    double* out) {
    return scalar(out, [&] { return outage_single_user(threshold, user_power, relay_power, num_relays); });
}

rsel_status rsel_diversity_order(rsel_scheme scheme, int num_users, int num_relays, int* out) {
    RSEL_REQUIRE(out);
    return guarded([&] {
        *out = diversity_order(to_scheme(scheme), num_users, num_relays);
        return RSEL_OK;
    });
}

rsel_status rsel_naive_user_diversity_order(int user, int num_relays, int* out) {
    RSEL_REQUIRE(out);
    return guarded([&] {
        *out = naive_user_diversity_order(user, num_relays);
        return RSEL_OK;
    });
}

rsel_status rsel_array_gain_ratios(int num_relays, double* ors_vs_single, double* naive_vs_srs_db) {
    RSEL_REQUIRE(ors_vs_single);
    RSEL_REQUIRE(naive_vs_srs_db);
    return guarded([&] {
        const ArrayGainRatios r = array_gain_ratios(num_relays);
        *ors_vs_single = r.ors_vs_single;
        *naive_vs_srs_db = r.naive_vs_srs_db;
        return RSEL_OK;
    });
}

rsel_status rsel_diversity_slope(const double* power_db, const double* outage, size_t count, int has_window,
                                 double window_lo_db, double window_hi_db, double* out) {
    RSEL_REQUIRE(power_db);
    RSEL_REQUIRE(outage);
    return scalar(out, [&] {
        std::optional<std::pair<double, double>> window;
        if (has_window) {
            window.emplace(window_lo_db, window_hi_db);
        }
        return estimate_diversity_slope({power_db, count}, {outage, count}, window);
    });
}

rsel_status rsel_sweep_run(const rsel_config* config, rsel_scheme scheme, const double* power_grid_db,
                           size_t grid_size, const rsel_sweep_options* options, rsel_sweep** out) {
    RSEL_REQUIRE(config);
    RSEL_REQUIRE(power_grid_db);
    RSEL_REQUIRE(options);
    RSEL_REQUIRE(out);
    return guarded([&] {
        SweepOptions opt;
        opt.trials = options->trials;
        opt.seed = options->seed;
        opt.workers = options->workers;
        opt.relay_power_tracks_user = options->relay_power_tracks_user != 0;
        opt.track_ranks = options->track_ranks != 0;
        *out = new rsel_sweep{
            run_outage_sweep(config->value, to_scheme(scheme), {power_grid_db, grid_size}, opt)};
        return RSEL_OK;
    });
}

void rsel_sweep_destroy(rsel_sweep* sweep) { delete sweep; }

rsel_status rsel_sweep_grid_size(const rsel_sweep* sweep, size_t* out) {
    RSEL_REQUIRE(sweep);
    RSEL_REQUIRE(out);
    *out = sweep->value.power_grid_db.size();
    return RSEL_OK;
}

rsel_status rsel_sweep_user_outage(const rsel_sweep* sweep, int user, size_t grid_index, rsel_estimate* out) {
    RSEL_REQUIRE(sweep);
    RSEL_REQUIRE(out);
    const auto& curves = sweep->value.per_user_outage;
    if (user < 0 || static_cast<size_t>(user) >= curves.size() || grid_index >= sweep->value.power_grid_db.size()) {
        return fail(RSEL_ERR_INVALID_ARGUMENT, "user or grid index out of range");
    }
    *out = to_estimate(curves[static_cast<size_t>(user)][grid_index]);
    return RSEL_OK;
}

rsel_status rsel_sweep_min_outage(const rsel_sweep* sweep, size_t grid_index, rsel_estimate* out) {
    RSEL_REQUIRE(sweep);
    RSEL_REQUIRE(out);
    if (grid_index >= sweep->value.min_snr_outage.size()) {
        return fail(RSEL_ERR_INVALID_ARGUMENT, "grid index out of range");
    }
    *out = to_estimate(sweep->value.min_snr_outage[grid_index]);
    return RSEL_OK;
}

rsel_status rsel_sweep_rank_count(const rsel_sweep* sweep, size_t grid_index, int rank, uint64_t* out) {
    RSEL_REQUIRE(sweep);
    RSEL_REQUIRE(out);
    const auto& counts = sweep->value.rank_counts;
    if (counts.empty()) {
        return fail(RSEL_ERR_INVALID_ARGUMENT, "sweep did not track ranks");
    }
    if (grid_index >= counts.size() || rank < 1 || static_cast<size_t>(rank) > counts[grid_index].size()) {
        return fail(RSEL_ERR_INVALID_ARGUMENT, "grid index or rank out of range");
    }
    *out = counts[grid_index][static_cast<size_t>(rank) - 1];
    return RSEL_OK;
}

rsel_status rsel_verify_run(int max_users, int max_relays, uint64_t matrices, uint64_t seed, rsel_report** out) {
    RSEL_REQUIRE(out);
    return guarded([&] {
        *out = new rsel_report{run_verification({max_users, max_relays, matrices, seed})};
        return RSEL_OK;
    });
}

void rsel_report_destroy(rsel_report* report) { delete report; }

rsel_status rsel_report_size(const rsel_report* report, size_t* out) {
    RSEL_REQUIRE(report);
    RSEL_REQUIRE(out);
    *out = report->checks.size();
    return RSEL_OK;
}

rsel_status rsel_report_entry(const rsel_report* report, size_t index, const char** name, int* passed,
                              int* informational, const char** detail) {
    RSEL_REQUIRE(report);
    if (index >= report->checks.size()) {
        return fail(RSEL_ERR_INVALID_ARGUMENT, "report index out of range");
    }
    const VerificationCheck& c = report->checks[index];
    if (name) *name = c.name.c_str();
    if (passed) *passed = c.passed ? 1 : 0;
    if (informational) *informational = c.informational ? 1 : 0;
    if (detail) *detail = c.detail.c_str();
    return RSEL_OK;
}

rsel_status rsel_report_passed(const rsel_report* report, int* out) {
    RSEL_REQUIRE(report);
    RSEL_REQUIRE(out);
    *out = verification_passed(report->checks) ? 1 : 0;
    return RSEL_OK;
}

}  // extern "C"
