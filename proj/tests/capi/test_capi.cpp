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

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <doctest.h>

#include "relaysel/relaysel.h"

TEST_SUITE("capi") {

TEST_CASE("status strings and scheme names") {
    CHECK(std::string(rsel_status_string(RSEL_OK)) == "ok");
    CHECK(std::string(rsel_status_string(RSEL_ERR_UNSUPPORTED)) == "unsupported");
    CHECK(std::string(rsel_version()) == "0.1.0");
    for (rsel_scheme s : {RSEL_SCHEME_ORS, RSEL_SCHEME_SRS, RSEL_SCHEME_NAIVE, RSEL_SCHEME_RANDOM}) {
        rsel_scheme back{};
        REQUIRE(rsel_parse_scheme(rsel_scheme_name(s), &back) == RSEL_OK);
        CHECK(back == s);
    }
    rsel_scheme out{};
    CHECK(rsel_parse_scheme("greedy", &out) == RSEL_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(rsel_last_error()) > 0);
    CHECK(rsel_parse_scheme(nullptr, &out) == RSEL_ERR_NULL_POINTER);
}

TEST_CASE("exceptions become status codes") {
    double v = 0.0;
    CHECK(rsel_bessel_k1(-1.0, &v) == RSEL_ERR_DOMAIN);
    CHECK(rsel_bessel_k1(1.0, nullptr) == RSEL_ERR_NULL_POINTER);
    REQUIRE(rsel_bessel_k1(1.0, &v) == RSEL_OK);
    CHECK(v == doctest::Approx(0.6019072301972346).epsilon(1e-13));
    CHECK(std::string(rsel_last_error()).empty());

    rsel_config* cfg = nullptr;
    CHECK(rsel_config_create(3, 2, 10.0, 10.0, 1.0, &cfg) == RSEL_ERR_INVALID_ARGUMENT);
    CHECK(cfg == nullptr);

    int relay_of[8];
    const double big[8 * 12] = {};
    CHECK(rsel_brute_force(big, 8, 12, relay_of, nullptr) == RSEL_ERR_SIZE);

    CHECK(rsel_outage_asymptotic(RSEL_SCHEME_SRS, 3, 4, 3.0, 100.0, &v) == RSEL_ERR_UNSUPPORTED);
    uint64_t n = 0;
    CHECK(rsel_srs_complexity(3, 2, &n) == RSEL_ERR_DOMAIN);
}

TEST_CASE("selection on the worked example") {
    const double gamma[] = {1.08, 0.14, 0.09, 0.05, 1.07, 0.15, 0.50, 0.04};
    int relay_of[2] = {-1, -1};
    double min_snr = 0.0;
    uint64_t ops = 0;
    REQUIRE(rsel_select(RSEL_SCHEME_ORS, gamma, 2, 4, 0, relay_of, &min_snr, &ops) == RSEL_OK);
    CHECK(relay_of[0] == 0);
    CHECK(relay_of[1] == 2);
    CHECK(min_snr == 0.50);
    REQUIRE(rsel_select(RSEL_SCHEME_SRS, gamma, 2, 4, 0, relay_of, &min_snr, &ops) == RSEL_OK);
    CHECK(relay_of[0] == 1);
    CHECK(relay_of[1] == 0);
    CHECK(min_snr == 0.14);
    CHECK(ops == 9);
    REQUIRE(rsel_brute_force(gamma, 2, 4, relay_of, &min_snr) == RSEL_OK);
    CHECK(relay_of[1] == 2);
    CHECK(rsel_select(RSEL_SCHEME_ORS, gamma, 4, 2, 0, relay_of, &min_snr, &ops) == RSEL_ERR_INVALID_ARGUMENT);
    const double negative[] = {1.0, -1.0};
    CHECK(rsel_select(RSEL_SCHEME_ORS, negative, 1, 2, 0, relay_of, &min_snr, &ops) == RSEL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("configs and draws") {
    rsel_config* cfg = nullptr;
    REQUIRE(rsel_config_create(2, 3, 10.0, 20.0, 3.0, &cfg) == RSEL_OK);
    int n = 0, nr = 0;
    double p = 0.0, q = 0.0, th = 0.0;
    REQUIRE(rsel_config_get(cfg, &n, &nr, &p, &q, &th) == RSEL_OK);
    CHECK(n == 2);
    CHECK(nr == 3);
    CHECK(q == 20.0);
    std::vector<double> a(6), b(6);
    CHECK(rsel_draw_snr_matrix(cfg, 1, 2, a.data(), 5) == RSEL_ERR_BUFFER_TOO_SMALL);
    REQUIRE(rsel_draw_snr_matrix(cfg, 1, 2, a.data(), a.size()) == RSEL_OK);
    REQUIRE(rsel_draw_snr_matrix(cfg, 1, 2, b.data(), b.size()) == RSEL_OK);
    CHECK(a == b);
    rsel_config_destroy(cfg);
    rsel_config_destroy(nullptr);
}

TEST_CASE("analytics through the C API") {
    double probs[8];
    size_t count = 0;
    CHECK(rsel_rank_probs_two_user(RSEL_SCHEME_SRS, 2, probs, 3, &count) == RSEL_ERR_BUFFER_TOO_SMALL);
    CHECK(count == 4);
    REQUIRE(rsel_rank_probs_two_user(RSEL_SCHEME_SRS, 2, probs, 8, &count) == RSEL_OK);
    CHECK(probs[0] == 0.0);
    CHECK(probs[1] == doctest::Approx(1.0 / 3.0));
    CHECK(probs[2] == doctest::Approx(0.5));
    CHECK(probs[3] == doctest::Approx(1.0 / 6.0));
    REQUIRE(rsel_enumerate_rank_probs(RSEL_SCHEME_SRS, 2, 2, probs, 8, &count) == RSEL_OK);
    CHECK(probs[3] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

    rsel_config* two = nullptr;
    rsel_config* three = nullptr;
    REQUIRE(rsel_config_create(2, 4, 100.0, 100.0, std::sqrt(10.0), &two) == RSEL_OK);
    REQUIRE(rsel_config_create(3, 4, 100.0, 100.0, std::sqrt(10.0), &three) == RSEL_OK);
    double v = 0.0;
    REQUIRE(rsel_outage_bound(RSEL_SCHEME_ORS, two, &v) == RSEL_OK);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(rsel_outage_bound(RSEL_SCHEME_ORS, three, &v) == RSEL_ERR_UNSUPPORTED);
    CHECK(rsel_outage_bound(RSEL_SCHEME_RANDOM, two, &v) == RSEL_ERR_UNSUPPORTED);
    REQUIRE(rsel_outage_bound(RSEL_SCHEME_NAIVE, three, &v) == RSEL_OK);
    rsel_config_destroy(two);
    rsel_config_destroy(three);

    int d = 0;
    REQUIRE(rsel_diversity_order(RSEL_SCHEME_SRS, 3, 4, &d) == RSEL_OK);
    CHECK(d == 2);
    REQUIRE(rsel_naive_user_diversity_order(2, 4, &d) == RSEL_OK);
    CHECK(d == 2);
    double c1 = 0.0, c2 = 0.0;
    REQUIRE(rsel_array_gain_ratios(4, &c1, &c2) == RSEL_OK);
    CHECK(c1 == 2.0);
    CHECK(c2 == doctest::Approx(3.9794).epsilon(1e-4));

    const double db[] = {0.0, 10.0, 20.0, 30.0};
    const double out[] = {1.0, 1e-2, 1e-4, 1e-6};
    REQUIRE(rsel_diversity_slope(db, out, 4, 0, 0.0, 0.0, &v) == RSEL_OK);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(rsel_diversity_slope(db, out, 4, 1, 0.0, 30.0, &v) == RSEL_OK);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
    const double zeros[] = {1.0, 0.0, 0.0, 0.0};
    CHECK(rsel_diversity_slope(db, zeros, 4, 0, 0.0, 0.0, &v) == RSEL_ERR_DOMAIN);
}

TEST_CASE("sweeps") {
    rsel_config* cfg = nullptr;
    REQUIRE(rsel_config_create(2, 2, 1.0, 1.0, std::sqrt(10.0), &cfg) == RSEL_OK);
    const double grid[] = {0.0, 10.0};
    rsel_sweep_options opt{2000, 3, 2, 1, 1};
    rsel_sweep* sweep = nullptr;
    REQUIRE(rsel_sweep_run(cfg, RSEL_SCHEME_ORS, grid, 2, &opt, &sweep) == RSEL_OK);
    size_t size = 0;
    REQUIRE(rsel_sweep_grid_size(sweep, &size) == RSEL_OK);
    CHECK(size == 2);
    rsel_estimate e{};
    REQUIRE(rsel_sweep_min_outage(sweep, 1, &e) == RSEL_OK);
    CHECK(e.trials == 2000);
    CHECK(e.p_hat == doctest::Approx(static_cast<double>(e.failures) / 2000.0));
    rsel_estimate u{};
    REQUIRE(rsel_sweep_user_outage(sweep, 1, 1, &u) == RSEL_OK);
    CHECK(u.failures <= e.failures);
    CHECK(rsel_sweep_user_outage(sweep, 2, 0, &u) == RSEL_ERR_INVALID_ARGUMENT);
    CHECK(rsel_sweep_min_outage(sweep, 2, &e) == RSEL_ERR_INVALID_ARGUMENT);
    uint64_t total = 0;
    for (int k = 1; k <= 4; ++k) {
        uint64_t c = 0;
        REQUIRE(rsel_sweep_rank_count(sweep, 0, k, &c) == RSEL_OK);
        total += c;
    }
    CHECK(total == 2000);
    uint64_t c = 0;
    CHECK(rsel_sweep_rank_count(sweep, 0, 5, &c) == RSEL_ERR_INVALID_ARGUMENT);
    rsel_sweep_destroy(sweep);

    opt.trials = 0;
    sweep = nullptr;
    CHECK(rsel_sweep_run(cfg, RSEL_SCHEME_ORS, grid, 2, &opt, &sweep) == RSEL_ERR_INVALID_ARGUMENT);
    CHECK(sweep == nullptr);
    opt.trials = 10;
    const double bad_grid[] = {10.0, 0.0};
    CHECK(rsel_sweep_run(cfg, RSEL_SCHEME_ORS, bad_grid, 2, &opt, &sweep) == RSEL_ERR_INVALID_ARGUMENT);
    rsel_config_destroy(cfg);
}

TEST_CASE("verification report") {
    rsel_report* report = nullptr;
    REQUIRE(rsel_verify_run(2, 3, 100, 1, &report) == RSEL_OK);
    size_t n = 0;
    REQUIRE(rsel_report_size(report, &n) == RSEL_OK);
    CHECK(n > 10);
    int all = 0;
    REQUIRE(rsel_report_passed(report, &all) == RSEL_OK);
    CHECK(all == 1);
    const char* name = nullptr;
    const char* detail = nullptr;
    int passed = 0, info = 0;
    REQUIRE(rsel_report_entry(report, 0, &name, &passed, &info, &detail) == RSEL_OK);
    CHECK(std::string(name).find("ors_equals_brute_force") == 0);
    CHECK(rsel_report_entry(report, n, &name, &passed, &info, &detail) == RSEL_ERR_INVALID_ARGUMENT);
    rsel_report_destroy(report);
    CHECK(rsel_verify_run(3, 2, 100, 1, &report) == RSEL_ERR_INVALID_ARGUMENT);
}

}  // TEST_SUITE
