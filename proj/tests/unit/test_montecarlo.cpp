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
#include <complex>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "relaysel/analytics.hpp"
#include "relaysel/montecarlo.hpp"

using namespace relaysel;

namespace {

const double kThreshold = db_to_linear(5.0);

bool within_sigmas(const OutageEstimate& e, double p, double sigmas) {
    const double sd = std::sqrt(p * (1.0 - p) / static_cast<double>(e.trials));
    return std::abs(e.p_hat() - p) <= sigmas * sd;
}

}  // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("dB conversion") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(db_to_linear(5.0) == doctest::Approx(3.1622776601683795).epsilon(1e-15));
}

TEST_CASE("OutageEstimate fields") {
    const OutageEstimate e{400, 100};
    CHECK(e.p_hat() == 0.25);
    CHECK(e.std_err() == doctest::Approx(std::sqrt(0.25 * 0.75 / 400.0)).epsilon(1e-15));
    CHECK(e.reliable());
    CHECK_FALSE((OutageEstimate{1000, 9}).reliable());
    CHECK((OutageEstimate{10, 0}).std_err() == 0.0);
}

TEST_CASE("zero channels always fail") {
    const NetworkConfig cfg(2, 3, 10.0, 10.0, kThreshold);
    SweepOptions opt;
    opt.trials = 1;
    opt.seed = 5;
    opt.sampler = [](const NetworkConfig& c, RandomStream&) {
        const auto n = static_cast<std::size_t>(c.num_users());
        const auto nr = static_cast<std::size_t>(c.num_relays());
        return ChannelRealization{Matrix<std::complex<double>>(n, nr), Matrix<std::complex<double>>(nr, n)};
    };
    const std::vector<double> grid{0.0, 10.0, 20.0};
    for (Scheme s : {Scheme::ors, Scheme::srs, Scheme::naive, Scheme::random}) {
        const auto r = run_outage_sweep(cfg, s, grid, opt);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            CHECK(r.min_snr_outage[g].p_hat() == 1.0);
            for (const auto& curve : r.per_user_outage) {
                CHECK(curve[g].p_hat() == 1.0);
            }
        }
    }
}

TEST_CASE("counts do not depend on the number of workers") {
    const NetworkConfig cfg(3, 4, 10.0, 10.0, kThreshold);
    const std::vector<double> grid{0.0, 5.0, 10.0, 15.0};
    SweepOptions opt;
    opt.trials = 3001;
    opt.seed = 99;
    opt.track_ranks = true;
    for (Scheme s : {Scheme::ors, Scheme::srs, Scheme::naive, Scheme::random}) {
        opt.workers = 1;
        const auto ref = run_outage_sweep(cfg, s, grid, opt);
        for (unsigned w : {2U, 3U, 8U}) {
            opt.workers = w;
            const auto r = run_outage_sweep(cfg, s, grid, opt);
            INFO("scheme " << scheme_name(s) << " workers " << w);
            for (std::size_t g = 0; g < grid.size(); ++g) {
                CHECK(r.min_snr_outage[g].failures == ref.min_snr_outage[g].failures);
                for (std::size_t u = 0; u < 3; ++u) {
                    CHECK(r.per_user_outage[u][g].failures == ref.per_user_outage[u][g].failures);
                }
            }
            CHECK(r.rank_counts == ref.rank_counts);
        }
    }
}

TEST_CASE("each trial uses its own keyed stream") {
    const NetworkConfig cfg(2, 3, 1.0, 1.0, kThreshold);
    const std::vector<double> grid{3.0, 8.0};
    SweepOptions opt;
    opt.trials = 500;
    opt.seed = 21;
    const auto r = run_outage_sweep(cfg, Scheme::random, grid, opt);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double p = db_to_linear(grid[g]);
        const NetworkConfig at = cfg.with_powers(p, p);
        std::uint64_t min_fail = 0;
        std::vector<std::uint64_t> user_fail(2, 0);
        for (std::uint64_t t = 0; t < opt.trials; ++t) {
            RandomStream s = RandomStream::for_trial(opt.seed, g, t);
            const SnrMatrix gamma = draw_snr_matrix(at, s);
            RandomStream pick = s.substream(1);
            const auto out = select_random(gamma, pick);
            min_fail += out.min_snr <= kThreshold ? 1 : 0;
            for (std::size_t u = 0; u < 2; ++u) {
                user_fail[u] += out.user_snrs[u] <= kThreshold ? 1 : 0;
            }
        }
        CHECK(r.min_snr_outage[g].failures == min_fail);
        CHECK(r.per_user_outage[0][g].failures == user_fail[0]);
        CHECK(r.per_user_outage[1][g].failures == user_fail[1]);
    }
}

TEST_CASE("fixed relay power") {
    // Q stays at 1e9 while P follows the grid.
    const NetworkConfig cfg(1, 1, 1.0, 1e9, kThreshold);
    SweepOptions opt;
    opt.trials = 200000;
    opt.seed = 4;
    opt.relay_power_tracks_user = false;
    const std::vector<double> grid{10.0};
    const auto r = run_outage_sweep(cfg, Scheme::ors, grid, opt);
    const double expected = cdf_snr_exact(kThreshold, 10.0, 1e9);
    CHECK(within_sigmas(r.min_snr_outage[0], expected, 4.0));
}

TEST_CASE("two-user ORS matches its closed form") {
    const NetworkConfig cfg(2, 2, 1.0, 1.0, kThreshold);
    SweepOptions opt;
    opt.trials = 200000;
    opt.seed = 7;
    const std::vector<double> grid{10.0, 20.0};
    const auto r = run_outage_sweep(cfg, Scheme::ors, grid, opt);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double p = db_to_linear(grid[g]);
        CHECK(within_sigmas(r.min_snr_outage[g], outage_upper_ors_two_user(kThreshold, p, p, 2), 4.0));
    }
}

TEST_CASE("naive user 1 behaves like a single user; nobody beats the minimum") {
    const NetworkConfig cfg(2, 4, 1.0, 1.0, kThreshold);
    SweepOptions opt;
    opt.trials = 100000;
    opt.seed = 8;
    const std::vector<double> grid{0.0, 5.0, 10.0};
    for (Scheme s : {Scheme::ors, Scheme::srs, Scheme::naive, Scheme::random}) {
        const auto r = run_outage_sweep(cfg, s, grid, opt);
        for (std::size_t g = 0; g < grid.size(); ++g) {
            const auto& m = r.min_snr_outage[g];
            for (const auto& curve : r.per_user_outage) {
                const auto& u = curve[g];
                CHECK(u.failures <= m.failures);
            }
            if (s == Scheme::naive) {
                const double p = db_to_linear(grid[g]);
                CHECK(within_sigmas(r.per_user_outage[0][g], outage_single_user(kThreshold, p, p, 4), 4.0));
                CHECK(within_sigmas(r.per_user_outage[1][g], outage_naive_user(kThreshold, p, p, 1, 4), 4.0));
            }
        }
    }
}

TEST_CASE("rank frequencies") {
    const auto single = rank_frequency(NetworkConfig(1, 3, 10.0, 10.0, kThreshold), Scheme::ors, 1000, 1);
    CHECK(single.size() == 1);
    CHECK(single.at(1) == 1.0);

    constexpr std::uint64_t trials = 200000;
    const NetworkConfig cfg(2, 2, 10.0, 10.0, kThreshold);
    for (Scheme s : {Scheme::ors, Scheme::srs}) {
        const auto freq = rank_frequency(cfg, s, trials, 12);
        const auto table = rank_probs_two_user(s, 2);
        double total = 0.0;
        for (auto [k, f] : freq) {
            total += f;
            REQUIRE(table.probs.count(k) == 1);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        for (auto [k, p] : table.probs) {
            const double f = freq.count(k) ? freq.at(k) : 0.0;
            INFO("scheme " << scheme_name(s) << " rank " << k);
            CHECK(std::abs(f - p) <= 4.0 * std::sqrt(p * (1.0 - p) / trials));
        }
    }
}

TEST_CASE("sweep input validation") {
    const NetworkConfig cfg(2, 2, 10.0, 10.0, kThreshold);
    SweepOptions opt;
    opt.trials = 10;
    const std::vector<double> empty;
    const std::vector<double> descending{10.0, 5.0};
    const std::vector<double> repeated{5.0, 5.0};
    const std::vector<double> ok{5.0};
    CHECK_THROWS_AS(run_outage_sweep(cfg, Scheme::ors, empty, opt), std::invalid_argument);
    CHECK_THROWS_AS(run_outage_sweep(cfg, Scheme::ors, descending, opt), std::invalid_argument);
    CHECK_THROWS_AS(run_outage_sweep(cfg, Scheme::ors, repeated, opt), std::invalid_argument);
    opt.trials = 0;
    CHECK_THROWS_AS(run_outage_sweep(cfg, Scheme::ors, ok, opt), std::invalid_argument);
}

TEST_CASE("worker exceptions reach the caller") {
    const NetworkConfig cfg(2, 2, 10.0, 10.0, kThreshold);
    SweepOptions opt;
    opt.trials = 100;
    opt.workers = 4;
    opt.sampler = [](const NetworkConfig&, RandomStream&) -> ChannelRealization {
        throw std::runtime_error("sampler failed");
    };
    const std::vector<double> grid{0.0};
    CHECK_THROWS_AS(run_outage_sweep(cfg, Scheme::ors, grid, opt), std::runtime_error);
}

TEST_CASE("diversity slope estimation") {
    std::vector<double> db, out;
    for (double x = 0.0; x <= 40.0; x += 5.0) {
        db.push_back(x);
        out.push_back(3.7 * std::pow(db_to_linear(x), -2.5));
    }
    CHECK(estimate_diversity_slope(db, out) == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(estimate_diversity_slope(db, out, std::pair{10.0, 30.0}) == doctest::Approx(2.5).epsilon(1e-9));

    std::vector<double> grid, bound;
    for (double x = 60.0; x <= 80.0; x += 2.0) {
        grid.push_back(x);
        const double p = db_to_linear(x);
        bound.push_back(outage_upper_ors_two_user(kThreshold, p, p, 4));
    }
    CHECK(std::abs(estimate_diversity_slope(grid, bound, std::pair{60.0, 80.0}) - 4.0) <= 0.05);

    const std::vector<double> two_db{0.0, 10.0};
    const std::vector<double> two_out{0.1, 0.01};
    CHECK_THROWS_AS(estimate_diversity_slope(two_db, two_out), std::invalid_argument);
    out.back() = 0.0;
    CHECK_THROWS_AS(estimate_diversity_slope(db, out), std::domain_error);
    CHECK_THROWS_AS(estimate_diversity_slope(db, out, std::pair{50.0, 60.0}), std::invalid_argument);
}

}  // TEST_SUITE
