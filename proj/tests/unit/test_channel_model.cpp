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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "relaysel/analytics.hpp"
#include "relaysel/channel_model.hpp"

using namespace relaysel;

TEST_SUITE("channel_model") {

TEST_CASE("NetworkConfig validation") {
    CHECK_NOTHROW(NetworkConfig(2, 4, 10.0, 10.0, 3.0));
    CHECK_NOTHROW(NetworkConfig(3, 3, 1.0, 2.0, 0.5));
    CHECK_THROWS_AS(NetworkConfig(0, 4, 10.0, 10.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(NetworkConfig(3, 2, 10.0, 10.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(NetworkConfig(2, 4, 0.0, 10.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(NetworkConfig(2, 4, 10.0, -1.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(NetworkConfig(2, 4, 10.0, 10.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NetworkConfig(2, 4, std::numeric_limits<double>::infinity(), 10.0, 3.0),
                    std::invalid_argument);
    const NetworkConfig c(2, 4, 10.0, 10.0, 3.0);
    const NetworkConfig d = c.with_powers(100.0, 50.0);
    CHECK(d.user_power() == 100.0);
    CHECK(d.relay_power() == 50.0);
    CHECK(d.num_relays() == 4);
    CHECK(d.snr_threshold() == 3.0);
}

TEST_CASE("end_to_end_snr") {
    CHECK(end_to_end_snr({0.0, 0.0}, {1.0, 1.0}, 5.0, 7.0) == 0.0);
    CHECK(end_to_end_snr({1.0, 0.0}, {0.0, 1.0}, 1.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // Symmetric in (P |f|^2, Q |g|^2).
    const std::complex<double> f{0.3, -1.2};
    const std::complex<double> g{0.9, 0.4};
    const double a = end_to_end_snr(f, g, 4.0, 9.0);
    const double scale = std::sqrt((4.0 * std::norm(f)) / (9.0 * std::norm(g)));
    CHECK(end_to_end_snr(g * scale, f / scale, 9.0, 4.0) == doctest::Approx(a).epsilon(1e-14));
    CHECK(a == doctest::Approx(36.0 * std::norm(f) * std::norm(g) / (4.0 * std::norm(f) + 9.0 * std::norm(g) + 1.0))
                   .epsilon(1e-15));
}

TEST_CASE("draws are deterministic and have the right shapes") {
    const NetworkConfig cfg(2, 4, 10.0, 10.0, 3.0);
    RandomStream s1(9, 1);
    RandomStream s2(9, 1);
    const auto a = draw_channels(cfg, s1);
    const auto b = draw_channels(cfg, s2);
    CHECK(a.f == b.f);
    CHECK(a.g == b.g);
    CHECK(a.f.rows() == 2);
    CHECK(a.f.cols() == 4);
    CHECK(a.g.rows() == 4);
    CHECK(a.g.cols() == 2);
}

TEST_CASE("channel power gains have unit mean") {
    const NetworkConfig cfg(1, 1, 1.0, 1.0, 1.0);
    double sum = 0.0;
    constexpr int n = 100000;
    for (int t = 0; t < n; ++t) {
        RandomStream s(77, static_cast<std::uint64_t>(t));
        sum += std::norm(draw_channels(cfg, s).f(0, 0));
    }
    CHECK(sum / n > 0.98);
    CHECK(sum / n < 1.02);
}

TEST_CASE("SNR matrix construction") {
    const NetworkConfig cfg(2, 3, 4.0, 6.0, 1.0);
    RandomStream s(1, 2);
    const auto ch = draw_channels(cfg, s);
    const SnrMatrix gamma = build_snr_matrix(ch, cfg);
    REQUIRE(gamma.num_users() == 2);
    REQUIRE(gamma.num_relays() == 3);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 3; ++j) {
            CHECK(gamma(i, j) == end_to_end_snr(ch.f(i, j), ch.g(j, i), 4.0, 6.0));
            CHECK(gamma(i, j) <= 4.0 * std::norm(ch.f(i, j)));
            CHECK(gamma(i, j) <= 6.0 * std::norm(ch.g(j, i)));
        }
    }

    ChannelRealization zero{Matrix<std::complex<double>>(2, 3), Matrix<std::complex<double>>(3, 2)};
    const SnrMatrix zero_snr = build_snr_matrix(zero, cfg);
    for (double v : zero_snr.values().values()) {
        CHECK(v == 0.0);
    }
    ChannelRealization wrong{Matrix<std::complex<double>>(2, 3), Matrix<std::complex<double>>(2, 3)};
    CHECK_THROWS_AS(build_snr_matrix(wrong, cfg), std::invalid_argument);
}

TEST_CASE("gain-only draw agrees with the full channel draw") {
    const NetworkConfig cfg(3, 5, 20.0, 7.0, 1.0);
    for (std::uint64_t t = 0; t < 200; ++t) {
        RandomStream a(4, t);
        RandomStream b(4, t);
        const SnrMatrix full = build_snr_matrix(draw_channels(cfg, a), cfg);
        const SnrMatrix fast = draw_snr_matrix(cfg, b);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 5; ++j) {
                CHECK(fast(i, j) == doctest::Approx(full(i, j)).epsilon(1e-12));
            }
        }
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("SnrMatrix rejects negative and non-finite entries") {
    CHECK_THROWS_AS((SnrMatrix{{1.0, -0.5}}), std::invalid_argument);
    CHECK_THROWS_AS((SnrMatrix{{1.0, std::numeric_limits<double>::quiet_NaN()}}), std::invalid_argument);
    CHECK_THROWS_AS((SnrMatrix{{1.0, 2.0}, {3.0}}), std::invalid_argument);
}

TEST_CASE("empirical SNR distribution matches the closed-form CDF") {
    // 10^5 draws of a 2x5 matrix give 10^6 independent entries.
    const NetworkConfig cfg(2, 5, 10.0, 10.0, 1.0);
    std::vector<double> samples;
    samples.reserve(1000000);
    for (std::uint64_t t = 0; t < 100000; ++t) {
        RandomStream s(123, t);
        const SnrMatrix g = build_snr_matrix(draw_channels(cfg, s), cfg);
        samples.insert(samples.end(), g.values().values().begin(), g.values().values().end());
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf_snr_exact(samples[i], 10.0, 10.0);
        ks = std::max({ks, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(i + 1) / n)});
    }
    CHECK(ks < 0.005);
}

}  // TEST_SUITE
