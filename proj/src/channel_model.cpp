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

#include "relaysel/channel_model.hpp"

#include <cmath>
#include <stdexcept>

namespace relaysel {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

NetworkConfig::NetworkConfig(int num_users, int num_relays, double user_power, double relay_power,
                             double snr_threshold)
    : num_users_(num_users),
      num_relays_(num_relays),
      user_power_(user_power),
      relay_power_(relay_power),
      snr_threshold_(snr_threshold) {
    if (num_users < 1) {
        throw std::invalid_argument("NetworkConfig: need at least one user");
    }
    if (num_relays < num_users) {
        throw std::invalid_argument("NetworkConfig: number of relays must be at least the number of users");
    }
    if (!positive_finite(user_power) || !positive_finite(relay_power)) {
        throw std::invalid_argument("NetworkConfig: powers must be positive and finite");
    }
    if (!positive_finite(snr_threshold)) {
        throw std::invalid_argument("NetworkConfig: SNR threshold must be positive and finite");
    }
}

NetworkConfig NetworkConfig::with_powers(double user_power, double relay_power) const {
    return {num_users_, num_relays_, user_power, relay_power, snr_threshold_};
}

SnrMatrix::SnrMatrix(Matrix<double> values) : values_(std::move(values)) {
    for (double v : values_.values()) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("SnrMatrix: entries must be finite and nonnegative");
        }
    }
}

SnrMatrix::SnrMatrix(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    Matrix<double> m(rows.size(), cols);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != cols) {
            throw std::invalid_argument("SnrMatrix: ragged rows");
        }
        std::size_t c = 0;
        for (double v : row) {
            m(r, c++) = v;
        }
        ++r;
    }
    *this = SnrMatrix(std::move(m));
}

ChannelRealization draw_channels(const NetworkConfig& config, RandomStream& stream) {
    const auto users = static_cast<std::size_t>(config.num_users());
    const auto relays = static_cast<std::size_t>(config.num_relays());
    ChannelRealization ch{Matrix<std::complex<double>>(users, relays),
                          Matrix<std::complex<double>>(relays, users)};
    for (auto& h : ch.f.values()) {
        h = stream.next_complex_gaussian();
    }
    for (auto& h : ch.g.values()) {
        h = stream.next_complex_gaussian();
    }
    return ch;
}

double end_to_end_snr(std::complex<double> f, std::complex<double> g, double user_power,
                      double relay_power) noexcept {
    const double first_hop = user_power * std::norm(f);
    const double second_hop = relay_power * std::norm(g);
    return first_hop * second_hop / (first_hop + second_hop + 1.0);
}

SnrMatrix build_snr_matrix(const ChannelRealization& realization, const NetworkConfig& config) {
    const auto users = static_cast<std::size_t>(config.num_users());
    const auto relays = static_cast<std::size_t>(config.num_relays());
    if (realization.f.rows() != users || realization.f.cols() != relays ||
        realization.g.rows() != relays || realization.g.cols() != users) {
        throw std::invalid_argument("build_snr_matrix: channel dimensions do not match the configuration");
    }
    Matrix<double> gamma(users, relays);
    for (std::size_t i = 0; i < users; ++i) {
        for (std::size_t j = 0; j < relays; ++j) {
            gamma(i, j) = end_to_end_snr(realization.f(i, j), realization.g(j, i), config.user_power(),
                                         config.relay_power());
        }
    }
    return SnrMatrix(std::move(gamma));
}

SnrMatrix draw_snr_matrix(const NetworkConfig& config, RandomStream& stream) {
    const auto users = static_cast<std::size_t>(config.num_users());
    const auto relays = static_cast<std::size_t>(config.num_relays());
    // |h|^2 of a CN(0,1) draw is -ln(u1); u2 only sets the phase.
    auto gain = [&stream] {
        const double u1 = stream.next_uniform();
        static_cast<void>(stream.next_uniform());
        return -std::log(u1);
    };
    Matrix<double> first_hop(users, relays);
    for (double& v : first_hop.values()) {
        v = config.user_power() * gain();
    }
    Matrix<double> gamma(users, relays);
    for (std::size_t j = 0; j < relays; ++j) {
        for (std::size_t i = 0; i < users; ++i) {
            const double a = first_hop(i, j);
            const double b = config.relay_power() * gain();
            gamma(i, j) = a * b / (a + b + 1.0);
        }
    }
    return SnrMatrix(std::move(gamma));
}

}  // namespace relaysel
