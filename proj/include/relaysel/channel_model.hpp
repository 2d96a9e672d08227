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

#pragma once

#include <complex>
#include <initializer_list>

#include "relaysel/matrix.hpp"
#include "relaysel/random_stream.hpp"

namespace relaysel {

/// Network dimensions, linear-scale powers and the outage threshold.
/// Validated on construction: 1 <= users <= relays, powers and threshold
/// positive and finite. Throws std::invalid_argument otherwise.
class NetworkConfig {
public:
    NetworkConfig(int num_users, int num_relays, double user_power, double relay_power,
                  double snr_threshold);

    int num_users() const noexcept { return num_users_; }
    int num_relays() const noexcept { return num_relays_; }
    double user_power() const noexcept { return user_power_; }
    double relay_power() const noexcept { return relay_power_; }
    double snr_threshold() const noexcept { return snr_threshold_; }

    NetworkConfig with_powers(double user_power, double relay_power) const;

    bool operator==(const NetworkConfig&) const = default;

private:
    int num_users_;
    int num_relays_;
    double user_power_;
    double relay_power_;
    double snr_threshold_;
};

/// One fading draw. f is users x relays (f_ij, user i to relay j); g is
/// relays x users (g_ji, relay j to destination i).
struct ChannelRealization {
    Matrix<std::complex<double>> f;
    Matrix<std::complex<double>> g;
};

/// users x relays matrix of end-to-end SNRs; entry (i, j) is the SNR of user
/// i when relayed by j. Entries are finite and nonnegative.
class SnrMatrix {
public:
    SnrMatrix() = default;
    explicit SnrMatrix(Matrix<double> values);
    SnrMatrix(std::initializer_list<std::initializer_list<double>> rows);

    int num_users() const noexcept { return static_cast<int>(values_.rows()); }
    int num_relays() const noexcept { return static_cast<int>(values_.cols()); }
    double operator()(int user, int relay) const noexcept { return values_(user, relay); }
    std::span<const double> row(int user) const noexcept { return values_.row(user); }
    const Matrix<double>& values() const noexcept { return values_; }

private:
    Matrix<double> values_;
};

/// Draws i.i.d. CN(0,1) coefficients: all of f row-major, then all of g
/// row-major, two uniforms per coefficient.
ChannelRealization draw_channels(const NetworkConfig& config, RandomStream& stream);

/// AF end-to-end SNR P Q |f g|^2 / (P |f|^2 + Q |g|^2 + 1).
double end_to_end_snr(std::complex<double> f, std::complex<double> g, double user_power,
                      double relay_power) noexcept;

/// Throws std::invalid_argument if the realization does not match config.
SnrMatrix build_snr_matrix(const ChannelRealization& realization, const NetworkConfig& config);

/// Same as build_snr_matrix(draw_channels(config, stream), config) up to
/// rounding, drawing only the channel power gains. Consumes the stream the
/// same way, so both leave it in the same state.
SnrMatrix draw_snr_matrix(const NetworkConfig& config, RandomStream& stream);

}  // namespace relaysel
