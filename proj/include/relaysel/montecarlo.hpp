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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "relaysel/channel_model.hpp"
#include "relaysel/selection.hpp"

namespace relaysel {

double db_to_linear(double db) noexcept;

struct OutageEstimate {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;

    double p_hat() const noexcept;
    double std_err() const noexcept;
    /// Fewer than ten observed outages: the estimate is flagged unreliable.
    bool reliable() const noexcept { return failures >= 10; }
};

using ChannelSampler = std::function<ChannelRealization(const NetworkConfig&, RandomStream&)>;

struct SweepOptions {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    /// Q follows P at every grid point; otherwise Q stays at the config's value.
    bool relay_power_tracks_user = true;
    bool track_ranks = false;
    /// Defaults to draw_channels.
    ChannelSampler sampler;
};

struct ExperimentResult {
    NetworkConfig config;
    Scheme scheme = Scheme::ors;
    std::vector<double> power_grid_db;
    std::vector<std::vector<OutageEstimate>> per_user_outage;  ///< [user][grid point]
    std::vector<OutageEstimate> min_snr_outage;                ///< [grid point]
    /// [grid point][rank - 1], rank of the min SNR among all matrix entries
    /// (1 = largest). Empty unless ranks were tracked.
    std::vector<std::vector<std::uint64_t>> rank_counts;
    std::uint64_t seed = 0;
};

/// Runs `trials` independent channel draws per grid point. Trial t at grid
/// point g uses RandomStream::for_trial(seed, g, t); random selection reads
/// substream 1 of that stream. Workers own disjoint trial ranges and counts
/// are summed, so results do not depend on the worker count.
///
/// An outage is SNR <= threshold. Throws std::invalid_argument on zero
/// trials, an empty or non-ascending grid, or more than 2^32 trials.
ExperimentResult run_outage_sweep(const NetworkConfig& config, Scheme scheme,
                                  std::span<const double> power_grid_db, const SweepOptions& options);

/// Rank frequencies of the min SNR at the config's powers; sums to 1.
std::map<int, double> rank_frequency(const NetworkConfig& config, Scheme scheme, std::uint64_t trials,
                                     std::uint64_t seed, unsigned workers = 1);

/// Negated least-squares slope of log10(outage) against log10(P) over the
/// points with power in `window_db` (inclusive), or over the top third of
/// the grid (at least three points) when no window is given.
///
/// Throws std::invalid_argument with fewer than three points in the window and
/// std::domain_error if any outage value there is not positive.
double estimate_diversity_slope(std::span<const double> power_db, std::span<const double> outage,
                                std::optional<std::pair<double, double>> window_db = std::nullopt);

}  // namespace relaysel
