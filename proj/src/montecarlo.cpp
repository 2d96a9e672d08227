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

#include "relaysel/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace relaysel {

namespace {

constexpr std::uint64_t kMaxIndex = 0xFFFFFFFFULL;
constexpr std::uint32_t kSelectionSubstream = 1;

struct PointCounts {
    std::vector<std::uint64_t> user_failures;
    std::uint64_t min_failures = 0;
    std::vector<std::uint64_t> ranks;
};

void validate_grid(std::span<const double> grid) {
    if (grid.empty()) {
        throw std::invalid_argument("run_outage_sweep: power grid is empty");
    }
    if (grid.size() > kMaxIndex) {
        throw std::invalid_argument("run_outage_sweep: power grid too long");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw std::invalid_argument("run_outage_sweep: power grid must be finite and strictly ascending");
        }
    }
}

void run_trials(const std::vector<NetworkConfig>& configs, Scheme scheme, const SweepOptions& options,
                std::uint64_t first, std::uint64_t last, std::vector<PointCounts>& counts) {
    const auto users = static_cast<std::size_t>(configs.front().num_users());
    for (std::size_t g = 0; g < configs.size(); ++g) {
        const NetworkConfig& cfg = configs[g];
        const double threshold = cfg.snr_threshold();
        PointCounts& pc = counts[g];
        for (std::uint64_t t = first; t < last; ++t) {
            RandomStream stream = RandomStream::for_trial(options.seed, g, t);
            const SnrMatrix gamma = options.sampler ? build_snr_matrix(options.sampler(cfg, stream), cfg)
                                                    : draw_snr_matrix(cfg, stream);
            RandomStream selection_stream = stream.substream(kSelectionSubstream);
            const SelectionOutcome out = select(scheme, gamma, selection_stream);
            for (std::size_t u = 0; u < users; ++u) {
                if (out.user_snrs[u] <= threshold) {
                    ++pc.user_failures[u];
                }
            }
            if (out.min_snr <= threshold) {
                ++pc.min_failures;
            }
            if (options.track_ranks) {
                const auto above = std::count_if(gamma.values().values().begin(), gamma.values().values().end(),
                                                 [&](double v) { return v > out.min_snr; });
                ++pc.ranks[static_cast<std::size_t>(above)];
            }
        }
    }
}

}  // namespace

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

double OutageEstimate::p_hat() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials);
}

double OutageEstimate::std_err() const noexcept {
    if (trials == 0) {
        return 0.0;
    }
    const double p = p_hat();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

ExperimentResult run_outage_sweep(const NetworkConfig& config, Scheme scheme,
                                  std::span<const double> power_grid_db, const SweepOptions& options) {
    if (options.trials < 1) {
        throw std::invalid_argument("run_outage_sweep: need at least one trial");
    }
    if (options.trials > kMaxIndex + 1) {
        throw std::invalid_argument("run_outage_sweep: at most 2^32 trials per grid point");
    }
    validate_grid(power_grid_db);

    std::vector<NetworkConfig> configs;
    configs.reserve(power_grid_db.size());
    for (double p_db : power_grid_db) {
        const double p = db_to_linear(p_db);
        configs.push_back(config.with_powers(p, options.relay_power_tracks_user ? p : config.relay_power()));
    }

    const auto users = static_cast<std::size_t>(config.num_users());
    const auto entries = users * static_cast<std::size_t>(config.num_relays());
    auto fresh_counts = [&] {
        std::vector<PointCounts> c(configs.size());
        for (auto& pc : c) {
            pc.user_failures.assign(users, 0);
            if (options.track_ranks) {
                pc.ranks.assign(entries, 0);
            }
        }
        return c;
    };

    const std::uint64_t workers =
        std::clamp<std::uint64_t>(options.workers == 0 ? 1 : options.workers, 1, options.trials);
    std::vector<std::vector<PointCounts>> partial(workers, fresh_counts());
    std::vector<std::exception_ptr> errors(workers);
    auto job = [&](std::uint64_t w) {
        try {
            const std::uint64_t first = options.trials * w / workers;
            const std::uint64_t last = options.trials * (w + 1) / workers;
            run_trials(configs, scheme, options, first, last, partial[w]);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        job(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            pool.emplace_back(job, w);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    ExperimentResult result{config, scheme, {power_grid_db.begin(), power_grid_db.end()}, {}, {}, {}, options.seed};
    result.per_user_outage.assign(users, std::vector<OutageEstimate>(configs.size()));
    result.min_snr_outage.assign(configs.size(), OutageEstimate{});
    if (options.track_ranks) {
        result.rank_counts.assign(configs.size(), std::vector<std::uint64_t>(entries, 0));
    }
    for (std::size_t g = 0; g < configs.size(); ++g) {
        OutageEstimate& m = result.min_snr_outage[g];
        m.trials = options.trials;
        for (std::size_t u = 0; u < users; ++u) {
            result.per_user_outage[u][g].trials = options.trials;
        }
        for (const auto& part : partial) {
            const PointCounts& pc = part[g];
            m.failures += pc.min_failures;
            for (std::size_t u = 0; u < users; ++u) {
                result.per_user_outage[u][g].failures += pc.user_failures[u];
            }
            for (std::size_t r = 0; r < pc.ranks.size(); ++r) {
                result.rank_counts[g][r] += pc.ranks[r];
            }
        }
    }
    return result;
}

std::map<int, double> rank_frequency(const NetworkConfig& config, Scheme scheme, std::uint64_t trials,
                                     std::uint64_t seed, unsigned workers) {
    SweepOptions options;
    options.trials = trials;
    options.seed = seed;
    options.workers = workers;
    options.relay_power_tracks_user = false;
    options.track_ranks = true;
    const double p_db = 10.0 * std::log10(config.user_power());
    const auto result = run_outage_sweep(config, scheme, std::span<const double>(&p_db, 1), options);
    std::map<int, double> freq;
    const auto& counts = result.rank_counts.front();
    for (std::size_t r = 0; r < counts.size(); ++r) {
        if (counts[r] > 0) {
            freq[static_cast<int>(r) + 1] = static_cast<double>(counts[r]) / static_cast<double>(trials);
        }
    }
    return freq;
}

double estimate_diversity_slope(std::span<const double> power_db, std::span<const double> outage,
                                std::optional<std::pair<double, double>> window_db) {
    if (power_db.size() != outage.size()) {
        throw std::invalid_argument("estimate_diversity_slope: grid and outage lengths differ");
    }
    std::vector<std::size_t> picked;
    if (window_db) {
        constexpr double kTol = 1e-9;
        for (std::size_t i = 0; i < power_db.size(); ++i) {
            if (power_db[i] >= window_db->first - kTol && power_db[i] <= window_db->second + kTol) {
                picked.push_back(i);
            }
        }
    } else {
        const std::size_t n = power_db.size();
        const std::size_t take = std::min(n, std::max<std::size_t>(3, (n + 2) / 3));
        for (std::size_t i = n - take; i < n; ++i) {
            picked.push_back(i);
        }
    }
    if (picked.size() < 3) {
        throw std::invalid_argument("estimate_diversity_slope: need at least three points in the window");
    }
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i : picked) {
        if (!(outage[i] > 0.0)) {
            throw std::domain_error("estimate_diversity_slope: zero outage in the window; too few trials for this power range");
        }
        mean_x += power_db[i] / 10.0;
        mean_y += std::log10(outage[i]);
    }
    mean_x /= static_cast<double>(picked.size());
    mean_y /= static_cast<double>(picked.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i : picked) {
        const double dx = power_db[i] / 10.0 - mean_x;
        sxy += dx * (std::log10(outage[i]) - mean_y);
        sxx += dx * dx;
    }
    return -sxy / sxx;
}

}  // namespace relaysel
