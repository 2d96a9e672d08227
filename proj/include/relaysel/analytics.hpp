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

#include <map>
#include <optional>
#include <vector>

#include "relaysel/channel_model.hpp"
#include "relaysel/selection.hpp"

namespace relaysel {

// Distribution of one AF end-to-end SNR over i.i.d. Rayleigh hops.

/// F(x) = 1 - u e^{-(1/P + 1/Q) x} K1(u), u = 2 sqrt(x (x + 1) / (P Q)).
/// Throws std::domain_error for negative or NaN x, or nonpositive powers.
double cdf_snr_exact(double x, double user_power, double relay_power);

/// 1 - F(x), computed directly.
double ccdf_snr_exact(double x, double user_power, double relay_power);

/// High-power form 1 - e^{-(1/P + 1/Q) x}.
double cdf_snr_approx(double x, double user_power, double relay_power);

/// dF/dx by central differences with step max(1e-6, 1e-6 x); second-order
/// one-sided differences when x is closer to zero than the step.
double pdf_snr(double x, double user_power, double relay_power);

// Order statistics of the N Nr i.i.d. entries of the SNR matrix. Rank k
// counts from the top: k = 1 is the largest entry. Out-of-range ranks throw
// std::invalid_argument.

double order_stat_pdf(int rank, double x, int num_users, int num_relays, double user_power,
                      double relay_power);

/// Alternating binomial sum evaluated in log space, terms accumulated largest
/// magnitude first with compensated summation.
double order_stat_cdf(int rank, double x, int num_users, int num_relays, double user_power,
                      double relay_power);

/// Same sum, starting from a precomputed F(x).
double order_stat_cdf_from_snr_cdf(int rank, int num_entries, double snr_cdf);

/// Prob(min SNR = k-th largest entry of the matrix), k -> probability.
struct RankProbabilityTable {
    Scheme scheme = Scheme::ors;
    int num_users = 2;
    int num_relays = 2;
    std::map<int, double> probs;

    double total() const;
};

/// Two-user rank tables. ORS support is k = 2..Nr+1, SRS k = 2..Nr+2.
/// Throws std::domain_error for Nr < 2, std::invalid_argument for naive/random.
RankProbabilityTable rank_probs_two_user(Scheme scheme, int num_relays);

/// Two-user min-SNR outage as the mixture sum_k Prob(k) F_{gamma_k}(threshold).
double outage_upper_ors_two_user(double threshold, double user_power, double relay_power,
                                 int num_relays);
double outage_upper_srs_two_user(double threshold, double user_power, double relay_power,
                                 int num_relays);

/// Naive min-SNR outage 1 - prod_k (1 - F^{Nr-k+1}), any N <= Nr.
double outage_upper_naive(double threshold, double user_power, double relay_power, int num_users,
                          int num_relays);

/// Outage of naive-scheme user `user` (0-based): F^{Nr - user}.
double outage_naive_user(double threshold, double user_power, double relay_power, int user,
                         int num_relays);

/// Single user picking the best of Nr relays: F^{Nr}.
double outage_single_user(double threshold, double user_power, double relay_power, int num_relays);

/// Exact min-SNR outage bound where a closed form exists: naive for any N,
/// ORS/SRS for N <= 2. nullopt otherwise (random, ORS/SRS with N > 2).
std::optional<double> outage_upper_bound(Scheme scheme, const NetworkConfig& config);

/// Leading high-power term with Q = P.
///   ORS, N = 2: 2^{Nr+1} g^{Nr} P^{-Nr}, or 2^{Nr+2} g^{Nr} P^{-Nr} when Nr = 2
///   ORS, other N: N (2 g)^{Nr} P^{-Nr}, doubled when Nr = N >= 2
///   SRS, N = 2: 2^{Nr} g^{Nr-1} P^{-(Nr-1)} / (Nr + 1)
///   naive:      (2 g)^{Nr-N+1} P^{-(Nr-N+1)}
/// Throws UnsupportedError for SRS with N > 2 and for random selection.
double outage_asymptotic(Scheme scheme, int num_users, int num_relays, double threshold,
                         double power);

/// (Nr - 1)! / prod_{l=1}^{Nr-1} (N Nr - l): probability that the Nr smallest
/// entries all sit in one row.
double prob_min_lowest_block(int num_users, int num_relays);

/// Min-SNR diversity order: ORS Nr, SRS and naive Nr - N + 1, random 1.
int diversity_order(Scheme scheme, int num_users, int num_relays);

/// Diversity order of naive-scheme user `user` (0-based): Nr - user.
int naive_user_diversity_order(int user, int num_relays);

struct ArrayGainRatios {
    double ors_vs_single;   ///< limit of ORS bound / single-user outage (linear)
    double naive_vs_srs_db; ///< limit of naive bound / SRS bound, in dB
};

ArrayGainRatios array_gain_ratios(int num_relays);

/// Polynomial rewrite of the ORS two-user bound. Must equal the mixture form.
double outage_upper_ors_two_user_expanded(double threshold, double user_power, double relay_power,
                                          int num_relays);

enum class ExpandedForm { as_printed, corrected };

/// Polynomial rewrite of the SRS two-user bound. The published version scales
/// its first bracket by the rank-3 coefficient; `corrected` uses the rank-2
/// coefficient (Nr - 1)(2Nr)! / ((2Nr - 1)(2Nr - 2)!) instead.
double outage_upper_srs_two_user_expanded(double threshold, double user_power, double relay_power,
                                          int num_relays, ExpandedForm form);

/// Analytical trace over a power grid (linear scale).
struct AnalyticalCurve {
    std::vector<double> power_grid;
    std::vector<double> values;
};

}  // namespace relaysel
