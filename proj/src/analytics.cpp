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

#include "relaysel/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "relaysel/errors.hpp"
#include "relaysel/special_math.hpp"

namespace relaysel {

namespace {

void require_powers(double p, double q) {
    if (!(std::isfinite(p) && p > 0.0 && std::isfinite(q) && q > 0.0)) {
        throw std::domain_error("powers must be positive and finite");
    }
}

void require_argument(double x) {
    if (std::isnan(x) || x < 0.0) {
        throw std::domain_error("SNR argument must be nonnegative");
    }
}

void require_rank(int rank, int num_entries) {
    if (rank < 1 || rank > num_entries) {
        throw std::invalid_argument("order statistic rank out of range");
    }
}

int entry_count(int num_users, int num_relays) {
    if (num_users < 1 || num_relays < num_users) {
        throw std::invalid_argument("need 1 <= users <= relays");
    }
    return num_users * num_relays;
}

void require_two_user_relays(int num_relays) {
    if (num_relays < 2) {
        throw std::domain_error("two-user analysis needs at least two relays");
    }
}

// u e^{-a} K1(u) pieces of the SNR CDF.
struct CdfPieces {
    double a;  // (1/P + 1/Q) x
    double u;  // 2 sqrt(x (x + 1) / (P Q))
};

CdfPieces cdf_pieces(double x, double p, double q) {
    return {(1.0 / p + 1.0 / q) * x, 2.0 * std::sqrt(x * (x + 1.0) / (p * q))};
}

// Neumaier compensated sum, largest magnitude first.
double compensated_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end(), [](double l, double r) { return std::abs(l) > std::abs(r); });
    double sum = 0.0;
    double carry = 0.0;
    for (double t : terms) {
        const double s = sum + t;
        if (std::abs(sum) >= std::abs(t)) {
            carry += (sum - s) + t;
        } else {
            carry += (t - s) + sum;
        }
        sum = s;
    }
    return sum + carry;
}

double binomial_ratio(unsigned n1, unsigned k1, unsigned n2, unsigned k2) {
    return std::exp(log_binomial(n1, k1) - log_binomial(n2, k2));
}

double mixture(const RankProbabilityTable& table, double snr_cdf) {
    const int entries = table.num_users * table.num_relays;
    std::vector<double> terms;
    for (auto [rank, prob] : table.probs) {
        terms.push_back(prob * order_stat_cdf_from_snr_cdf(rank, entries, snr_cdf));
    }
    // The weights sum to one only up to rounding.
    return std::clamp(compensated_sum(std::move(terms)), 0.0, 1.0);
}

double ipow(double base, int exponent) { return std::pow(base, exponent); }

}  // namespace

double cdf_snr_exact(double x, double user_power, double relay_power) {
    require_powers(user_power, relay_power);
    require_argument(x);
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    const auto [a, u] = cdf_pieces(x, user_power, relay_power);
    return -std::expm1(-a) + std::exp(-a) * one_minus_x_bessel_k1(u);
}

double ccdf_snr_exact(double x, double user_power, double relay_power) {
    require_powers(user_power, relay_power);
    require_argument(x);
    if (x == 0.0) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    const auto [a, u] = cdf_pieces(x, user_power, relay_power);
    if (u > 1e3) {
        return 0.0;
    }
    return u * std::exp(-a) * bessel_k1(u);
}

double cdf_snr_approx(double x, double user_power, double relay_power) {
    require_powers(user_power, relay_power);
    require_argument(x);
    return -std::expm1(-(1.0 / user_power + 1.0 / relay_power) * x);
}

double pdf_snr(double x, double user_power, double relay_power) {
    require_powers(user_power, relay_power);
    require_argument(x);
    const double h = std::max(1e-6, 1e-6 * x);
    auto cdf = [&](double t) { return cdf_snr_exact(t, user_power, relay_power); };
    if (x < h) {
        return (-3.0 * cdf(x) + 4.0 * cdf(x + h) - cdf(x + 2.0 * h)) / (2.0 * h);
    }
    return (cdf(x + h) - cdf(x - h)) / (2.0 * h);
}

double order_stat_pdf(int rank, double x, int num_users, int num_relays, double user_power,
                      double relay_power) {
    const int m = entry_count(num_users, num_relays);
    require_rank(rank, m);
    const double f = pdf_snr(x, user_power, relay_power);
    const double below = cdf_snr_exact(x, user_power, relay_power);
    const double above = ccdf_snr_exact(x, user_power, relay_power);
    const auto um = static_cast<unsigned>(m);
    const auto uk = static_cast<unsigned>(rank);
    const double log_coeff = log_factorial(um) - log_factorial(um - uk) - log_factorial(uk - 1);
    return std::exp(log_coeff) * ipow(below, m - rank) * ipow(above, rank - 1) * f;
}

double order_stat_cdf_from_snr_cdf(int rank, int num_entries, double snr_cdf) {
    require_rank(rank, num_entries);
    if (!(snr_cdf >= 0.0 && snr_cdf <= 1.0)) {
        throw std::domain_error("order_stat_cdf: SNR CDF value outside [0, 1]");
    }
    if (snr_cdf == 0.0 || snr_cdf == 1.0) {
        return snr_cdf;
    }
    const auto m = static_cast<unsigned>(num_entries);
    const auto k = static_cast<unsigned>(rank);
    if (snr_cdf > 0.5) {
        // Fewer than k entries above x. All terms are positive, so nothing
        // cancels as the CDF approaches one.
        const double log_f = std::log(snr_cdf);
        const double log_c = std::log1p(-snr_cdf);
        std::vector<double> terms;
        terms.reserve(k);
        for (unsigned j = 0; j < k; ++j) {
            terms.push_back(std::exp(log_binomial(m, j) + j * log_c + (m - j) * log_f));
        }
        return std::min(1.0, compensated_sum(std::move(terms)));
    }
    const double log_f = std::log(snr_cdf);
    const double log_base = log_factorial(m) - log_factorial(m - k) - log_factorial(k - 1);
    std::vector<double> terms;
    terms.reserve(k);
    for (unsigned i = 0; i < k; ++i) {
        const unsigned power = m - k + i + 1;
        const double log_mag = log_base + log_binomial(k - 1, i) + power * log_f - std::log(static_cast<double>(power));
        const double mag = std::exp(log_mag);
        terms.push_back((i % 2 == 0) ? mag : -mag);
    }
    return compensated_sum(std::move(terms));
}

double order_stat_cdf(int rank, double x, int num_users, int num_relays, double user_power,
                      double relay_power) {
    const int m = entry_count(num_users, num_relays);
    require_rank(rank, m);
    return order_stat_cdf_from_snr_cdf(rank, m, cdf_snr_exact(x, user_power, relay_power));
}

double RankProbabilityTable::total() const {
    std::vector<double> terms;
    for (const auto& kv : probs) {
        terms.push_back(kv.second);
    }
    return compensated_sum(std::move(terms));
}

RankProbabilityTable rank_probs_two_user(Scheme scheme, int num_relays) {
    require_two_user_relays(num_relays);
    if (scheme != Scheme::ors && scheme != Scheme::srs) {
        throw std::invalid_argument("rank_probs_two_user: only ORS and SRS have rank tables");
    }
    const double nr = num_relays;
    const auto unr = static_cast<unsigned>(num_relays);
    RankProbabilityTable table;
    table.scheme = scheme;
    table.num_users = 2;
    table.num_relays = num_relays;

    // gamma_1 .. gamma_{k-1} fill one row, gamma_k lands in the other.
    auto one_row_then_other = [&](int k) {
        const auto j = static_cast<unsigned>(k - 1);
        return 2.0 * nr * binomial_ratio(unr, j, 2 * unr, j) / (2.0 * nr - (k - 1));
    };
    // gamma_1, gamma_2 share a column; gamma_2 .. gamma_{k-1} fill gamma_2's row
    // and gamma_k lands in gamma_1's row.
    auto shared_column_then_row = [&](int k) {
        const auto j = static_cast<unsigned>(k - 2);
        return 2.0 * (nr - 1.0) * binomial_ratio(unr, j, 2 * unr, j) /
               ((2.0 * nr - (k - 2)) * (2.0 * nr - (k - 1)));
    };

    table.probs[2] = (nr - 1.0) / (2.0 * nr - 1.0);
    if (scheme == Scheme::ors) {
        table.probs[3] = (nr + 2.0) / (2.0 * (2.0 * nr - 1.0));
        for (int k = 4; k <= num_relays + 1; ++k) {
            table.probs[k] = one_row_then_other(k);
        }
    } else {
        table.probs[3] = (nr + 1.0) / (2.0 * (2.0 * nr - 1.0));
        for (int k = 4; k <= num_relays + 2; ++k) {
            double p = shared_column_then_row(k);
            if (k <= num_relays + 1) {
                p += one_row_then_other(k);
            }
            table.probs[k] = p;
        }
    }
    return table;
}

double outage_upper_ors_two_user(double threshold, double user_power, double relay_power,
                                 int num_relays) {
    const auto table = rank_probs_two_user(Scheme::ors, num_relays);
    return mixture(table, cdf_snr_exact(threshold, user_power, relay_power));
}

double outage_upper_srs_two_user(double threshold, double user_power, double relay_power,
                                 int num_relays) {
    const auto table = rank_probs_two_user(Scheme::srs, num_relays);
    return mixture(table, cdf_snr_exact(threshold, user_power, relay_power));
}

double outage_upper_naive(double threshold, double user_power, double relay_power, int num_users,
                          int num_relays) {
    entry_count(num_users, num_relays);
    const double f = cdf_snr_exact(threshold, user_power, relay_power);
    // 1 - prod(1 - e_k) as -expm1(sum log1p(-e_k)) keeps tiny outages exact.
    double log_survive = 0.0;
    for (int k = 1; k <= num_users; ++k) {
        log_survive += std::log1p(-ipow(f, num_relays - k + 1));
    }
    return -std::expm1(log_survive);
}

double outage_naive_user(double threshold, double user_power, double relay_power, int user,
                         int num_relays) {
    if (user < 0 || user >= num_relays) {
        throw std::invalid_argument("outage_naive_user: user index out of range");
    }
    return ipow(cdf_snr_exact(threshold, user_power, relay_power), num_relays - user);
}

double outage_single_user(double threshold, double user_power, double relay_power, int num_relays) {
    if (num_relays < 1) {
        throw std::invalid_argument("outage_single_user: need at least one relay");
    }
    return ipow(cdf_snr_exact(threshold, user_power, relay_power), num_relays);
}

std::optional<double> outage_upper_bound(Scheme scheme, const NetworkConfig& config) {
    const double g = config.snr_threshold();
    const double p = config.user_power();
    const double q = config.relay_power();
    const int n = config.num_users();
    const int nr = config.num_relays();
    switch (scheme) {
        case Scheme::naive:
            return outage_upper_naive(g, p, q, n, nr);
        case Scheme::ors:
        case Scheme::srs:
            if (n == 1) {
                return outage_single_user(g, p, q, nr);
            }
            if (n == 2) {
                return scheme == Scheme::ors ? outage_upper_ors_two_user(g, p, q, nr)
                                             : outage_upper_srs_two_user(g, p, q, nr);
            }
            return std::nullopt;
        case Scheme::random:
            return std::nullopt;
    }
    return std::nullopt;
}

double outage_asymptotic(Scheme scheme, int num_users, int num_relays, double threshold, double power) {
    entry_count(num_users, num_relays);
    require_powers(power, power);
    const double n = num_users;
    const double g = threshold;
    const double inv_p = 1.0 / power;
    switch (scheme) {
        case Scheme::ors: {
            // Leading events: the Nr smallest entries fill one row (N ways) or,
            // when Nr = N >= 2, one column (N more ways).
            const double ways = (num_relays == num_users && num_users >= 2) ? 2.0 * n : n;
            return ways * ipow(2.0 * g * inv_p, num_relays);
        }
        case Scheme::srs:
            if (num_users == 1) {
                return ipow(2.0 * g * inv_p, num_relays);
            }
            if (num_users == 2) {
                return std::pow(2.0, num_relays) * ipow(g * inv_p, num_relays - 1) / (num_relays + 1.0);
            }
            throw UnsupportedError("outage_asymptotic: no closed-form SRS constant for more than two users");
        case Scheme::naive:
            return ipow(2.0 * g * inv_p, num_relays - num_users + 1);
        case Scheme::random:
            throw UnsupportedError("outage_asymptotic: random selection has no closed form");
    }
    throw std::invalid_argument("outage_asymptotic: unknown scheme");
}

double prob_min_lowest_block(int num_users, int num_relays) {
    const int m = entry_count(num_users, num_relays);
    double log_p = log_factorial(static_cast<unsigned>(num_relays - 1));
    for (int l = 1; l <= num_relays - 1; ++l) {
        log_p -= std::log(static_cast<double>(m - l));
    }
    return std::exp(log_p);
}

int diversity_order(Scheme scheme, int num_users, int num_relays) {
    entry_count(num_users, num_relays);
    switch (scheme) {
        case Scheme::ors: return num_relays;
        case Scheme::srs:
        case Scheme::naive: return num_relays - num_users + 1;
        case Scheme::random: return 1;
    }
    throw std::invalid_argument("diversity_order: unknown scheme");
}

int naive_user_diversity_order(int user, int num_relays) {
    if (user < 0 || user >= num_relays) {
        throw std::invalid_argument("naive_user_diversity_order: user index out of range");
    }
    return num_relays - user;
}

ArrayGainRatios array_gain_ratios(int num_relays) {
    require_two_user_relays(num_relays);
    return {num_relays == 2 ? 4.0 : 2.0, 10.0 * std::log10((num_relays + 1.0) / 2.0)};
}

double outage_upper_ors_two_user_expanded(double threshold, double user_power, double relay_power,
                                          int num_relays) {
    require_two_user_relays(num_relays);
    const double f = cdf_snr_exact(threshold, user_power, relay_power);
    const int nr = num_relays;
    const auto m = static_cast<unsigned>(2 * nr);
    const double lf_m = log_factorial(m);

    const double c2 = (nr - 1.0) * std::exp(lf_m - log_factorial(m - 2)) / (2.0 * nr - 1.0);
    double s2 = 0.0;
    for (int i = 0; i <= 1; ++i) {
        s2 += std::exp(log_binomial(1, i)) * ((i % 2) ? -1.0 : 1.0) * ipow(f, nr + i - 1) / (2.0 * nr + i - 1);
    }
    const double c3 = (nr + 2.0) * std::exp(lf_m - log_factorial(m - 3)) / (4.0 * (2.0 * nr - 1.0));
    double s3 = 0.0;
    for (int i = 0; i <= 2; ++i) {
        s3 += std::exp(log_binomial(2, i)) * ((i % 2) ? -1.0 : 1.0) * ipow(f, nr + i - 2) / (2.0 * nr + i - 2);
    }
    double tail = 0.0;
    for (int j = 4; j <= nr + 1; ++j) {
        const auto uj = static_cast<unsigned>(j);
        for (int i = 0; i <= j - 1; ++i) {
            const double log_mag = std::log(2.0 * nr) + lf_m + log_binomial(nr, uj - 1) +
                                   log_binomial(uj - 1, i) - log_factorial(m - uj) -
                                   log_factorial(uj - 1) - log_binomial(m, uj - 1);
            tail += ((i % 2) ? -1.0 : 1.0) * std::exp(log_mag) * ipow(f, nr - j + i + 1) /
                    ((2.0 * nr - j + 1) * (2.0 * nr - j + i + 1));
        }
    }
    return ipow(f, nr) * (c2 * s2 + c3 * s3 + tail);
}

double outage_upper_srs_two_user_expanded(double threshold, double user_power, double relay_power,
                                          int num_relays, ExpandedForm form) {
    require_two_user_relays(num_relays);
    const double f = cdf_snr_exact(threshold, user_power, relay_power);
    const int nr = num_relays;
    const auto m = static_cast<unsigned>(2 * nr);
    const double lf_m = log_factorial(m);

    const double c3 = (nr + 1.0) * std::exp(lf_m - log_factorial(m - 3)) / (4.0 * (2.0 * nr - 1.0));
    const double c2 = form == ExpandedForm::as_printed
                          ? c3
                          : (nr - 1.0) * std::exp(lf_m - log_factorial(m - 2)) / (2.0 * nr - 1.0);
    double s2 = 0.0;
    for (int i = 0; i <= 1; ++i) {
        s2 += ((i % 2) ? -1.0 : 1.0) * ipow(f, nr + i) / (2.0 * nr + i - 1);
    }
    double s3 = 0.0;
    for (int i = 0; i <= 2; ++i) {
        s3 += std::exp(log_binomial(2, i)) * ((i % 2) ? -1.0 : 1.0) * ipow(f, nr + i - 1) / (2.0 * nr + i - 2);
    }
    double tail = 0.0;
    for (int i = 4; i <= nr + 1; ++i) {
        const auto ui = static_cast<unsigned>(i);
        for (int j = 0; j <= i - 1; ++j) {
            const double log_mag = std::log(2.0 * nr) + lf_m + log_binomial(nr, ui - 1) +
                                   log_binomial(ui - 1, j) - log_factorial(m - ui) -
                                   log_factorial(ui - 1) - log_binomial(m, ui - 1);
            tail += ((j % 2) ? -1.0 : 1.0) * std::exp(log_mag) * ipow(f, nr - i + j + 2) /
                    ((2.0 * nr - i + 1) * (2.0 * nr - i + j + 1));
        }
    }
    for (int i = 4; i <= nr + 2; ++i) {
        const auto ui = static_cast<unsigned>(i);
        for (int j = 0; j <= i - 1; ++j) {
            const double log_mag = std::log(2.0 * (nr - 1.0)) + lf_m + log_binomial(nr, ui - 2) +
                                   log_binomial(ui - 1, j) - log_factorial(m - ui) -
                                   log_factorial(ui - 1) - log_binomial(m, ui - 2);
            tail += ((j % 2) ? -1.0 : 1.0) * std::exp(log_mag) * ipow(f, nr - i + j + 2) /
                    ((2.0 * nr - i + 1) * (2.0 * nr - i + 2) * (2.0 * nr - i + j + 1));
        }
    }
    return ipow(f, nr - 1) * (c2 * s2 + c3 * s3 + tail);
}

}  // namespace relaysel
