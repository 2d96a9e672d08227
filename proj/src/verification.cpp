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

#include "relaysel/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "relaysel/montecarlo.hpp"

namespace relaysel {

namespace {

constexpr int kMaxEnumeratedEntries = 10;
constexpr double kTableTolerance = 1e-12;

std::string dims(int n, int nr) {
    return "N=" + std::to_string(n) + " Nr=" + std::to_string(nr);
}

SnrMatrix random_matrix(int n, int nr, std::uint64_t seed, std::uint64_t index) {
    const double p = db_to_linear(10.0);
    const NetworkConfig cfg(n, nr, p, p, 1.0);
    RandomStream stream(seed, index);
    return build_snr_matrix(draw_channels(cfg, stream), cfg);
}

double max_table_gap(const RankProbabilityTable& a, const RankProbabilityTable& b) {
    double gap = 0.0;
    for (const auto& [k, p] : a.probs) {
        const auto it = b.probs.find(k);
        gap = std::max(gap, std::abs(p - (it == b.probs.end() ? 0.0 : it->second)));
    }
    for (const auto& [k, p] : b.probs) {
        if (!a.probs.contains(k)) {
            gap = std::max(gap, std::abs(p));
        }
    }
    return gap;
}

std::string format_value(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void check_oracle(const VerifyOptions& opt, std::vector<VerificationCheck>& out) {
    for (int n = 1; n <= opt.max_users; ++n) {
        for (int nr = n; nr <= opt.max_relays; ++nr) {
            std::uint64_t mismatches = 0;
            std::uint64_t dominance_failures = 0;
            for (std::uint64_t m = 0; m < opt.matrices; ++m) {
                const SnrMatrix gamma = random_matrix(n, nr, opt.seed, m);
                const auto ors = select_ors(gamma);
                const auto oracle = brute_force_lex_optimal(gamma);
                if (ors.assignment != oracle.assignment || ors.sorted_snrs != oracle.sorted_snrs) {
                    ++mismatches;
                }
                RandomStream rs(opt.seed, m, 7);
                for (const auto& other : {select_srs(gamma), select_naive(gamma), select_random(gamma, rs)}) {
                    if (lex_greater(other.sorted_snrs, ors.sorted_snrs) || other.min_snr > ors.min_snr) {
                        ++dominance_failures;
                    }
                }
            }
            out.push_back({"ors_equals_brute_force " + dims(n, nr), mismatches == 0, false,
                           std::to_string(mismatches) + " mismatches in " + std::to_string(opt.matrices) + " matrices"});
            out.push_back({"ors_dominates_srs_naive_random " + dims(n, nr), dominance_failures == 0, false,
                           std::to_string(dominance_failures) + " violations"});
        }
    }
}

void check_rank_tables(const VerifyOptions& opt, std::vector<VerificationCheck>& out) {
    for (int nr = 2; nr <= std::min(opt.max_relays, kMaxEnumeratedEntries / 2 - 1); ++nr) {
        for (Scheme s : {Scheme::ors, Scheme::srs}) {
            const auto closed = rank_probs_two_user(s, nr);
            const auto exact = enumerate_rank_probabilities(s, 2, nr);
            const double gap = max_table_gap(closed, exact);
            out.push_back({"rank_table_" + std::string(scheme_name(s)) + " " + dims(2, nr), gap <= kTableTolerance,
                           false, "max |closed form - enumeration| = " + format_value(gap)});
        }
    }
    double worst = 0.0;
    for (int nr = 2; nr <= 12; ++nr) {
        for (Scheme s : {Scheme::ors, Scheme::srs}) {
            worst = std::max(worst, std::abs(rank_probs_two_user(s, nr).total() - 1.0));
        }
    }
    out.push_back({"rank_tables_sum_to_one Nr=2..12", worst <= kTableTolerance, false,
                   "max |sum - 1| = " + format_value(worst)});
}

void check_lowest_block(std::vector<VerificationCheck>& out) {
    for (auto [n, nr] : {std::pair{2, 2}, {2, 3}, {2, 4}, {3, 3}}) {
        const auto exact = enumerate_rank_probabilities(Scheme::ors, n, nr);
        const int k = (n - 1) * nr + 1;
        const double enumerated = exact.probs.contains(k) ? exact.probs.at(k) : 0.0;
        const double closed = prob_min_lowest_block(n, nr);
        const bool match = std::abs(enumerated - closed) <= kTableTolerance;
        VerificationCheck c{"lowest_block_probability " + dims(n, nr), match, false,
                            "closed form " + format_value(closed) + ", enumerated Prob(min = rank " +
                                std::to_string(k) + ") " + format_value(enumerated)};
        if (!match && nr == n) {
            // With Nr = N a column made of the Nr smallest entries blocks the
            // same rank, an event the row-only count leaves out.
            c.informational = true;
            c.detail += " (Nr = N: a column of the smallest entries also forces this rank)";
        }
        out.push_back(std::move(c));
    }
}

void check_expanded_forms(std::vector<VerificationCheck>& out) {
    const double g = db_to_linear(5.0);
    double ors_gap = 0.0;
    double srs_printed_gap = 0.0;
    double srs_corrected_gap = 0.0;
    for (int nr = 2; nr <= 6; ++nr) {
        for (double p_db = 0.0; p_db <= 40.0; p_db += 5.0) {
            const double p = db_to_linear(p_db);
            const double ors = outage_upper_ors_two_user(g, p, p, nr);
            const double srs = outage_upper_srs_two_user(g, p, p, nr);
            ors_gap = std::max(ors_gap, std::abs(outage_upper_ors_two_user_expanded(g, p, p, nr) - ors) / ors);
            srs_printed_gap = std::max(
                srs_printed_gap,
                std::abs(outage_upper_srs_two_user_expanded(g, p, p, nr, ExpandedForm::as_printed) - srs) / srs);
            srs_corrected_gap = std::max(
                srs_corrected_gap,
                std::abs(outage_upper_srs_two_user_expanded(g, p, p, nr, ExpandedForm::corrected) - srs) / srs);
        }
    }
    constexpr double kRel = 1e-9;
    out.push_back({"ors_expanded_equals_mixture", ors_gap <= kRel, false,
                   "max relative gap " + format_value(ors_gap)});
    out.push_back({"srs_expanded_as_printed_equals_mixture", srs_printed_gap <= kRel, srs_printed_gap > kRel,
                   "max relative gap " + format_value(srs_printed_gap) +
                       (srs_printed_gap > kRel ? " (first bracket carries the rank-3 coefficient)" : "")});
    out.push_back({"srs_expanded_corrected_equals_mixture", srs_corrected_gap <= kRel, false,
                   "max relative gap " + format_value(srs_corrected_gap)});
}

void check_operation_counts(const VerifyOptions& opt, std::vector<VerificationCheck>& out) {
    std::uint64_t srs_bad = 0;
    std::uint64_t naive_bad = 0;
    std::uint64_t cases = 0;
    for (int nr = 1; nr <= 12; ++nr) {
        for (int n = 1; n <= nr; ++n) {
            std::uint64_t sum = 0;
            for (int k = 1; k <= n; ++k) {
                sum += static_cast<std::uint64_t>((nr - k) * (n - k + 1) + (n - k));
            }
            const SnrMatrix gamma = random_matrix(n, nr, opt.seed, 1000000 + static_cast<std::uint64_t>(cases));
            if (select_srs(gamma).op_count != srs_complexity(n, nr) || sum != srs_complexity(n, nr)) {
                ++srs_bad;
            }
            if (select_naive(gamma).op_count != naive_complexity(n, nr)) {
                ++naive_bad;
            }
            ++cases;
        }
    }
    out.push_back({"srs_comparison_count 1<=N<=Nr<=12", srs_bad == 0, false,
                   std::to_string(srs_bad) + " of " + std::to_string(cases) + " sizes differ"});
    out.push_back({"naive_comparison_count 1<=N<=Nr<=12", naive_bad == 0, false,
                   std::to_string(naive_bad) + " of " + std::to_string(cases) + " sizes differ"});
}

}  // namespace

RankProbabilityTable enumerate_rank_probabilities(Scheme scheme, int num_users, int num_relays) {
    if (scheme == Scheme::random) {
        throw std::invalid_argument("enumerate_rank_probabilities: random selection depends on more than ranks");
    }
    if (num_users < 1 || num_relays < num_users) {
        throw std::invalid_argument("enumerate_rank_probabilities: need 1 <= users <= relays");
    }
    const int m = num_users * num_relays;
    if (m > kMaxEnumeratedEntries) {
        throw std::length_error("enumerate_rank_probabilities: at most 10 matrix entries");
    }
    // Entry value m - rank + 1, so rank 1 is the largest.
    std::vector<int> values(static_cast<std::size_t>(m));
    std::iota(values.begin(), values.end(), 1);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(m) + 1, 0);
    std::uint64_t total = 0;
    RandomStream unused(0, 0);
    Matrix<double> cells(static_cast<std::size_t>(num_users), static_cast<std::size_t>(num_relays));
    do {
        std::copy(values.begin(), values.end(), cells.values().begin());
        const auto out = select(scheme, SnrMatrix(cells), unused);
        ++counts[static_cast<std::size_t>(m - static_cast<int>(out.min_snr) + 1)];
        ++total;
    } while (std::next_permutation(values.begin(), values.end()));

    RankProbabilityTable table;
    table.scheme = scheme;
    table.num_users = num_users;
    table.num_relays = num_relays;
    for (int k = 1; k <= m; ++k) {
        if (counts[static_cast<std::size_t>(k)] > 0) {
            table.probs[k] = static_cast<double>(counts[static_cast<std::size_t>(k)]) / static_cast<double>(total);
        }
    }
    return table;
}

std::vector<VerificationCheck> run_verification(const VerifyOptions& options) {
    if (options.max_users < 1 || options.max_relays < options.max_users || options.matrices < 1) {
        throw std::invalid_argument("run_verification: need 1 <= max_users <= max_relays and matrices >= 1");
    }
    std::vector<VerificationCheck> out;
    check_oracle(options, out);
    check_rank_tables(options, out);
    check_lowest_block(out);
    check_expanded_forms(out);
    check_operation_counts(options, out);
    return out;
}

bool verification_passed(const std::vector<VerificationCheck>& checks) noexcept {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerificationCheck& c) { return c.passed || c.informational; });
}

}  // namespace relaysel
