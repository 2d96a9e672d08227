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
#include <optional>
#include <string_view>
#include <vector>

#include "relaysel/channel_model.hpp"
#include "relaysel/random_stream.hpp"

namespace relaysel {

enum class Scheme { ors, srs, naive, random };

std::string_view scheme_name(Scheme scheme) noexcept;
std::optional<Scheme> parse_scheme(std::string_view name) noexcept;

/// relay_of[i] is the relay serving user i. Total and injective.
struct Assignment {
    std::vector<int> relay_of;

    bool is_valid(int num_relays) const;
    bool operator==(const Assignment&) const = default;
};

struct SelectionOutcome {
    Assignment assignment;
    std::vector<double> user_snrs;    ///< user_snrs[i] = gamma(i, relay_of[i])
    double min_snr = 0.0;
    std::vector<double> sorted_snrs;  ///< ascending
    std::uint64_t op_count = 0;       ///< SNR comparisons performed
};

// Every scheme throws std::invalid_argument when the matrix has no users or
// fewer relays than users. Ties between equal SNRs go to the lowest relay
// index, then the lowest user index.

/// Optimal selection: the assignment whose ascending SNR vector is
/// lexicographically largest. Built from repeated max-min bottleneck
/// matchings; among several optimal assignments the one with the
/// lexicographically smallest relay_of is returned.
///
/// Exact ties between SNR values force a search over the tied bottleneck
/// pairs (memoised on the remaining user/relay sets). Continuous fading never
/// produces them; large all-equal matrices are expensive.
SelectionOutcome select_ors(const SnrMatrix& gamma);

/// Suboptimal selection: each round every unassigned user finds its best
/// remaining relay, and the user whose best is smallest takes it.
SelectionOutcome select_srs(const SnrMatrix& gamma);

/// Users pick their best remaining relay in index order.
SelectionOutcome select_naive(const SnrMatrix& gamma);

/// Uniformly random injective assignment drawn from stream; ignores SNRs.
SelectionOutcome select_random(const SnrMatrix& gamma, RandomStream& stream);

/// Exhaustive search over all injective assignments. Same optimum and tie rule
/// as select_ors. Throws std::length_error past 10^7 assignments.
SelectionOutcome brute_force_lex_optimal(const SnrMatrix& gamma);

SelectionOutcome select(Scheme scheme, const SnrMatrix& gamma, RandomStream& stream);

/// Worst-case SRS comparison count N (3 N Nr + 3 Nr - N^2 - 5) / 6.
/// Throws std::domain_error unless 1 <= N <= Nr.
std::uint64_t srs_complexity(int num_users, int num_relays);

/// Naive-scheme comparison count (2 N Nr - N^2 - N) / 2.
std::uint64_t naive_complexity(int num_users, int num_relays);

/// True if a's ascending SNR vector is lexicographically larger than b's.
bool lex_greater(const std::vector<double>& a, const std::vector<double>& b) noexcept;

}  // namespace relaysel
