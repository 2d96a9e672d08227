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
#include <string>
#include <vector>

#include "relaysel/analytics.hpp"

namespace relaysel {

/// Exact Prob(min SNR = k-th largest entry) for a deterministic scheme,
/// by running it on every placement of the ranks 1..N Nr in the matrix.
/// Only ranks matter for ORS, SRS and naive selection, so this is the exact
/// law under any continuous i.i.d. fading. Throws std::length_error when
/// N Nr > 10 and std::invalid_argument for random selection.
RankProbabilityTable enumerate_rank_probabilities(Scheme scheme, int num_users, int num_relays);

struct VerificationCheck {
    std::string name;
    bool passed = false;
    /// A known discrepancy that is reported but does not fail verification.
    bool informational = false;
    std::string detail;
};

struct VerifyOptions {
    int max_users = 3;
    int max_relays = 5;
    std::uint64_t matrices = 10000;
    std::uint64_t seed = 1;
};

/// Oracle, enumeration and operation-count checks. Matrices come from the
/// channel model at P = Q = 10 dB.
std::vector<VerificationCheck> run_verification(const VerifyOptions& options);

/// True if no non-informational check failed.
bool verification_passed(const std::vector<VerificationCheck>& checks) noexcept;

}  // namespace relaysel
