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
#include <stdexcept>
#include <string>

#include <doctest.h>

#include "relaysel/verification.hpp"

using namespace relaysel;

TEST_SUITE("verification") {

TEST_CASE("enumerated rank laws") {
    const auto t = enumerate_rank_probabilities(Scheme::ors, 2, 2);
    CHECK(t.probs.size() == 2);
    CHECK(t.probs.at(2) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(t.probs.at(3) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    // Naive at N = 2, Nr = 2: user 1 takes its row maximum, user 2 the rest.
    const auto naive = enumerate_rank_probabilities(Scheme::naive, 2, 2);
    CHECK(naive.total() == doctest::Approx(1.0).epsilon(1e-15));
    // A single user always gets the largest entry.
    CHECK(enumerate_rank_probabilities(Scheme::srs, 1, 5).probs.at(1) == 1.0);
    CHECK_THROWS_AS(enumerate_rank_probabilities(Scheme::ors, 3, 4), std::length_error);
    CHECK_THROWS_AS(enumerate_rank_probabilities(Scheme::random, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_rank_probabilities(Scheme::ors, 3, 2), std::invalid_argument);
}

TEST_CASE("self-check report") {
    const auto checks = run_verification({2, 3, 200, 5});
    CHECK(verification_passed(checks));
    auto find = [&](const std::string& name) {
        return std::find_if(checks.begin(), checks.end(), [&](const VerificationCheck& c) { return c.name == name; });
    };
    const auto square = find("lowest_block_probability N=2 Nr=2");
    REQUIRE(square != checks.end());
    CHECK_FALSE(square->passed);
    CHECK(square->informational);
    const auto printed = find("srs_expanded_as_printed_equals_mixture");
    REQUIRE(printed != checks.end());
    CHECK(printed->informational);
    for (const auto& c : checks) {
        INFO(c.name << ": " << c.detail);
        CHECK((c.passed || c.informational));
    }
    CHECK_THROWS_AS(run_verification({3, 2, 10, 1}), std::invalid_argument);
}

TEST_CASE("a failed check fails the report") {
    std::vector<VerificationCheck> checks{{"a", true, false, ""}, {"b", false, true, ""}};
    CHECK(verification_passed(checks));
    checks.push_back({"c", false, false, ""});
    CHECK_FALSE(verification_passed(checks));
}

}  // TEST_SUITE
