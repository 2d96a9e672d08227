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

#include "relaysel/selection.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace relaysel {

namespace {

void require_shape(const SnrMatrix& gamma) {
    if (gamma.num_users() < 1) {
        throw std::invalid_argument("relay selection: SNR matrix has no users");
    }
    if (gamma.num_relays() < gamma.num_users()) {
        throw std::invalid_argument("relay selection: fewer relays than users");
    }
}

SelectionOutcome make_outcome(const SnrMatrix& gamma, std::vector<int> relay_of, std::uint64_t ops) {
    SelectionOutcome out;
    out.user_snrs.reserve(relay_of.size());
    for (std::size_t i = 0; i < relay_of.size(); ++i) {
        out.user_snrs.push_back(gamma(static_cast<int>(i), relay_of[i]));
    }
    out.sorted_snrs = out.user_snrs;
    std::sort(out.sorted_snrs.begin(), out.sorted_snrs.end());
    out.min_snr = out.sorted_snrs.front();
    out.assignment.relay_of = std::move(relay_of);
    out.op_count = ops;
    return out;
}

// Repeated max-min bottleneck matching over shrinking user/relay sets.
class BottleneckSolver {
public:
    explicit BottleneckSolver(const SnrMatrix& gamma) : gamma_(gamma) {}

    std::vector<int> solve() {
        std::vector<int> users(static_cast<std::size_t>(gamma_.num_users()));
        std::vector<int> relays(static_cast<std::size_t>(gamma_.num_relays()));
        std::iota(users.begin(), users.end(), 0);
        std::iota(relays.begin(), relays.end(), 0);
        return solve(users, relays, false).relay_of;
    }

    std::uint64_t comparisons() const noexcept { return ops_; }

private:
    struct Partial {
        std::vector<double> sorted;  // ascending SNRs of the users solved so far
        std::vector<int> relay_of;   // -1 for users outside the subproblem
    };

    bool at_least(int u, int r, double t) {
        ++ops_;
        return gamma_(u, r) >= t;
    }

    // Kuhn's augmenting paths on edges gamma >= t.
    bool augment(int ui, const std::vector<int>& users, const std::vector<int>& relays, double t) {
        for (std::size_t rj = 0; rj < relays.size(); ++rj) {
            if (seen_[rj] || !at_least(users[static_cast<std::size_t>(ui)], relays[rj], t)) {
                continue;
            }
            seen_[rj] = 1;
            if (owner_[rj] < 0 || augment(owner_[rj], users, relays, t)) {
                owner_[rj] = ui;
                return true;
            }
        }
        return false;
    }

    bool feasible(const std::vector<int>& users, const std::vector<int>& relays, double t) {
        owner_.assign(relays.size(), -1);
        seen_.resize(relays.size());
        for (std::size_t ui = 0; ui < users.size(); ++ui) {
            std::fill(seen_.begin(), seen_.end(), 0);
            if (!augment(static_cast<int>(ui), users, relays, t)) {
                return false;
            }
        }
        return true;
    }

    // Largest threshold admitting a matching that saturates users.
    double bottleneck_value(const std::vector<int>& users, const std::vector<int>& relays) {
        double cap = 0.0;
        bool first_user = true;
        std::vector<double>& values = values_;
        values.clear();
        for (int u : users) {
            double best = gamma_(u, relays.front());
            for (std::size_t k = 0; k < relays.size(); ++k) {
                const double v = gamma_(u, relays[k]);
                values.push_back(v);
                if (k > 0) {
                    ++ops_;
                    best = std::max(best, v);
                }
            }
            if (first_user || best < cap) {
                cap = best;
            }
            if (!first_user) {
                ++ops_;
            }
            first_user = false;
        }
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        values.erase(std::upper_bound(values.begin(), values.end(), cap), values.end());
        std::size_t lo = 0;
        std::size_t hi = values.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi + 1) / 2;
            if (feasible(users, relays, values[mid])) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        return values[lo];
    }

    static std::vector<int> without(const std::vector<int>& v, int x) {
        std::vector<int> out;
        out.reserve(v.size() - 1);
        for (int e : v) {
            if (e != x) {
                out.push_back(e);
            }
        }
        return out;
    }

    std::string memo_key(const std::vector<int>& users, const std::vector<int>& relays) const {
        std::string key(static_cast<std::size_t>(gamma_.num_users() + gamma_.num_relays()), '0');
        for (int u : users) {
            key[static_cast<std::size_t>(u)] = '1';
        }
        for (int r : relays) {
            key[static_cast<std::size_t>(gamma_.num_users() + r)] = '1';
        }
        return key;
    }

    Partial solve(const std::vector<int>& users, const std::vector<int>& relays, bool memoise) {
        if (users.empty()) {
            return {{}, std::vector<int>(static_cast<std::size_t>(gamma_.num_users()), -1)};
        }
        std::string key;
        if (memoise) {
            key = memo_key(users, relays);
            if (auto it = memo_.find(key); it != memo_.end()) {
                return it->second;
            }
        }

        if (users.size() == 1) {
            // One user left: its best remaining relay, lowest index on ties.
            const int u = users.front();
            int best = relays.front();
            for (std::size_t k = 1; k < relays.size(); ++k) {
                ++ops_;
                if (gamma_(u, relays[k]) > gamma_(u, best)) {
                    best = relays[k];
                }
            }
            Partial p{{gamma_(u, best)}, std::vector<int>(static_cast<std::size_t>(gamma_.num_users()), -1)};
            p.relay_of[static_cast<std::size_t>(u)] = best;
            return p;
        }

        const double t = bottleneck_value(users, relays);

        // With distinct entries exactly one pair carries the bottleneck value and
        // every optimal assignment uses it. Ties need every pair that still
        // extends to a feasible matching.
        std::vector<std::pair<int, int>> tied;
        for (int u : users) {
            for (int r : relays) {
                if (gamma_(u, r) == t) {
                    tied.emplace_back(u, r);
                }
            }
        }
        std::vector<std::pair<int, int>> candidates;
        if (tied.size() == 1) {
            candidates = tied;
        } else {
            for (auto [u, r] : tied) {
                if (feasible(without(users, u), without(relays, r), t)) {
                    candidates.emplace_back(u, r);
                }
            }
        }
        const bool branching = memoise || candidates.size() > 1;

        Partial best;
        bool have_best = false;
        for (auto [u, r] : candidates) {
            Partial sub = solve(without(users, u), without(relays, r), branching);
            sub.sorted.insert(std::upper_bound(sub.sorted.begin(), sub.sorted.end(), t), t);
            sub.relay_of[static_cast<std::size_t>(u)] = r;
            if (!have_best || lex_greater(sub.sorted, best.sorted) ||
                (sub.sorted == best.sorted && sub.relay_of < best.relay_of)) {
                best = std::move(sub);
                have_best = true;
            }
        }
        if (memoise) {
            memo_.emplace(std::move(key), best);
        }
        return best;
    }

    const SnrMatrix& gamma_;
    std::uint64_t ops_ = 0;
    std::map<std::string, Partial> memo_;
    std::vector<int> owner_;
    std::vector<char> seen_;
    std::vector<double> values_;
};

// Row maximum over the listed relays; lowest relay index wins ties.
int best_relay(const SnrMatrix& gamma, int user, const std::vector<int>& relays, std::uint64_t& ops) {
    int best = relays.front();
    for (std::size_t k = 1; k < relays.size(); ++k) {
        ++ops;
        if (gamma(user, relays[k]) > gamma(user, best)) {
            best = relays[k];
        }
    }
    return best;
}

}  // namespace

std::string_view scheme_name(Scheme scheme) noexcept {
    switch (scheme) {
        case Scheme::ors: return "ors";
        case Scheme::srs: return "srs";
        case Scheme::naive: return "naive";
        case Scheme::random: return "random";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) noexcept {
    for (Scheme s : {Scheme::ors, Scheme::srs, Scheme::naive, Scheme::random}) {
        if (scheme_name(s) == name) {
            return s;
        }
    }
    return std::nullopt;
}

bool Assignment::is_valid(int num_relays) const {
    std::vector<char> used(static_cast<std::size_t>(std::max(num_relays, 0)), 0);
    for (int r : relay_of) {
        if (r < 0 || r >= num_relays || used[static_cast<std::size_t>(r)]) {
            return false;
        }
        used[static_cast<std::size_t>(r)] = 1;
    }
    return !relay_of.empty();
}

bool lex_greater(const std::vector<double>& a, const std::vector<double>& b) noexcept {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

SelectionOutcome select_ors(const SnrMatrix& gamma) {
    require_shape(gamma);
    BottleneckSolver solver(gamma);
    auto relay_of = solver.solve();
    return make_outcome(gamma, std::move(relay_of), solver.comparisons());
}

SelectionOutcome select_srs(const SnrMatrix& gamma) {
    require_shape(gamma);
    std::vector<int> users(static_cast<std::size_t>(gamma.num_users()));
    std::vector<int> relays(static_cast<std::size_t>(gamma.num_relays()));
    std::iota(users.begin(), users.end(), 0);
    std::iota(relays.begin(), relays.end(), 0);
    std::vector<int> relay_of(users.size(), -1);
    std::vector<int> row_best(users.size());
    std::uint64_t ops = 0;
    while (!users.empty()) {
        for (std::size_t k = 0; k < users.size(); ++k) {
            row_best[k] = best_relay(gamma, users[k], relays, ops);
        }
        std::size_t pick = 0;
        for (std::size_t k = 1; k < users.size(); ++k) {
            ++ops;
            if (gamma(users[k], row_best[k]) < gamma(users[pick], row_best[pick])) {
                pick = k;
            }
        }
        const int relay = row_best[pick];
        relay_of[static_cast<std::size_t>(users[pick])] = relay;
        users.erase(users.begin() + static_cast<std::ptrdiff_t>(pick));
        relays.erase(std::find(relays.begin(), relays.end(), relay));
    }
    return make_outcome(gamma, std::move(relay_of), ops);
}

SelectionOutcome select_naive(const SnrMatrix& gamma) {
    require_shape(gamma);
    std::vector<int> relays(static_cast<std::size_t>(gamma.num_relays()));
    std::iota(relays.begin(), relays.end(), 0);
    std::vector<int> relay_of(static_cast<std::size_t>(gamma.num_users()));
    std::uint64_t ops = 0;
    for (int u = 0; u < gamma.num_users(); ++u) {
        const int relay = best_relay(gamma, u, relays, ops);
        relay_of[static_cast<std::size_t>(u)] = relay;
        relays.erase(std::find(relays.begin(), relays.end(), relay));
    }
    return make_outcome(gamma, std::move(relay_of), ops);
}

SelectionOutcome select_random(const SnrMatrix& gamma, RandomStream& stream) {
    require_shape(gamma);
    std::vector<int> pool(static_cast<std::size_t>(gamma.num_relays()));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<int> relay_of(static_cast<std::size_t>(gamma.num_users()));
    for (std::size_t i = 0; i < relay_of.size(); ++i) {
        const auto remaining = static_cast<std::uint32_t>(pool.size() - i);
        const std::size_t j = i + stream.next_below(remaining);
        std::swap(pool[i], pool[j]);
        relay_of[i] = pool[i];
    }
    return make_outcome(gamma, std::move(relay_of), 0);
}

SelectionOutcome brute_force_lex_optimal(const SnrMatrix& gamma) {
    require_shape(gamma);
    const int users = gamma.num_users();
    const int relays = gamma.num_relays();
    constexpr double kLimit = 1e7;
    double count = 1.0;
    for (int k = 0; k < users; ++k) {
        count *= relays - k;
    }
    if (count > kLimit) {
        throw std::length_error("brute_force_lex_optimal: more than 10^7 injective assignments");
    }

    std::vector<int> current(static_cast<std::size_t>(users), -1);
    std::vector<char> used(static_cast<std::size_t>(relays), 0);
    std::vector<int> best;
    std::vector<double> best_sorted;
    std::vector<double> scratch(static_cast<std::size_t>(users));

    // Depth-first in lexicographic relay_of order; only a strictly better
    // sorted vector replaces the incumbent, so ties keep the smallest relay_of.
    auto visit = [&](auto&& self, int u) -> void {
        if (u == users) {
            for (int i = 0; i < users; ++i) {
                scratch[static_cast<std::size_t>(i)] = gamma(i, current[static_cast<std::size_t>(i)]);
            }
            std::sort(scratch.begin(), scratch.end());
            if (best.empty() || lex_greater(scratch, best_sorted)) {
                best = current;
                best_sorted = scratch;
            }
            return;
        }
        for (int r = 0; r < relays; ++r) {
            if (used[static_cast<std::size_t>(r)]) {
                continue;
            }
            used[static_cast<std::size_t>(r)] = 1;
            current[static_cast<std::size_t>(u)] = r;
            self(self, u + 1);
            used[static_cast<std::size_t>(r)] = 0;
        }
    };
    visit(visit, 0);
    return make_outcome(gamma, std::move(best), 0);
}

SelectionOutcome select(Scheme scheme, const SnrMatrix& gamma, RandomStream& stream) {
    switch (scheme) {
        case Scheme::ors: return select_ors(gamma);
        case Scheme::srs: return select_srs(gamma);
        case Scheme::naive: return select_naive(gamma);
        case Scheme::random: return select_random(gamma, stream);
    }
    throw std::invalid_argument("select: unknown scheme");
}

std::uint64_t srs_complexity(int num_users, int num_relays) {
    if (num_users < 1 || num_relays < num_users) {
        throw std::domain_error("srs_complexity: need 1 <= users <= relays");
    }
    const std::int64_t n = num_users;
    const std::int64_t r = num_relays;
    return static_cast<std::uint64_t>(n * (3 * n * r + 3 * r - n * n - 5) / 6);
}

std::uint64_t naive_complexity(int num_users, int num_relays) {
    if (num_users < 1 || num_relays < num_users) {
        throw std::domain_error("naive_complexity: need 1 <= users <= relays");
    }
    const std::int64_t n = num_users;
    const std::int64_t r = num_relays;
    return static_cast<std::uint64_t>((2 * n * r - n * n - n) / 2);
}

}  // namespace relaysel
