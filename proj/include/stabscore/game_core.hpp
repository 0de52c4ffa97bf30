// Copyright 2026 The Stabscore Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stabscore/errors.hpp"
#include "stabscore/parallel.hpp"
#include "stabscore/rational.hpp"

namespace stabscore {

using Action = std::size_t;
using PlayerIndex = std::size_t;

/// Payoff types must be exact: integers or rationals, never floating point.
template <typename T>
concept ExactPayoff = std::copyable<T> && requires(const T& a, const T& b) {
  { a < b } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
};

/// A normal-form game with finitely many actions per player and an exact
/// utility oracle. Players and actions are 0-based.
template <ExactPayoff Payoff>
class BasicFiniteGame {
 public:
  using payoff_type = Payoff;
  using UtilityFn = std::function<Payoff(PlayerIndex, std::span<const Action>)>;

  BasicFiniteGame(std::vector<std::size_t> action_counts, UtilityFn utility)
      : action_counts_(std::move(action_counts)), utility_(std::move(utility)) {
    detail::require(!action_counts_.empty(), "a game needs at least one player");
    for (std::size_t c : action_counts_) detail::require(c > 0, "every player needs at least one action");
    detail::require(static_cast<bool>(utility_), "utility oracle is empty");
  }

  std::size_t player_count() const { return action_counts_.size(); }
  std::span<const std::size_t> action_counts() const { return action_counts_; }

  bool is_valid_profile(std::span<const Action> actions) const {
    if (actions.size() != action_counts_.size()) return false;
    for (std::size_t i = 0; i < actions.size(); ++i)
      if (actions[i] >= action_counts_[i]) return false;
    return true;
  }

  void validate_profile(std::span<const Action> actions) const {
    detail::require(actions.size() == action_counts_.size(), "profile length does not match player count");
    for (std::size_t i = 0; i < actions.size(); ++i)
      detail::require(actions[i] < action_counts_[i],
                      "action " + std::to_string(actions[i]) + " out of range for player " + std::to_string(i));
  }

  // Unchecked; callers validate the profile once up front.
  Payoff utility(PlayerIndex player, std::span<const Action> actions) const { return utility_(player, actions); }

 private:
  std::vector<std::size_t> action_counts_;
  UtilityFn utility_;
};

using FiniteGame = BasicFiniteGame<Rational>;

struct Profile {
  std::vector<Action> actions;
  friend bool operator==(const Profile&, const Profile&) = default;
};

/// Nonempty, strictly increasing set of player indices.
class Coalition {
 public:
  explicit Coalition(std::vector<PlayerIndex> members) : members_(std::move(members)) {
    detail::require(!members_.empty(), "coalition must be nonempty");
    for (std::size_t i = 1; i < members_.size(); ++i)
      detail::require(members_[i - 1] < members_[i], "coalition members must be strictly increasing");
  }

  std::span<const PlayerIndex> members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  template <typename Game>
  void validate_for(const Game& game) const {
    detail::require(members_.back() < game.player_count(),
                    "coalition member " + std::to_string(members_.back()) + " is not a player");
  }

  friend bool operator==(const Coalition&, const Coalition&) = default;

 private:
  std::vector<PlayerIndex> members_;
};

enum class DeviationKind { strict, weak };

inline const char* to_string(DeviationKind kind) { return kind == DeviationKind::strict ? "strict" : "weak"; }

inline DeviationKind parse_deviation_kind(const std::string& text) {
  if (text == "strict") return DeviationKind::strict;
  if (text == "weak") return DeviationKind::weak;
  throw InvalidInput("deviation kind must be 'strict' or 'weak', got '" + text + "'");
}

/// Cap on joint actions examined per coalition. STABSCORE_BUDGET overrides the default.
struct SearchBudget {
  std::uint64_t max_joint_actions = std::uint64_t{1} << 26;

  static SearchBudget from_env() {
    SearchBudget b;
    if (const char* env = std::getenv("STABSCORE_BUDGET")) {
      try {
        const unsigned long long v = std::stoull(env);
        if (v > 0) b.max_joint_actions = v;
      } catch (const std::exception&) {
      }
    }
    return b;
  }
};

struct DeviationSearch {
  std::optional<std::vector<Action>> deviation;  // joint action, one entry per coalition member
  bool budget_exceeded = false;
  std::uint64_t examined = 0;

  bool found() const { return deviation.has_value(); }
};

/// Exhaustive search for a joint action b_S that is a (strict or weak)
/// deviation of the coalition from the profile. Joint actions are visited in
/// lexicographic order with the first member most significant, so the first
/// hit is the lexicographically smallest deviation.
template <ExactPayoff Payoff>
DeviationSearch find_deviation(const BasicFiniteGame<Payoff>& game, const Profile& profile, const Coalition& coalition,
                               DeviationKind kind, SearchBudget budget = SearchBudget::from_env()) {
  game.validate_profile(profile.actions);
  coalition.validate_for(game);

  const auto members = coalition.members();
  const auto counts = game.action_counts();
  std::vector<Payoff> baseline;
  baseline.reserve(members.size());
  for (PlayerIndex p : members) baseline.push_back(game.utility(p, profile.actions));

  std::vector<Action> work = profile.actions;
  std::vector<Action> joint(members.size(), 0);
  for (std::size_t m = 0; m < members.size(); ++m) work[members[m]] = 0;

  DeviationSearch result;
  Payoff u{};
  while (true) {
    if (result.examined == budget.max_joint_actions) {
      result.budget_exceeded = true;
      return result;
    }
    ++result.examined;

    bool ok = true;
    bool any_gain = false;
    for (std::size_t m = 0; m < members.size() && ok; ++m) {
      u = game.utility(members[m], work);
      if (kind == DeviationKind::strict) {
        ok = baseline[m] < u;
      } else {
        ok = !(u < baseline[m]);
        any_gain = any_gain || baseline[m] < u;
      }
    }
    if (ok && (kind == DeviationKind::strict || any_gain)) {
      result.deviation = joint;
      return result;
    }

    // Odometer step, last member fastest.
    std::size_t pos = members.size();
    while (pos > 0) {
      --pos;
      const PlayerIndex p = members[pos];
      if (++joint[pos] < counts[p]) {
        work[p] = joint[pos];
        break;
      }
      joint[pos] = 0;
      work[p] = 0;
      if (pos == 0) return result;
    }
  }
}

/// All size-r subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<PlayerIndex>> coalitions_of_size(std::size_t n, std::size_t r) {
  std::vector<std::vector<PlayerIndex>> out;
  if (r == 0 || r > n) return out;
  std::vector<PlayerIndex> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

/// Per-size deviation counts: counts[r-1] is the number of size-r coalitions
/// with a deviation of the given kind.
struct ScoreVector {
  DeviationKind kind = DeviationKind::strict;
  std::size_t player_count = 0;
  std::vector<std::uint64_t> counts;
  // Coalitions per size whose search hit the budget; their status is unknown.
  std::vector<std::uint64_t> incomplete;

  std::size_t r_max() const { return counts.size(); }
  std::uint64_t at(std::size_t r) const {
    detail::require(r >= 1 && r <= counts.size(), "coalition size out of range");
    return counts[r - 1];
  }
  bool truncated() const {
    return std::any_of(incomplete.begin(), incomplete.end(), [](std::uint64_t v) { return v > 0; });
  }
};

struct ScoreOptions {
  SearchBudget budget = SearchBudget::from_env();
  std::size_t workers = default_workers();
};

template <ExactPayoff Payoff>
ScoreVector score_vector(const BasicFiniteGame<Payoff>& game, const Profile& profile, DeviationKind kind,
                         std::size_t r_max, const ScoreOptions& options = {}) {
  const std::size_t n = game.player_count();
  detail::require(r_max >= 1 && r_max <= n, "r_max must lie in [1, n]");
  game.validate_profile(profile.actions);

  ScoreVector out;
  out.kind = kind;
  out.player_count = n;
  out.counts.assign(r_max, 0);
  out.incomplete.assign(r_max, 0);
  for (std::size_t r = 1; r <= r_max; ++r) {
    const auto subsets = coalitions_of_size(n, r);
    std::vector<std::uint8_t> status(subsets.size(), 0);  // 0 none, 1 found, 2 budget
    parallel_for(subsets.size(), options.workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const auto res = find_deviation(game, profile, Coalition(subsets[i]), kind, options.budget);
        status[i] = res.found() ? 1 : (res.budget_exceeded ? 2 : 0);
      }
    });
    for (auto s : status) {
      if (s == 1) ++out.counts[r - 1];
      if (s == 2) ++out.incomplete[r - 1];
    }
  }
  return out;
}

enum class StabilityOrder { more_stable, less_stable, equal };

inline const char* to_string(StabilityOrder o) {
  switch (o) {
    case StabilityOrder::more_stable: return "more_stable";
    case StabilityOrder::less_stable: return "less_stable";
    case StabilityOrder::equal: return "equal";
  }
  return "?";
}

/// Lexicographic comparison: fewer deviating coalitions at the first
/// differing size means more stable.
inline StabilityOrder compare_scores(const ScoreVector& a, const ScoreVector& b) {
  detail::require(a.kind == b.kind, "cannot compare weak and strict score vectors");
  detail::require(a.counts.size() == b.counts.size(), "score vectors have different lengths");
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    if (a.counts[i] < b.counts[i]) return StabilityOrder::more_stable;
    if (a.counts[i] > b.counts[i]) return StabilityOrder::less_stable;
  }
  return StabilityOrder::equal;
}

struct StabilityFlags {
  bool is_nash = false;
  std::size_t se_level = 0;   // largest r with no strict deviation by coalitions of size <= r
  std::size_t sse_level = 0;  // same for weak deviations
  bool is_pareto_efficient = false;
};

/// Derives the solution-concept flags from one strict and one weak vector,
/// both computed through r = n. Argument order does not matter.
inline StabilityFlags classify(const ScoreVector& score, const ScoreVector& companion) {
  detail::require(score.kind != companion.kind, "classify needs one strict and one weak score vector");
  const ScoreVector& strict = score.kind == DeviationKind::strict ? score : companion;
  const ScoreVector& weak = score.kind == DeviationKind::weak ? score : companion;
  const std::size_t n = strict.player_count;
  detail::require(n > 0 && weak.player_count == n, "score vectors describe different games");
  detail::require(strict.counts.size() == n && weak.counts.size() == n,
                  "classification needs score vectors covering r = 1..n");

  auto level = [](const ScoreVector& v) {
    std::size_t r = 0;
    while (r < v.counts.size() && v.counts[r] == 0) ++r;
    return r;
  };
  StabilityFlags f;
  f.is_nash = strict.counts[0] == 0 && weak.counts[0] == 0;
  f.se_level = level(strict);
  f.sse_level = level(weak);
  f.is_pareto_efficient = weak.counts[n - 1] == 0;
  return f;
}

}  // namespace stabscore
