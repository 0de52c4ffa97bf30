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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stabscore/errors.hpp"
#include "stabscore/game_core.hpp"
#include "stabscore/parallel.hpp"
#include "stabscore/rational.hpp"

// Sequential resource-selection games: k independent rounds in which each of
// n agents picks one of m identical resources and pays c(load) per round.
namespace stabscore::srsg {

/// Cost per round as a function of the load on the chosen resource,
/// c(1), ..., c(n). Nondecreasing and nonnegative.
class CostFn {
 public:
  explicit CostFn(std::vector<Rational> values) : values_(std::move(values)) {
    detail::require(!values_.empty(), "cost function needs at least one value");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      detail::require(values_[i] >= 0, "costs must be nonnegative");
      if (i > 0) detail::require(values_[i] >= values_[i - 1], "cost function must be nondecreasing");
    }
  }

  /// c(t) = t for t = 1..n.
  static CostFn linear(std::size_t n) {
    std::vector<Rational> v;
    for (std::size_t t = 1; t <= n; ++t) v.emplace_back(static_cast<unsigned long>(t));
    return CostFn(std::move(v));
  }

  const Rational& operator()(std::size_t load) const {
    detail::require(load >= 1 && load <= values_.size(), "load " + std::to_string(load) + " outside cost domain");
    return values_[load - 1];
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<Rational>& values() const { return values_; }

  /// Increasing marginal loss: c(i+1) - c(i) <= c(j+1) - c(j) for i < j.
  bool is_convex() const {
    for (std::size_t i = 2; i < values_.size(); ++i)
      if (values_[i] - values_[i - 1] < values_[i - 1] - values_[i - 2]) return false;
    return true;
  }

 private:
  std::vector<Rational> values_;
};

struct SrsgInstance {
  std::size_t m;  // resources
  std::size_t n;  // agents
  std::size_t k;  // steps
  CostFn cost;

  SrsgInstance(std::size_t resources, std::size_t agents, std::size_t steps, CostFn cost_fn)
      : m(resources), n(agents), k(steps), cost(std::move(cost_fn)) {
    detail::require(m >= 2 && n >= 2 && k >= 2, "SRSG needs m, n, k >= 2");
    detail::require(cost.size() >= n, "cost function must cover loads 1..n");
  }

  std::size_t q() const { return n % m; }
  std::size_t full_load() const { return (n + m - 1) / m; }
  std::size_t vacant_load() const { return n / m; }
};

/// choice(t, i) is the 0-based resource agent i uses at step t.
class Assignment {
 public:
  Assignment(std::size_t steps, std::size_t agents) : steps_(steps), agents_(agents), choice_(steps * agents, 0) {}

  static Assignment from_rows(const std::vector<std::vector<std::size_t>>& rows) {
    detail::require(!rows.empty(), "assignment needs at least one step");
    Assignment a(rows.size(), rows.front().size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
      detail::require(rows[t].size() == a.agents_, "ragged assignment rows");
      for (std::size_t i = 0; i < a.agents_; ++i) a.set(t, i, rows[t][i]);
    }
    return a;
  }

  std::size_t steps() const { return steps_; }
  std::size_t agents() const { return agents_; }
  std::size_t at(std::size_t t, std::size_t i) const { return choice_[t * agents_ + i]; }
  void set(std::size_t t, std::size_t i, std::size_t resource) { choice_[t * agents_ + i] = resource; }

  void validate_for(const SrsgInstance& inst) const {
    detail::require(steps_ == inst.k && agents_ == inst.n, "assignment shape does not match the instance");
    for (std::size_t r : choice_) detail::require(r < inst.m, "resource index out of range");
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::size_t steps_;
  std::size_t agents_;
  std::vector<std::size_t> choice_;
};

inline std::vector<std::size_t> loads(const SrsgInstance& inst, const Assignment& a, std::size_t step) {
  std::vector<std::size_t> out(inst.m, 0);
  for (std::size_t i = 0; i < inst.n; ++i) ++out[a.at(step, i)];
  return out;
}

inline Rational total_cost(const SrsgInstance& inst, const Assignment& a, std::size_t agent) {
  a.validate_for(inst);
  detail::require(agent < inst.n, "agent index out of range");
  Rational sum(0);
  for (std::size_t t = 0; t < inst.k; ++t) sum += inst.cost(loads(inst, a, t)[a.at(t, agent)]);
  return sum;
}

/// Steps are independent, so an assignment is a NE iff no agent can strictly
/// lower its cost at any single step by switching resource.
inline bool is_nash(const SrsgInstance& inst, const Assignment& a) {
  a.validate_for(inst);
  for (std::size_t t = 0; t < inst.k; ++t) {
    const auto load = loads(inst, a, t);
    for (std::size_t i = 0; i < inst.n; ++i) {
      const Rational& current = inst.cost(load[a.at(t, i)]);
      for (std::size_t r = 0; r < inst.m; ++r)
        if (r != a.at(t, i) && inst.cost(load[r] + 1) < current) return false;
    }
  }
  return true;
}

namespace detail {

// Agents 0.. in order, the first q resources receive ceil(n/m) agents.
inline std::vector<std::size_t> balanced_blocks(const SrsgInstance& inst) {
  std::vector<std::size_t> row(inst.n);
  std::size_t agent = 0;
  for (std::size_t r = 0; r < inst.m; ++r) {
    const std::size_t size = r < inst.q() ? inst.full_load() : inst.vacant_load();
    for (std::size_t j = 0; j < size; ++j) row[agent++] = r;
  }
  return row;
}

inline void require_convex(const SrsgInstance& inst) {
  ::stabscore::detail::require_contract(inst.cost.is_convex(), "construction requires a convex cost function");
}

}  // namespace detail

/// Nearly balanced partition in contiguous blocks, repeated at every step.
/// Maximizes pair deviations among NE.
inline Assignment build_repeat_ne(const SrsgInstance& inst) {
  detail::require_convex(inst);
  const auto row = detail::balanced_blocks(inst);
  Assignment a(inst.k, inst.n);
  for (std::size_t t = 0; t < inst.k; ++t)
    for (std::size_t i = 0; i < inst.n; ++i) a.set(t, i, row[i]);
  return a;
}

/// Two-step NE that scatters first-step roommates in the second step.
/// With q <= m/2 one agent of every full resource moves to a distinct vacant
/// resource; otherwise the first-step groups are concatenated and agent j of
/// the concatenation goes to resource j mod m.
inline Assignment build_scatter_ne(const SrsgInstance& inst) {
  if (inst.k != 2) throw UnsupportedConfiguration("scatter construction is defined for k = 2 only");
  detail::require_convex(inst);
  const auto first = detail::balanced_blocks(inst);
  Assignment a(2, inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) a.set(0, i, first[i]);

  const std::size_t q = inst.q();
  if (2 * q <= inst.m) {
    for (std::size_t i = 0; i < inst.n; ++i) a.set(1, i, first[i]);
    // Agents of resource r occupy a contiguous block; move the last one of each full block.
    for (std::size_t r = 0; r < q; ++r) {
      const std::size_t last_agent = (r + 1) * inst.full_load() - 1;
      a.set(1, last_agent, q + r);
    }
  } else {
    // balanced_blocks already lists agents grouped by resource in order.
    for (std::size_t j = 0; j < inst.n; ++j) a.set(1, j, j % inst.m);
  }
  return a;
}

/// Each step independently: the q full resources are a uniformly random
/// subset and the agents a uniformly random permutation, giving a uniform
/// draw from the nearly balanced assignments.
inline Assignment sample_random_ne(const SrsgInstance& inst, std::uint64_t seed) {
  detail::require_convex(inst);
  std::mt19937_64 rng(seed);
  Assignment a(inst.k, inst.n);
  std::vector<std::size_t> resources(inst.m);
  std::vector<std::size_t> agents(inst.n);
  for (std::size_t t = 0; t < inst.k; ++t) {
    std::iota(resources.begin(), resources.end(), std::size_t{0});
    std::iota(agents.begin(), agents.end(), std::size_t{0});
    std::shuffle(resources.begin(), resources.end(), rng);
    std::shuffle(agents.begin(), agents.end(), rng);
    std::size_t pos = 0;
    for (std::size_t r = 0; r < inst.m; ++r) {
      const std::size_t size = r < inst.q() ? inst.full_load() : inst.vacant_load();
      for (std::size_t j = 0; j < size; ++j) a.set(t, agents[pos++], resources[r]);
    }
  }
  return a;
}

struct SharedStep {
  std::size_t step;
  std::size_t resource;
  bool full;
};

struct PairShareSummary {
  std::vector<SharedStep> shared;

  std::size_t full_count() const {
    return static_cast<std::size_t>(std::count_if(shared.begin(), shared.end(), [](const SharedStep& s) { return s.full; }));
  }
};

inline PairShareSummary pair_share_summary(const SrsgInstance& inst, const Assignment& a, std::size_t i,
                                           std::size_t j) {
  a.validate_for(inst);
  ::stabscore::detail::require(i < inst.n && j < inst.n && i != j, "pair indices must be distinct agents");
  PairShareSummary out;
  for (std::size_t t = 0; t < inst.k; ++t) {
    if (a.at(t, i) != a.at(t, j)) continue;
    const std::size_t load = loads(inst, a, t)[a.at(t, i)];
    out.shared.push_back({t, a.at(t, i), inst.q() > 0 && load == inst.full_load()});
  }
  return out;
}

namespace detail {

// The structural rule without precondition checks; callers verify them once.
inline bool pair_deviates_unchecked(const SrsgInstance& inst, const Assignment& a,
                                    const std::vector<std::vector<std::size_t>>& step_loads, std::size_t i,
                                    std::size_t j) {
  if (inst.q() == 0) return false;
  // Leaving a shared full resource relieves the partner by c(full) - c(vacant).
  if (inst.vacant_load() >= 1 && !(inst.cost(inst.full_load()) > inst.cost(inst.vacant_load()))) return false;
  std::size_t full_shared = 0;
  for (std::size_t t = 0; t < inst.k; ++t) {
    const std::size_t r = a.at(t, i);
    if (r == a.at(t, j) && step_loads[t][r] == inst.full_load()) ++full_shared;
  }
  return full_shared >= 2;
}

inline std::vector<std::vector<std::size_t>> all_loads(const SrsgInstance& inst, const Assignment& a) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(inst.k);
  for (std::size_t t = 0; t < inst.k; ++t) out.push_back(loads(inst, a, t));
  return out;
}

inline void require_structural_preconditions(const SrsgInstance& inst, const Assignment& a) {
  ::stabscore::detail::require_contract(inst.cost.is_convex(), "structural pair rule requires a convex cost function");
  ::stabscore::detail::require_contract(is_nash(inst, a), "structural pair rule requires a Nash equilibrium assignment");
}

}  // namespace detail

/// A pair of a convex-cost NE can strictly deviate iff it shares a full
/// resource in at least two steps (and leaving a full resource actually
/// lowers the remaining agent's cost).
inline bool pair_deviates_structural(const SrsgInstance& inst, const Assignment& a, std::size_t i, std::size_t j) {
  a.validate_for(inst);
  ::stabscore::detail::require(i < inst.n && j < inst.n && i != j, "pair indices must be distinct agents");
  detail::require_structural_preconditions(inst, a);
  return detail::pair_deviates_unchecked(inst, a, detail::all_loads(inst, a), i, j);
}

/// Encodes per-step resource choices as one action index: sum_t r_t * m^t.
inline std::size_t encode_strategy(const SrsgInstance& inst, const Assignment& a, std::size_t agent) {
  std::size_t code = 0;
  std::size_t scale = 1;
  for (std::size_t t = 0; t < inst.k; ++t) {
    code += a.at(t, agent) * scale;
    scale *= inst.m;
  }
  return code;
}

inline std::size_t strategy_count(const SrsgInstance& inst) {
  std::size_t count = 1;
  for (std::size_t t = 0; t < inst.k; ++t) count *= inst.m;
  return count;
}

namespace detail {

template <ExactPayoff Payoff>
BasicFiniteGame<Payoff> make_game(const SrsgInstance& inst, std::vector<Payoff> cost_by_load) {
  const std::size_t actions = strategy_count(inst);
  // digits[action * k + t] is the resource that strategy `action` uses at step t.
  std::vector<std::uint32_t> digits(actions * inst.k);
  for (std::size_t code = 0; code < actions; ++code) {
    std::size_t rest = code;
    for (std::size_t t = 0; t < inst.k; ++t) {
      digits[code * inst.k + t] = static_cast<std::uint32_t>(rest % inst.m);
      rest /= inst.m;
    }
  }
  const std::size_t k = inst.k;
  return BasicFiniteGame<Payoff>(
      std::vector<std::size_t>(inst.n, actions),
      [k, digits = std::move(digits), cost = std::move(cost_by_load)](PlayerIndex player,
                                                                      std::span<const Action> profile) {
        Payoff total{};
        const std::uint32_t* mine = &digits[profile[player] * k];
        for (std::size_t t = 0; t < k; ++t) {
          std::size_t load = 0;
          for (Action other : profile)
            if (digits[other * k + t] == mine[t]) ++load;
          total = total + cost[load];
        }
        return Payoff(-total);
      });
}

}  // namespace detail

/// The SRSG as a normal-form game: utility is the negated total cost.
inline FiniteGame to_finite_game(const SrsgInstance& inst) {
  std::vector<Rational> cost(inst.n + 1, Rational(0));
  for (std::size_t load = 1; load <= inst.n; ++load) cost[load] = inst.cost(load);
  return detail::make_game<Rational>(inst, std::move(cost));
}

/// Same game with costs scaled by the common denominator into 64-bit
/// integers, which preserves every comparison exactly. Empty when the scaled
/// totals could overflow.
inline std::optional<BasicFiniteGame<std::int64_t>> to_integer_game(const SrsgInstance& inst) {
  BigInt scale(1);
  for (std::size_t load = 1; load <= inst.n; ++load) {
    const BigInt den = inst.cost(load).get_den();
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
  }
  const BigInt limit = BigInt(1) << 60;
  std::vector<std::int64_t> cost(inst.n + 1, 0);
  for (std::size_t load = 1; load <= inst.n; ++load) {
    const Rational scaled = inst.cost(load) * scale;
    const BigInt value = scaled.get_num();
    if (value * static_cast<unsigned long>(inst.k) >= limit) return std::nullopt;
    cost[load] = value.get_si();
  }
  return detail::make_game<std::int64_t>(inst, std::move(cost));
}

inline Profile to_profile(const SrsgInstance& inst, const Assignment& a) {
  a.validate_for(inst);
  Profile p;
  for (std::size_t i = 0; i < inst.n; ++i) p.actions.push_back(encode_strategy(inst, a, i));
  return p;
}

inline Assignment from_profile(const SrsgInstance& inst, const Profile& p) {
  ::stabscore::detail::require(p.actions.size() == inst.n, "profile length does not match agent count");
  Assignment a(inst.k, inst.n);
  for (std::size_t i = 0; i < inst.n; ++i) {
    std::size_t code = p.actions[i];
    for (std::size_t t = 0; t < inst.k; ++t) {
      a.set(t, i, code % inst.m);
      code /= inst.m;
    }
    ::stabscore::detail::require(code == 0, "action index out of range for this instance");
  }
  return a;
}

enum class CountMethod { structural, bruteforce };

inline const char* to_string(CountMethod m) { return m == CountMethod::structural ? "structural" : "bruteforce"; }

struct PairCount {
  std::uint64_t count = 0;
  std::uint64_t incomplete = 0;  // pairs whose brute-force search ran out of budget
};

/// Unordered pairs with a strict joint deviation.
inline PairCount count_pair_deviations(const SrsgInstance& inst, const Assignment& a, CountMethod method,
                                       SearchBudget budget = SearchBudget::from_env()) {
  a.validate_for(inst);
  PairCount out;
  if (method == CountMethod::structural) {
    detail::require_structural_preconditions(inst, a);
    const auto step_loads = detail::all_loads(inst, a);
    for (std::size_t i = 0; i < inst.n; ++i)
      for (std::size_t j = i + 1; j < inst.n; ++j)
        if (detail::pair_deviates_unchecked(inst, a, step_loads, i, j)) ++out.count;
    return out;
  }
  const Profile profile = to_profile(inst, a);
  auto scan = [&](const auto& game) {
    for (std::size_t i = 0; i < inst.n; ++i) {
      for (std::size_t j = i + 1; j < inst.n; ++j) {
        const auto res = find_deviation(game, profile, Coalition({i, j}), DeviationKind::strict, budget);
        if (res.found()) ++out.count;
        else if (res.budget_exceeded) ++out.incomplete;
      }
    }
  };
  if (const auto fast = to_integer_game(inst)) scan(*fast);
  else scan(to_finite_game(inst));
  return out;
}

/// C(n,2) * (1 - [(1-a)^k + k a (1-a)^(k-1)]) with per-step a = q/m^2.
inline Rational expected_pair_deviations_exact_beta(const SrsgInstance& inst) {
  const Rational alpha = ratio(static_cast<long>(inst.q()), static_cast<unsigned long>(inst.m * inst.m));
  const Rational one_minus = 1 - alpha;
  const Rational beta = pow(one_minus, static_cast<unsigned>(inst.k)) +
                        Rational(static_cast<unsigned long>(inst.k)) * alpha *
                            pow(one_minus, static_cast<unsigned>(inst.k - 1));
  const Rational pairs(static_cast<unsigned long>(binomial(inst.n, 2)));
  return pairs * (1 - beta);
}

/// C(n,2) * (1 - (1+a) e^{-a}) with a = q(k-1)/m^2.
inline double expected_pair_deviations_exponential(const SrsgInstance& inst) {
  const double alpha = static_cast<double>(inst.q()) * static_cast<double>(inst.k - 1) /
                       static_cast<double>(inst.m * inst.m);
  return static_cast<double>(binomial(inst.n, 2)) * (1.0 - (1.0 + alpha) * std::exp(-alpha));
}

enum class ExpectationForm { exact_beta, exponential_approx };

inline double expected_pair_deviations(const SrsgInstance& inst, ExpectationForm form) {
  return form == ExpectationForm::exact_beta ? to_double(expected_pair_deviations_exact_beta(inst))
                                             : expected_pair_deviations_exponential(inst);
}

struct MonteCarloSummary {
  std::size_t samples = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  double std_error() const { return samples > 0 ? std::sqrt(variance / static_cast<double>(samples)) : 0.0; }
};

/// Structural pair-deviation counts over independent random NE draws.
/// Sample i uses derive_seed(seed, i), so the summary does not depend on
/// the worker count.
inline MonteCarloSummary monte_carlo_pair_deviations(const SrsgInstance& inst, std::size_t samples,
                                                     std::uint64_t seed, std::size_t workers = default_workers()) {
  ::stabscore::detail::require(samples >= 1, "need at least one sample");
  detail::require_convex(inst);
  std::vector<std::uint64_t> counts(samples, 0);
  parallel_for(samples, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const Assignment a = sample_random_ne(inst, derive_seed(seed, s));
      const auto step_loads = detail::all_loads(inst, a);
      std::uint64_t c = 0;
      for (std::size_t i = 0; i < inst.n; ++i)
        for (std::size_t j = i + 1; j < inst.n; ++j)
          if (detail::pair_deviates_unchecked(inst, a, step_loads, i, j)) ++c;
      counts[s] = c;
    }
  });
  MonteCarloSummary out;
  out.samples = samples;
  long double sum = 0;
  for (auto c : counts) sum += static_cast<long double>(c);
  const long double mean = sum / samples;
  long double ss = 0;
  for (auto c : counts) ss += (c - mean) * (c - mean);
  out.mean = static_cast<double>(mean);
  out.variance = samples > 1 ? static_cast<double>(ss / (samples - 1)) : 0.0;
  return out;
}

}  // namespace stabscore::srsg
