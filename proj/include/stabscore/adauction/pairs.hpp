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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabscore/adauction/gsp.hpp"

namespace stabscore::auction {

/// Quantities shared by the pair conditions for (k, j), 1 <= k < j <= s+1.
struct PairDeviationContext {
  std::size_t k = 0;
  std::size_t j = 0;
  Rational a;                     // x_{j-1} - x_j
  std::vector<Rational> weights;  // weights[i-j-1] = (x_{i-1} - x_i) / x_j for i = j+1..s+1; empty when j = s+1
  Rational weighted_value;        // sum_i w_i v_i
  Rational weighted_upper;        // sum_i w_i v_{i-1}
  std::size_t h = 0;              // j - 1 - k
  Rational z;                     // v_k - v_{j-1}
};

namespace impl {

inline void require_pair(const AuctionInstance& inst, std::size_t k, std::size_t j) {
  inst.require_loser();
  stabscore::detail::require(k >= 1 && k < j && j <= inst.s() + 1, "pair indices must satisfy 1 <= k < j <= s+1");
}

}  // namespace impl

inline PairDeviationContext pair_context(const AuctionInstance& inst, std::size_t k, std::size_t j) {
  impl::require_pair(inst, k, j);
  PairDeviationContext ctx;
  ctx.k = k;
  ctx.j = j;
  ctx.a = inst.ctr(j - 1) - inst.ctr(j);
  ctx.h = j - 1 - k;
  ctx.z = inst.value(k) - inst.value(j - 1);
  if (j <= inst.s()) {
    for (std::size_t i = j + 1; i <= inst.s() + 1; ++i) {
      ctx.weights.push_back((inst.ctr(i - 1) - inst.ctr(i)) / inst.ctr(j));
      ctx.weighted_value += ctx.weights.back() * inst.value(i);
      ctx.weighted_upper += ctx.weights.back() * inst.value(i - 1);
    }
  }
  return ctx;
}

namespace impl {

// Bid of rank j+1 in the given equilibrium. For j <= s this is the weighted
// average from the context; for j = s+1 it is the bid of rank s+2, which is
// that bidder's value (zero when nobody is ranked s+2).
inline Rational trailing_bid(const AuctionInstance& inst, const PairDeviationContext& ctx, Equilibrium eq) {
  if (ctx.j <= inst.s()) return eq == Equilibrium::lower ? ctx.weighted_value : ctx.weighted_upper;
  return inst.value(inst.s() + 2);
}

inline Rational utility_delta(const AuctionInstance& inst, std::size_t k, std::size_t j, const Rational& eps,
                              Equilibrium eq) {
  const PairDeviationContext ctx = pair_context(inst, k, j);
  Rational sum(0);
  for (std::size_t t = k + 1; t <= j - 1; ++t) {
    const Rational& other = eq == Equilibrium::lower ? inst.value(t) : inst.value(t - 1);
    sum += (inst.ctr(t - 1) - inst.ctr(t)) * (inst.value(k) - other);
  }
  const Rational& pivot = eq == Equilibrium::lower ? inst.value(j) : inst.value(j - 1);
  return sum - ctx.a * pivot + ctx.a * trailing_bid(inst, ctx, eq) + eps * inst.ctr(j - 1);
}

}  // namespace impl

/// u(k) - u'(k) when j drops to b_{j+1} + eps and k takes slot j-1, starting
/// from the lower equilibrium. Negative means k gains.
inline Rational le_utility_delta(const AuctionInstance& inst, std::size_t k, std::size_t j,
                                 const Rational& eps = Rational(0)) {
  return impl::utility_delta(inst, k, j, eps, Equilibrium::lower);
}

/// Same move starting from the upper equilibrium.
inline Rational ue_utility_delta(const AuctionInstance& inst, std::size_t k, std::size_t j,
                                 const Rational& eps = Rational(0)) {
  return impl::utility_delta(inst, k, j, eps, Equilibrium::upper);
}

/// Whether the pair (k, j) has a weak deviation from the lower equilibrium.
/// Neighbours always do; otherwise k must strictly gain.
inline bool le_pair_deviates(const AuctionInstance& inst, std::size_t k, std::size_t j) {
  impl::require_pair(inst, k, j);
  if (j == k + 1) return true;
  return le_utility_delta(inst, k, j) < 0;
}

inline bool ue_pair_deviates(const AuctionInstance& inst, std::size_t k, std::size_t j) {
  impl::require_pair(inst, k, j);
  if (j == k + 1) return true;
  if (j == k + 2 && k < inst.s()) return true;
  return ue_utility_delta(inst, k, j) < 0;
}

inline bool pair_deviates(const AuctionInstance& inst, Equilibrium eq, std::size_t k, std::size_t j) {
  return eq == Equilibrium::lower ? le_pair_deviates(inst, k, j) : ue_pair_deviates(inst, k, j);
}

/// Runs the pair move through GSP: j bids b_{j+1} + eps (winning the tie
/// when eps = 0), k bids inside the gap above it and lands in slot j-1.
/// Returns u(k) - u'(k).
inline Rational simulate_pair_delta(const AuctionInstance& inst, Equilibrium eq, std::size_t k, std::size_t j,
                                    const Rational& eps = Rational(0)) {
  impl::require_pair(inst, k, j);
  const BidProfile base = equilibrium_bids(inst, eq);
  detail::require(eps >= 0 && base.bid(j + 1) + eps < base.bid(j), "eps must keep bidder j below its old bid");
  std::vector<Rational> bids = base.bids;
  const Rational lowered = base.bid(j + 1) + eps;
  bids[j - 1] = lowered;
  const Rational upper = j - 1 > k ? base.bid(j - 1) : base.bid(k);
  bids[k - 1] = midpoint(lowered, upper);
  const SlotOutcome before = gsp_outcome(inst, base.bids);
  const SlotOutcome after = gsp_outcome(inst, bids, TieBreak::by_index);
  return before.utility_of(k) - after.utility_of(k);
}

/// Evaluates every pair predicate in O(1) using prefix sums.
class PairScanner {
 public:
  PairScanner(const AuctionInstance& inst, Equilibrium eq) : inst_(inst), eq_(eq) {
    inst.require_loser();
    const std::size_t s = inst.s();
    // prefix_[t] = sum_{u=2}^{t} (x_{u-1} - x_u) * v_u (lower) or v_{u-1} (upper)
    prefix_.assign(s + 2, Rational(0));
    for (std::size_t u = 2; u <= s + 1; ++u) {
      const Rational& v = eq == Equilibrium::lower ? inst.value(u) : inst.value(u - 1);
      prefix_[u] = prefix_[u - 1] + (inst.ctr(u - 1) - inst.ctr(u)) * v;
    }
    const BidProfile bids = equilibrium_bids(inst, eq);
    trailing_.assign(s + 2, Rational(0));
    for (std::size_t j = 1; j <= s + 1; ++j) trailing_[j] = bids.bid(j + 1);
  }

  bool deviates(std::size_t k, std::size_t j) const {
    if (j == k + 1) return true;
    if (eq_ == Equilibrium::upper && j == k + 2 && k < inst_.s()) return true;
    const Rational a = inst_.ctr(j - 1) - inst_.ctr(j);
    const Rational sum = inst_.value(k) * (inst_.ctr(k) - inst_.ctr(j - 1)) - (prefix_[j - 1] - prefix_[k]);
    const Rational& pivot = eq_ == Equilibrium::lower ? inst_.value(j) : inst_.value(j - 1);
    return sum < a * (pivot - trailing_[j]);
  }

  /// deviating[k][j] for 1 <= k < j <= s+1.
  std::vector<std::vector<bool>> matrix() const {
    const std::size_t top = inst_.s() + 1;
    std::vector<std::vector<bool>> out(top + 1, std::vector<bool>(top + 1, false));
    for (std::size_t k = 1; k < top; ++k)
      for (std::size_t j = k + 1; j <= top; ++j) out[k][j] = deviates(k, j);
    return out;
  }

  std::uint64_t count() const {
    std::uint64_t total = 0;
    const std::size_t top = inst_.s() + 1;
    for (std::size_t k = 1; k < top; ++k)
      for (std::size_t j = k + 1; j <= top; ++j) total += deviates(k, j) ? 1 : 0;
    return total;
  }

 private:
  AuctionInstance inst_;
  Equilibrium eq_;
  std::vector<Rational> prefix_;
  std::vector<Rational> trailing_;
};

/// Number of pairs among the top s+1 bidders with a deviation.
inline std::uint64_t count_pair_deviations(const AuctionInstance& inst, Equilibrium eq) {
  return PairScanner(inst, eq).count();
}

}  // namespace stabscore::auction
