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
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "stabscore/adauction/pairs.hpp"
#include "stabscore/adauction/vcg.hpp"
#include "stabscore/game_core.hpp"
#include "stabscore/parallel.hpp"

namespace stabscore::auction {

/// Bidders are 1-based value ranks, sorted ascending.
using BidderSet = std::vector<std::size_t>;

/// A coalition can only profit under VCG if it is either r winners, or
/// t >= 1 winners together with the first r - t losers s+1, ..., s+r-t.
inline bool is_potential_coalition(const BidderSet& members, std::size_t s, std::size_t n) {
  if (members.empty()) return false;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] < 1 || members[i] > n) return false;
    if (i > 0 && members[i] <= members[i - 1]) return false;
  }
  const std::size_t winners = static_cast<std::size_t>(
      std::count_if(members.begin(), members.end(), [&](std::size_t b) { return b <= s; }));
  if (winners == members.size()) return true;
  if (winners == 0) return false;
  for (std::size_t i = winners; i < members.size(); ++i)
    if (members[i] != s + 1 + (i - winners)) return false;
  return true;
}

/// M_r = sum_{t=1}^{r} C(s, t).
inline std::uint64_t potential_count(std::size_t s, std::size_t r) {
  std::uint64_t total = 0;
  for (std::size_t t = 1; t <= std::min(r, s); ++t) total += binomial(s, t);
  return total;
}

/// Potential coalitions of size r that fit among n bidders: all-winner sets
/// first, then mixed sets by increasing winner count.
inline std::vector<BidderSet> potential_coalitions(std::size_t s, std::size_t n, std::size_t r) {
  detail::require(r >= 1, "coalition size must be positive");
  std::vector<BidderSet> out;
  auto lift = [](std::vector<std::size_t> zero_based) {
    for (auto& b : zero_based) ++b;
    return zero_based;
  };
  if (r <= s)
    for (auto& c : coalitions_of_size(s, r)) out.push_back(lift(std::move(c)));
  for (std::size_t t = 1; t < r && t <= s; ++t) {
    if (s + (r - t) > n) continue;
    for (auto& c : coalitions_of_size(s, t)) {
      BidderSet set = lift(std::move(c));
      for (std::size_t l = 1; l <= r - t; ++l) set.push_back(s + l);
      out.push_back(std::move(set));
    }
  }
  return out;
}

/// The shading construction that makes a potential coalition profit under
/// truthful VCG, together with its verification.
struct VcgCoalitionDeviation {
  std::vector<Rational> reports;  // full report vector, one per bidder
  std::size_t indifferent = 0;    // lowest-value member
  std::vector<Rational> utility_before;
  std::vector<Rational> utility_after;  // per member, same order as the coalition
  bool allocation_unchanged = false;
  bool indifferent_unharmed = false;
  bool others_strictly_gain = false;  // winners other than the indifferent member gain, losers are unharmed
  bool someone_gains = false;

  bool deviates() const {
    return allocation_unchanged && indifferent_unharmed && others_strictly_gain && someone_gains;
  }
};

/// Every member i reports the midpoint of (v_{i+1}, v_i).
inline VcgCoalitionDeviation vcg_coalition_deviation(const AuctionInstance& inst, const BidderSet& members) {
  detail::require_contract(is_potential_coalition(members, inst.s(), inst.n()),
                           "coalition is not a potential coalition");
  VcgCoalitionDeviation out;
  out.reports = inst.values();
  for (std::size_t b : members) out.reports[b - 1] = midpoint(inst.value(b), inst.value(b + 1));
  out.indifferent = members.back();
  const SlotOutcome before = vcg_truthful(inst);
  const SlotOutcome after = vcg_outcome(inst, out.reports);
  out.allocation_unchanged = before.slot == after.slot;
  out.others_strictly_gain = true;
  for (std::size_t b : members) {
    out.utility_before.push_back(before.utility_of(b));
    out.utility_after.push_back(after.utility_of(b));
    if (after.utility_of(b) > before.utility_of(b)) out.someone_gains = true;
    if (b == out.indifferent) {
      out.indifferent_unharmed = after.utility_of(b) >= before.utility_of(b);
    } else if (b <= inst.s() && !(after.utility_of(b) > before.utility_of(b))) {
      out.others_strictly_gain = false;
    } else if (after.utility_of(b) < before.utility_of(b)) {
      out.others_strictly_gain = false;
    }
  }
  return out;
}

/// A coalition deviates from a GSP equilibrium iff it contains a deviating pair.
/// Losers s+1, s+2, ... dropping together can push a price below what any
/// pair reaches, so sets holding both s+1 and s+2 may deviate when this says no.
inline bool coalition_deviates(const AuctionInstance& inst, Equilibrium eq, const BidderSet& members) {
  detail::require_contract(is_potential_coalition(members, inst.s(), inst.n()),
                           "coalition is not a potential coalition");
  const std::size_t top = inst.s() + 1;
  for (std::size_t a = 0; a < members.size(); ++a)
    for (std::size_t b = a + 1; b < members.size(); ++b)
      if (members[b] <= top && pair_deviates(inst, eq, members[a], members[b])) return true;
  return false;
}

struct CoalitionCountOptions {
  std::size_t workers = default_workers();
};

/// D_r over potential coalitions, via the pair reduction.
inline std::uint64_t count_coalition_deviations(const AuctionInstance& inst, Equilibrium eq, std::size_t r,
                                                const CoalitionCountOptions& options = {}) {
  const auto deviating = PairScanner(inst, eq).matrix();
  const std::size_t top = inst.s() + 1;
  const auto sets = potential_coalitions(inst.s(), inst.n(), r);
  std::atomic<std::uint64_t> total{0};
  parallel_for(sets.size(), options.workers, [&](std::size_t begin, std::size_t end) {
    std::uint64_t local = 0;
    for (std::size_t idx = begin; idx < end; ++idx) {
      const auto& m = sets[idx];
      bool hit = false;
      for (std::size_t a = 0; a < m.size() && !hit; ++a)
        for (std::size_t b = a + 1; b < m.size() && !hit; ++b)
          hit = m[b] <= top && deviating[m[a]][m[b]];
      local += hit ? 1 : 0;
    }
    total += local;
  });
  return total.load();
}

/// D_r of truthful VCG over potential coalitions, each checked by running
/// the shading construction through the mechanism.
inline std::uint64_t count_vcg_coalition_deviations(const AuctionInstance& inst, std::size_t r,
                                                    const CoalitionCountOptions& options = {}) {
  const auto sets = potential_coalitions(inst.s(), inst.n(), r);
  std::atomic<std::uint64_t> total{0};
  parallel_for(sets.size(), options.workers, [&](std::size_t begin, std::size_t end) {
    std::uint64_t local = 0;
    for (std::size_t idx = begin; idx < end; ++idx) local += vcg_coalition_deviation(inst, sets[idx]).deviates() ? 1 : 0;
    total += local;
  });
  return total.load();
}

}  // namespace stabscore::auction
