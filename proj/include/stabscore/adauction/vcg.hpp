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
#include <span>
#include <vector>

#include "stabscore/adauction/instance.hpp"

namespace stabscore::auction {

/// Truthful VCG prices for slots 1..s:
///   p_i = sum_{j=i+1}^{s+1} ((x_{j-1} - x_j) / x_i) * v_j
inline std::vector<Rational> vcg_payments(const AuctionInstance& inst) {
  std::vector<Rational> out(inst.s());
  for (std::size_t i = 1; i <= inst.s(); ++i) {
    Rational sum(0);
    for (std::size_t j = i + 1; j <= inst.s() + 1; ++j)
      sum += (inst.ctr(j - 1) - inst.ctr(j)) / inst.ctr(i) * inst.value(j);
    out[i - 1] = sum;
  }
  return out;
}

/// Same prices by the backward recursion p_s = v_{s+1},
/// p_{i-1} = w_i v_i + (1 - w_i) p_i, where w_i = (x_{i-1} - x_i) / x_{i-1}
/// is the share of clicks lost by dropping from slot i-1 to slot i.
inline std::vector<Rational> vcg_payments_recursive(const AuctionInstance& inst) {
  const std::size_t s = inst.s();
  std::vector<Rational> out(s);
  out[s - 1] = inst.value(s + 1);
  for (std::size_t i = s; i >= 2; --i) {
    const Rational lost = (inst.ctr(i - 1) - inst.ctr(i)) / inst.ctr(i - 1);
    out[i - 2] = lost * inst.value(i) + (1 - lost) * out[i - 1];
  }
  return out;
}

/// VCG on arbitrary reports (ties rejected); utilities use true values.
inline SlotOutcome vcg_outcome(const AuctionInstance& inst, std::span<const Rational> reports) {
  detail::require(reports.size() == inst.n(), "one report per bidder required");
  SlotOutcome out;
  out.ranking = impl::rank_by_bid(reports, TieBreak::reject);
  std::vector<Rational> ranked;
  ranked.reserve(reports.size());
  for (std::size_t b : out.ranking) ranked.push_back(reports[b - 1]);
  out.price = vcg_prices(inst.ctrs(), ranked);
  out.slot.assign(inst.n(), 0);
  out.utility.assign(inst.n(), Rational(0));
  for (std::size_t j = 1; j <= out.price.size(); ++j) {
    const std::size_t b = out.ranking[j - 1];
    out.slot[b - 1] = j;
    out.utility[b - 1] = (inst.value(b) - out.price[j - 1]) * inst.ctr(j);
  }
  return out;
}

inline SlotOutcome vcg_truthful(const AuctionInstance& inst) { return vcg_outcome(inst, inst.values()); }

}  // namespace stabscore::auction
