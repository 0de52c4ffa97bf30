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
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "stabscore/adauction/instance.hpp"

namespace stabscore::auction {

enum class Equilibrium { lower, upper };

inline const char* to_string(Equilibrium eq) { return eq == Equilibrium::lower ? "le" : "ue"; }

/// Generalized second price: slot j goes to the j-th highest bid and
/// costs the (j+1)-th highest bid per click.
inline SlotOutcome gsp_outcome(const AuctionInstance& inst, std::span<const Rational> bids,
                               TieBreak tie = TieBreak::reject) {
  detail::require(bids.size() == inst.n(), "one bid per bidder required");
  for (const auto& b : bids) detail::require(b >= 0, "bids must be nonnegative");
  SlotOutcome out;
  out.ranking = impl::rank_by_bid(bids, tie);
  const std::size_t winners = std::min(inst.s(), inst.n());
  out.slot.assign(inst.n(), 0);
  out.utility.assign(inst.n(), Rational(0));
  out.price.resize(winners);
  for (std::size_t j = 1; j <= winners; ++j) {
    const std::size_t b = out.ranking[j - 1];
    out.price[j - 1] = j < inst.n() ? bids[out.ranking[j] - 1] : Rational(0);
    out.slot[b - 1] = j;
    out.utility[b - 1] = (inst.value(b) - out.price[j - 1]) * inst.ctr(j);
  }
  return out;
}

inline SlotOutcome gsp_outcome(const AuctionInstance& inst, const BidProfile& bids, TieBreak tie = TieBreak::reject) {
  return gsp_outcome(inst, bids.bids, tie);
}

namespace impl {

inline BidProfile symmetric_bids(const AuctionInstance& inst, Equilibrium eq) {
  inst.require_loser();
  const std::size_t s = inst.s();
  BidProfile out;
  out.bids = inst.values();
  for (std::size_t i = 2; i <= s + 1; ++i) {
    Rational sum(0);
    for (std::size_t j = i; j <= s + 1; ++j) {
      const Rational& v = eq == Equilibrium::lower ? inst.value(j) : inst.value(j - 1);
      sum += v * (inst.ctr(j - 1) - inst.ctr(j));
    }
    out.bids[i - 1] = sum / inst.ctr(i - 1);
  }
  // With one slot the upper recursion gives b_2 = v_1; lift the top bid by
  // the value gap so the order stays strict.
  if (out.bids[0] <= out.bids[1]) out.bids[0] = out.bids[1] + (inst.value(1) - inst.value(2));
  for (std::size_t i = 1; i < out.bids.size(); ++i)
    if (!(out.bids[i] < out.bids[i - 1])) throw std::logic_error("equilibrium bids are not strictly decreasing");
  return out;
}

}  // namespace impl

/// Lower envy-free equilibrium: b_i x_{i-1} = sum_{j=i}^{s+1} v_j (x_{j-1} - x_j).
/// The top bid is v_1 and losers below rank s+1 bid their values.
inline BidProfile le_bids(const AuctionInstance& inst) { return impl::symmetric_bids(inst, Equilibrium::lower); }

/// Upper envy-free equilibrium: b_i x_{i-1} = sum_{j=i}^{s+1} v_{j-1} (x_{j-1} - x_j).
inline BidProfile ue_bids(const AuctionInstance& inst) { return impl::symmetric_bids(inst, Equilibrium::upper); }

inline BidProfile equilibrium_bids(const AuctionInstance& inst, Equilibrium eq) {
  return impl::symmetric_bids(inst, eq);
}

/// No bidder prefers any other slot at that slot's current price:
/// x_i (v - p_i) >= x_j (v - p_j) for the bidder in slot i and every slot j.
inline bool verify_symmetric_ne(const AuctionInstance& inst, std::span<const Rational> bids,
                                TieBreak tie = TieBreak::reject) {
  const SlotOutcome out = gsp_outcome(inst, bids, tie);
  const std::size_t winners = out.price.size();
  for (std::size_t r = 1; r <= inst.n(); ++r) {
    const std::size_t b = out.ranking[r - 1];
    const Rational v = inst.value(b);
    const Rational own = r <= winners ? (v - out.price[r - 1]) * inst.ctr(r) : Rational(0);
    for (std::size_t j = 1; j <= winners; ++j) {
      if (j == r) continue;
      if (own < (v - out.price[j - 1]) * inst.ctr(j)) return false;
    }
  }
  return true;
}

inline bool verify_symmetric_ne(const AuctionInstance& inst, const BidProfile& bids, TieBreak tie = TieBreak::reject) {
  return verify_symmetric_ne(inst, bids.bids, tie);
}

enum class WitnessCase {
  raise_bid,  // v_i > c > b_i: the bidder loses its slot unless it bids up
  lower_bid,  // v_i < c < b_i: the bidder pays more than the slot is worth
};

inline const char* to_string(WitnessCase w) { return w == WitnessCase::raise_bid ? "raise_bid" : "lower_bid"; }

struct ReserveWitness {
  std::size_t bidder = 0;
  WitnessCase kind = WitnessCase::raise_bid;
};

/// First bidder whose equilibrium bid stops being a best response once a
/// fixed reserve c is added to GSP.
inline std::optional<ReserveWitness> gsp_reserve_witness(const AuctionInstance& inst, const BidProfile& bids,
                                                         const Rational& c) {
  detail::require(c >= 0, "reserve price must be nonnegative");
  detail::require_contract(verify_symmetric_ne(inst, bids), "bids must form a symmetric equilibrium");
  for (std::size_t i = 1; i <= inst.n(); ++i) {
    const Rational v = inst.value(i);
    const Rational b = bids.bid(i);
    if (v > c && c > b) return ReserveWitness{i, WitnessCase::raise_bid};
    if (v < c && c < b) return ReserveWitness{i, WitnessCase::lower_bid};
  }
  return std::nullopt;
}

}  // namespace stabscore::auction
