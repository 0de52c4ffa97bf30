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
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "stabscore/errors.hpp"
#include "stabscore/rational.hpp"

// Position auctions. Bidders are identified by their value rank 1..n
// (bidder 1 has the highest value) and slots by 1..s; the 1-based indexing
// keeps the payment and bid recursions readable.
namespace stabscore::auction {

enum class CtrOrder {
  strict,         // x_1 > x_2 > ... > x_s > 0
  nonincreasing,  // allows equal expected CTRs (slot-randomized extensions)
};

class AuctionInstance {
 public:
  AuctionInstance(std::vector<Rational> values, std::vector<Rational> ctrs, CtrOrder order = CtrOrder::strict)
      : v_(std::move(values)), x_(std::move(ctrs)) {
    detail::require(v_.size() >= 2, "an auction needs at least two bidders");
    detail::require(!x_.empty(), "an auction needs at least one slot");
    for (std::size_t i = 0; i < v_.size(); ++i) {
      detail::require(v_[i] >= 0, "values must be nonnegative");
      if (i > 0) detail::require(v_[i] < v_[i - 1], "values must be strictly decreasing");
    }
    for (std::size_t j = 0; j < x_.size(); ++j) {
      detail::require(x_[j] > 0, "click-through rates must be positive");
      if (j > 0) {
        if (order == CtrOrder::strict)
          detail::require(x_[j] < x_[j - 1], "click-through rates must be strictly decreasing");
        else
          detail::require(x_[j] <= x_[j - 1], "click-through rates must be nonincreasing");
      }
    }
  }

  std::size_t s() const { return x_.size(); }
  std::size_t n() const { return v_.size(); }

  /// v_i for i >= 1; zero beyond the last bidder.
  Rational value(std::size_t i) const {
    detail::require(i >= 1, "bidder ranks start at 1");
    return i <= v_.size() ? v_[i - 1] : Rational(0);
  }

  /// x_j for j >= 1; zero beyond the last slot.
  Rational ctr(std::size_t j) const {
    detail::require(j >= 1, "slot indices start at 1");
    return j <= x_.size() ? x_[j - 1] : Rational(0);
  }

  const std::vector<Rational>& values() const { return v_; }
  const std::vector<Rational>& ctrs() const { return x_; }

  /// GSP equilibria and pair analysis need at least one loser.
  void require_loser() const {
    detail::require(n() > s(), "this operation needs n > s bidders");
  }

 private:
  std::vector<Rational> v_;
  std::vector<Rational> x_;
};

/// Bids indexed by bidder; bid(i) is zero for i > n.
struct BidProfile {
  std::vector<Rational> bids;

  Rational bid(std::size_t i) const {
    detail::require(i >= 1, "bidder ranks start at 1");
    return i <= bids.size() ? bids[i - 1] : Rational(0);
  }
};

/// Result of running a slot mechanism. Prices are per click.
struct SlotOutcome {
  std::vector<std::size_t> ranking;  // ranking[r-1] = bidder placed at rank r
  std::vector<std::size_t> slot;     // slot[i-1] = slot of bidder i, 0 when unallocated
  std::vector<Rational> price;       // price[j-1] = per-click price of slot j (allocated slots only)
  std::vector<Rational> utility;     // utility[i-1] = (v_i - price) * x_slot, 0 for losers

  std::size_t slot_of(std::size_t bidder) const { return slot.at(bidder - 1); }
  const Rational& utility_of(std::size_t bidder) const { return utility.at(bidder - 1); }
};

enum class TieBreak {
  reject,    // equal bids raise TieError
  by_index,  // equal bids are ordered by bidder index, lower first
};

namespace impl {

/// Bidders sorted by decreasing bid.
inline std::vector<std::size_t> rank_by_bid(std::span<const Rational> bids, TieBreak tie) {
  std::vector<std::size_t> order(bids.size());
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return bids[a - 1] > bids[b - 1]; });
  if (tie == TieBreak::reject) {
    for (std::size_t r = 1; r < order.size(); ++r)
      if (bids[order[r] - 1] == bids[order[r - 1] - 1])
        throw TieError("bidders " + std::to_string(order[r - 1]) + " and " + std::to_string(order[r]) +
                       " submitted equal bids");
  }
  return order;
}

}  // namespace impl

/// Per-click VCG prices for ranks 1..min(slots, bidders) given reports
/// already sorted in decreasing order. Ranks without a bidder take
/// `outside` as their report. Works for nonincreasing CTRs.
inline std::vector<Rational> vcg_prices(std::span<const Rational> ctrs, std::span<const Rational> ranked_reports,
                                        const Rational& outside = Rational(0)) {
  const std::size_t s = ctrs.size();
  const std::size_t winners = std::min(s, ranked_reports.size());
  auto x = [&](std::size_t j) { return j <= s ? ctrs[j - 1] : Rational(0); };
  auto r = [&](std::size_t j) { return j <= ranked_reports.size() ? ranked_reports[j - 1] : outside; };
  std::vector<Rational> out(winners);
  for (std::size_t i = 1; i <= winners; ++i) {
    Rational welfare(0);
    for (std::size_t j = i + 1; j <= s + 1; ++j) welfare += (x(j - 1) - x(j)) * r(j);
    out[i - 1] = welfare / x(i);
  }
  return out;
}

}  // namespace stabscore::auction
