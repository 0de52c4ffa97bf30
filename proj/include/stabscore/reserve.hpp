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
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "stabscore/adauction.hpp"
#include "stabscore/game_core.hpp"
#include "stabscore/parallel.hpp"

// VCG with a fixed reserve, VCG with a random reserve drawn before reports
// are revealed, and its slot-randomized extension.
namespace stabscore::reserve {

using auction::AuctionInstance;
using auction::BidderSet;
using auction::SlotOutcome;

enum class ReserveMode {
  filtered,  // drop reports below c, run VCG on the rest with c as the outside value
  clamped,   // run plain VCG, survivors pay max(c, p_i)
};

inline const char* to_string(ReserveMode m) { return m == ReserveMode::filtered ? "filtered" : "clamped"; }

struct ReserveConfig {
  Rational c = 0;
};

/// Utilities are evaluated at true values; allocation and prices follow the reports.
inline SlotOutcome reserve_vcg(const AuctionInstance& inst, const ReserveConfig& cfg, ReserveMode mode,
                               std::span<const Rational> reports) {
  detail::require(cfg.c >= 0, "reserve price must be nonnegative");
  detail::require(reports.size() == inst.n(), "one report per bidder required");
  if (mode == ReserveMode::clamped) {
    SlotOutcome out = auction::vcg_outcome(inst, reports);
    for (std::size_t j = 1; j <= out.price.size(); ++j) {
      const std::size_t b = out.ranking[j - 1];
      if (reports[b - 1] >= cfg.c) {
        out.price[j - 1] = std::max(cfg.c, out.price[j - 1]);
        out.utility[b - 1] = (inst.value(b) - out.price[j - 1]) * inst.ctr(j);
      } else {
        out.slot[b - 1] = 0;
        out.utility[b - 1] = 0;
      }
    }
    std::size_t kept = 0;
    while (kept < out.price.size() && out.slot[out.ranking[kept] - 1] != 0) ++kept;
    out.price.resize(kept);
    return out;
  }
  SlotOutcome out;
  out.ranking = auction::impl::rank_by_bid(reports, auction::TieBreak::reject);
  std::vector<Rational> ranked;
  for (std::size_t b : out.ranking)
    if (reports[b - 1] >= cfg.c) ranked.push_back(reports[b - 1]);
  out.price = auction::vcg_prices(inst.ctrs(), ranked, cfg.c);
  out.slot.assign(inst.n(), 0);
  out.utility.assign(inst.n(), Rational(0));
  for (std::size_t j = 1; j <= out.price.size(); ++j) {
    const std::size_t b = out.ranking[j - 1];
    out.slot[b - 1] = j;
    out.utility[b - 1] = (inst.value(b) - out.price[j - 1]) * inst.ctr(j);
  }
  return out;
}

inline SlotOutcome reserve_vcg(const AuctionInstance& inst, const ReserveConfig& cfg, ReserveMode mode) {
  return reserve_vcg(inst, cfg, mode, inst.values());
}

/// With probability q_reserve the reserve is uniform on [0, vmax], otherwise 0.
struct VcgStarConfig {
  Rational q_reserve = Rational(1, 2);
  Rational vmax = 0;

  /// vmax defaults to twice the top value.
  static VcgStarConfig for_instance(const AuctionInstance& inst, const Rational& q) {
    return VcgStarConfig{q, 2 * inst.value(1)};
  }

  void validate(std::span<const Rational> reports) const {
    detail::require(q_reserve >= 0 && q_reserve <= 1, "q_reserve must lie in [0, 1]");
    for (const auto& r : reports) {
      detail::require(r >= 0, "reports must be nonnegative");
      detail::require(r < vmax, "vmax must exceed every report");
    }
  }
};

struct ExpectedUtilityReport {
  std::vector<Rational> utility;      // per bidder
  std::vector<Rational> breakpoints;  // 0, the distinct reports inside (0, vmax), vmax
};

/// Utilities are affine in the reserve between consecutive reports, so the
/// integral over each cell is its length times the value at the midpoint.
inline ExpectedUtilityReport expected_utilities_vcg_star(const AuctionInstance& inst, const VcgStarConfig& cfg,
                                                         std::span<const Rational> reports) {
  detail::require(reports.size() == inst.n(), "one report per bidder required");
  cfg.validate(reports);
  ExpectedUtilityReport out;
  std::set<Rational> cuts{Rational(0), cfg.vmax};
  for (const auto& r : reports)
    if (r > 0) cuts.insert(r);
  out.breakpoints.assign(cuts.begin(), cuts.end());
  const SlotOutcome base = reserve_vcg(inst, ReserveConfig{0}, ReserveMode::filtered, reports);
  std::vector<Rational> integral(inst.n(), Rational(0));
  for (std::size_t t = 0; t + 1 < out.breakpoints.size(); ++t) {
    const Rational& lo = out.breakpoints[t];
    const Rational& hi = out.breakpoints[t + 1];
    const SlotOutcome cell = reserve_vcg(inst, ReserveConfig{midpoint(lo, hi)}, ReserveMode::filtered, reports);
    for (std::size_t i = 0; i < inst.n(); ++i) integral[i] += (hi - lo) * cell.utility[i];
  }
  out.utility.resize(inst.n());
  for (std::size_t i = 0; i < inst.n(); ++i)
    out.utility[i] = (1 - cfg.q_reserve) * base.utility[i] + cfg.q_reserve * integral[i] / cfg.vmax;
  return out;
}

inline Rational expected_utility_vcg_star(const AuctionInstance& inst, const VcgStarConfig& cfg,
                                          std::span<const Rational> reports, std::size_t bidder) {
  detail::require(bidder >= 1 && bidder <= inst.n(), "bidder out of range");
  return expected_utilities_vcg_star(inst, cfg, reports).utility[bidder - 1];
}

/// Candidate misreports shared by all bidders: 0, the true values, midpoints
/// between consecutive values (and between the lowest value and 0), v_i +- delta
/// with delta a quarter of the smallest gap, and a point between v_1 and vmax.
/// Each refinement level halves every gap of the previous level.
inline std::vector<Rational> misreport_grid(const AuctionInstance& inst, const VcgStarConfig& cfg,
                                            unsigned refine) {
  std::vector<Rational> anchors = inst.values();
  if (anchors.back() > 0) anchors.push_back(0);
  Rational gap = anchors[0] - anchors[1];
  for (std::size_t i = 1; i + 1 < anchors.size(); ++i) gap = std::min(gap, Rational(anchors[i] - anchors[i + 1]));
  const Rational delta = gap / 4;
  std::set<Rational> pts(anchors.begin(), anchors.end());
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i) pts.insert(midpoint(anchors[i], anchors[i + 1]));
  for (const auto& v : inst.values()) {
    pts.insert(v + delta);
    if (v - delta >= 0) pts.insert(v - delta);
  }
  pts.insert(midpoint(inst.value(1), cfg.vmax));
  std::vector<Rational> grid(pts.begin(), pts.end());
  for (unsigned level = 0; level < refine; ++level) {
    std::vector<Rational> finer;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (i > 0) finer.push_back(midpoint(grid[i - 1], grid[i]));
      finer.push_back(grid[i]);
    }
    grid = std::move(finer);
  }
  return grid;
}

enum class SseStatus { certified_no_deviation_on_grid, deviation_found };

inline const char* to_string(SseStatus s) {
  return s == SseStatus::certified_no_deviation_on_grid ? "certified_no_deviation_on_grid" : "deviation_found";
}

struct SseOptions {
  unsigned refine = 0;
  std::size_t max_coalition = 4;  // sizes above this are skipped and reported as truncated
  std::size_t workers = default_workers();
};

struct SseVerdict {
  SseStatus status = SseStatus::certified_no_deviation_on_grid;
  BidderSet coalition;                  // first deviating coalition, empty when certified
  std::vector<Rational> reports;        // full report vector of the deviation
  std::vector<Rational> truthful_utility;
  std::vector<Rational> deviation_utility;
  std::optional<std::string> warning;
  std::size_t grid_size = 0;
  std::uint64_t examined = 0;
  bool truncated = false;
};

/// Searches coalitions by increasing size (lexicographic within a size) and
/// joint grid misreports (first member slowest) for a weak improvement in
/// expected utility over truth-telling. Joint reports with ties are skipped.
inline SseVerdict check_truthful_sse(const AuctionInstance& inst, const VcgStarConfig& cfg,
                                     const SseOptions& options = {}) {
  SseVerdict verdict;
  if (inst.s() < inst.n())
    verdict.warning = "s < n: the bidder ranked s+1 can act as the indifferent member, so no certificate is expected";
  const auto grid = misreport_grid(inst, cfg, options.refine);
  verdict.grid_size = grid.size();
  const auto truthful = expected_utilities_vcg_star(inst, cfg, inst.values()).utility;
  const std::size_t cap = std::min(inst.n(), options.max_coalition);
  verdict.truncated = cap < inst.n();
  const std::size_t g = grid.size();

  for (std::size_t r = 1; r <= cap; ++r) {
    for (const auto& zero_based : coalitions_of_size(inst.n(), r)) {
      std::uint64_t joints = 1;
      for (std::size_t m = 0; m < r; ++m) joints *= g;
      constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
      const std::size_t workers = std::max<std::size_t>(1, options.workers);
      std::vector<std::uint64_t> first(workers, none);
      std::vector<std::uint64_t> examined(workers, 0);
      const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(joints, workers));
      parallel_for(chunks, workers, [&](std::size_t cb, std::size_t ce) {
        for (std::size_t chunk = cb; chunk < ce; ++chunk) {
          const std::uint64_t begin = joints * chunk / chunks;
          const std::uint64_t end = joints * (chunk + 1) / chunks;
          std::vector<Rational> reports = inst.values();
          for (std::uint64_t code = begin; code < end; ++code) {
            std::uint64_t rest = code;
            for (std::size_t m = r; m-- > 0;) {
              reports[zero_based[m]] = grid[rest % g];
              rest /= g;
            }
            bool honest = true;
            for (std::size_t m : zero_based) honest = honest && reports[m] == inst.values()[m];
            if (honest) continue;
            std::vector<Rational> sorted = reports;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
            ++examined[chunk];
            const auto eu = expected_utilities_vcg_star(inst, cfg, reports).utility;
            bool weak = true;
            bool gain = false;
            for (std::size_t m : zero_based) {
              if (eu[m] < truthful[m]) weak = false;
              if (eu[m] > truthful[m]) gain = true;
            }
            if (weak && gain) {
              first[chunk] = code;
              break;
            }
          }
        }
      });
      for (auto e : examined) verdict.examined += e;
      const auto hit = std::min_element(first.begin(), first.end());
      if (*hit == none) continue;
      verdict.status = SseStatus::deviation_found;
      for (std::size_t m : zero_based) verdict.coalition.push_back(m + 1);
      verdict.reports = inst.values();
      std::uint64_t rest = *hit;
      for (std::size_t m = r; m-- > 0;) {
        verdict.reports[zero_based[m]] = grid[rest % g];
        rest /= g;
      }
      verdict.truthful_utility = truthful;
      verdict.deviation_utility = expected_utilities_vcg_star(inst, cfg, verdict.reports).utility;
      return verdict;
    }
  }
  verdict.truthful_utility = truthful;
  return verdict;
}

struct LambdaConfig {
  Rational lambda;
};

/// Slot s hands probability lambda to each of the n-s bidders below it,
/// giving an n-slot instance in expected CTRs.
struct LambdaExtension {
  std::vector<Rational> ctrs;         // n expected CTRs (s when n <= s)
  std::vector<Rational> prices;       // truthful VCG per-click prices on the extended slots
  std::vector<Rational> base_prices;  // truthful VCG per-click prices without the extension
  bool slot_order_preserved = false;  // the original s slots stay strictly above the new ones

  AuctionInstance extended(const AuctionInstance& inst) const {
    return AuctionInstance(inst.values(), ctrs, auction::CtrOrder::nonincreasing);
  }
};

inline LambdaExtension vcg_star_lambda(const AuctionInstance& inst, const LambdaConfig& cfg) {
  const std::size_t n = inst.n();
  const std::size_t s = inst.s();
  detail::require(cfg.lambda > 0 && cfg.lambda * static_cast<unsigned long>(n) < 1, "lambda must lie in (0, 1/n)");
  LambdaExtension out;
  out.ctrs = inst.ctrs();
  if (n > s) {
    const Rational moved = cfg.lambda * inst.ctr(s);
    out.ctrs[s - 1] = (1 - static_cast<unsigned long>(n - s) * cfg.lambda) * inst.ctr(s);
    for (std::size_t j = s + 1; j <= n; ++j) out.ctrs.push_back(moved);
  }
  out.slot_order_preserved = true;
  for (std::size_t j = 1; j < std::min(out.ctrs.size(), s + 1); ++j)
    if (!(out.ctrs[j] < out.ctrs[j - 1])) out.slot_order_preserved = false;
  detail::require(out.slot_order_preserved, "extended CTRs do not keep the original slots strictly ordered");
  out.prices = auction::vcg_prices(out.ctrs, inst.values());
  out.base_prices = auction::vcg_prices(inst.ctrs(), inst.values());
  return out;
}

}  // namespace stabscore::reserve
