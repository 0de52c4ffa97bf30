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

#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "stabscore/reserve.hpp"
#include "support/oracles.hpp"

namespace stabscore::reserve {
namespace {

using auction::AuctionInstance;

AuctionInstance three() { return AuctionInstance({Rational(10), Rational(6), Rational(2)}, {Rational(2), Rational(1)}); }

// Small integer values so the uniform-grid oracle stays cheap.
AuctionInstance random_integer_instance(std::mt19937_64& rng, std::size_t s, std::size_t n) {
  std::set<int> v, x;
  while (v.size() < n) v.insert(1 + static_cast<int>(rng() % 12));
  while (x.size() < s) x.insert(1 + static_cast<int>(rng() % 9));
  std::vector<Rational> values(v.rbegin(), v.rend()), ctrs(x.rbegin(), x.rend());
  return AuctionInstance(values, ctrs);
}

TEST(FixedReserve, ModesDifferOnSmallInstance) {
  const auto inst = three();
  const auto filtered = reserve_vcg(inst, ReserveConfig{Rational(3)}, ReserveMode::filtered);
  const auto clamped = reserve_vcg(inst, ReserveConfig{Rational(3)}, ReserveMode::clamped);
  EXPECT_EQ(filtered.price, (std::vector<Rational>{Rational(9, 2), Rational(3)}));
  EXPECT_EQ(clamped.price, (std::vector<Rational>{Rational(4), Rational(3)}));
  EXPECT_EQ(filtered.slot, clamped.slot);
  EXPECT_EQ(filtered.utility_of(1), 11);
  EXPECT_EQ(clamped.utility_of(1), 12);
}

TEST(FixedReserve, ZeroReserveIsPlainVcg) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    const std::size_t s = 1 + rng() % 6;
    const auto inst = oracle::random_instance(rng, s, std::max<std::size_t>(2, s + rng() % 3));
    for (auto mode : {ReserveMode::filtered, ReserveMode::clamped}) {
      const auto out = reserve_vcg(inst, ReserveConfig{Rational(0)}, mode);
      EXPECT_EQ(out.price, oracle::clarke_prices(inst.values(), inst.ctrs()));
    }
  }
}

TEST(FixedReserveProperty, FilteredMatchesPhantomBidders) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 300; ++t) {
    const std::size_t s = 1 + rng() % 6;
    const auto inst = oracle::random_instance(rng, s, std::max<std::size_t>(2, s + rng() % 3));
    const Rational c = ratio(static_cast<long>(rng() % 1200), 10);
    const auto out = reserve_vcg(inst, ReserveConfig{c}, ReserveMode::filtered);
    EXPECT_EQ(out.price, oracle::clarke_prices(inst.values(), inst.ctrs(), c));
    for (std::size_t i = 1; i <= inst.n(); ++i) {
      EXPECT_GE(out.utility_of(i), 0);
      EXPECT_EQ(out.slot_of(i) != 0, i <= s && inst.value(i) >= c);
    }
  }
}

TEST(FixedReserveProperty, ClampedRaisesVcgPricesToTheReserve) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 300; ++t) {
    const std::size_t s = 1 + rng() % 6;
    const auto inst = oracle::random_instance(rng, s, std::max<std::size_t>(2, s + rng() % 3));
    const Rational c = ratio(static_cast<long>(rng() % 1200), 10);
    const auto plain = oracle::clarke_prices(inst.values(), inst.ctrs());
    const auto out = reserve_vcg(inst, ReserveConfig{c}, ReserveMode::clamped);
    for (std::size_t j = 0; j < out.price.size(); ++j) EXPECT_EQ(out.price[j], std::max(c, plain[j]));
    // Filtering only ever charges at least as much.
    const auto filtered = reserve_vcg(inst, ReserveConfig{c}, ReserveMode::filtered);
    ASSERT_EQ(filtered.price.size(), out.price.size());
    for (std::size_t j = 0; j < out.price.size(); ++j) EXPECT_GE(filtered.price[j], out.price[j]);
  }
}

TEST(FixedReserve, RejectsNegativeReserve) {
  EXPECT_THROW(reserve_vcg(three(), ReserveConfig{Rational(-1)}, ReserveMode::filtered), InvalidInput);
}

TEST(VcgStar, ExpectedUtilityMatchesUniformGridIntegration) {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 40; ++t) {
    const std::size_t s = 1 + rng() % 3;
    const auto inst = random_integer_instance(rng, s, std::max<std::size_t>(2, s + rng() % 2));
    const Rational q = ratio(static_cast<long>(rng() % 5), 4);
    const auto cfg = VcgStarConfig::for_instance(inst, q);
    EXPECT_EQ(expected_utilities_vcg_star(inst, cfg, inst.values()).utility,
              oracle::star_expected_utility(inst, inst.values(), q, cfg.vmax));
    // A random joint misreport on half-integers below vmax.
    std::vector<Rational> reports;
    const long top = 4 * inst.value(1).get_num().get_si();
    for (std::size_t i = 0; i < inst.n(); ++i) reports.push_back(ratio(static_cast<long>(rng() % top), 2));
    if (std::set<Rational>(reports.begin(), reports.end()).size() < reports.size()) continue;
    EXPECT_EQ(expected_utilities_vcg_star(inst, cfg, reports).utility,
              oracle::star_expected_utility(inst, reports, q, cfg.vmax));
  }
}

TEST(VcgStar, NoRandomReserveIsPlainVcg) {
  const auto inst = three();
  const auto cfg = VcgStarConfig::for_instance(inst, Rational(0));
  EXPECT_EQ(expected_utilities_vcg_star(inst, cfg, inst.values()).utility,
            auction::vcg_truthful(inst).utility);
  EXPECT_EQ(cfg.vmax, 20);
  const auto rep = expected_utilities_vcg_star(inst, cfg, inst.values());
  EXPECT_EQ(rep.breakpoints, (std::vector<Rational>{0, 2, 6, 10, 20}));
}

TEST(VcgStar, ConfigValidation) {
  const auto inst = three();
  VcgStarConfig bad{Rational(3, 2), Rational(20)};
  EXPECT_THROW(expected_utilities_vcg_star(inst, bad, inst.values()), InvalidInput);
  VcgStarConfig low{Rational(1, 2), Rational(10)};
  EXPECT_THROW(expected_utilities_vcg_star(inst, low, inst.values()), InvalidInput);
}

TEST(MisreportGrid, ContainsValuesAndRefines) {
  const AuctionInstance inst({Rational(7), Rational(4), Rational(2)}, {Rational(5), Rational(3), Rational(2)});
  const auto cfg = VcgStarConfig::for_instance(inst, Rational(1, 2));
  std::size_t previous = 0;
  for (unsigned level = 0; level <= 2; ++level) {
    const auto grid = misreport_grid(inst, cfg, level);
    EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
    EXPECT_EQ(std::set<Rational>(grid.begin(), grid.end()).size(), grid.size());
    for (const auto& v : inst.values()) EXPECT_TRUE(std::binary_search(grid.begin(), grid.end(), v));
    EXPECT_EQ(grid.front(), 0);
    EXPECT_LT(grid.back(), cfg.vmax);
    EXPECT_GT(grid.size(), previous);
    if (level > 0) EXPECT_EQ(grid.size(), 2 * previous - 1);
    previous = grid.size();
  }
}

TEST(Sse, CertifiedWhenEveryBidderWins) {
  const AuctionInstance inst({Rational(7), Rational(4), Rational(2)}, {Rational(5), Rational(3), Rational(2)});
  const auto verdict = check_truthful_sse(inst, VcgStarConfig::for_instance(inst, Rational(1, 2)));
  EXPECT_EQ(verdict.status, SseStatus::certified_no_deviation_on_grid);
  EXPECT_FALSE(verdict.warning.has_value());
  EXPECT_TRUE(verdict.coalition.empty());
  EXPECT_GT(verdict.examined, 0u);
}

TEST(Sse, DeviationsFoundWithoutRandomReserveOrWithALoser) {
  const AuctionInstance inst({Rational(7), Rational(4), Rational(2)}, {Rational(5), Rational(3), Rational(2)});
  const auto control = check_truthful_sse(inst, VcgStarConfig::for_instance(inst, Rational(0)));
  ASSERT_EQ(control.status, SseStatus::deviation_found);
  // The reported deviation is genuine: nobody loses, somebody gains.
  bool gain = false;
  for (std::size_t m = 0; m < control.coalition.size(); ++m) {
    EXPECT_GE(control.deviation_utility[m], control.truthful_utility[m]);
    gain = gain || control.deviation_utility[m] > control.truthful_utility[m];
  }
  EXPECT_TRUE(gain);
  const auto cfg = VcgStarConfig::for_instance(inst, Rational(0));
  const auto recheck = expected_utilities_vcg_star(inst, cfg, control.reports).utility;
  for (std::size_t m = 0; m < control.coalition.size(); ++m)
    EXPECT_EQ(recheck[control.coalition[m] - 1], control.deviation_utility[m]);

  const AuctionInstance four({Rational(7), Rational(4), Rational(2), Rational(1)},
                             {Rational(5), Rational(3), Rational(2)});
  const auto verdict = check_truthful_sse(four, VcgStarConfig::for_instance(four, Rational(1, 2)));
  ASSERT_EQ(verdict.status, SseStatus::deviation_found);
  EXPECT_TRUE(verdict.warning.has_value());
  EXPECT_EQ(verdict.coalition.back(), 4u);
}

TEST(SseProperty, NoUnilateralGainOnRandomInstances) {
  std::mt19937_64 rng(35);
  for (int t = 0; t < 15; ++t) {
    const std::size_t s = 1 + rng() % 3;
    const auto inst = oracle::random_instance(rng, s, std::max<std::size_t>(2, s + rng() % 2));
    SseOptions opts;
    opts.max_coalition = 1;
    const auto verdict = check_truthful_sse(inst, VcgStarConfig::for_instance(inst, Rational(1, 3)), opts);
    EXPECT_EQ(verdict.status, SseStatus::certified_no_deviation_on_grid);
    EXPECT_TRUE(verdict.truncated);
  }
}

TEST(SseProperty, WorkerCountDoesNotChangeTheVerdict) {
  const AuctionInstance four({Rational(7), Rational(4), Rational(2), Rational(1)},
                             {Rational(5), Rational(3), Rational(2)});
  const auto cfg = VcgStarConfig::for_instance(four, Rational(1, 4));
  SseOptions one, many;
  one.workers = 1;
  many.workers = 4;
  const auto a = check_truthful_sse(four, cfg, one), b = check_truthful_sse(four, cfg, many);
  EXPECT_EQ(a.coalition, b.coalition);
  EXPECT_EQ(a.reports, b.reports);
}

TEST(Lambda, ExtensionShapeAndGap) {
  std::mt19937_64 rng(36);
  for (int t = 0; t < 200; ++t) {
    const std::size_t s = 1 + rng() % 6, n = s + 1 + rng() % 4;
    const auto inst = oracle::random_instance(rng, s, n);
    for (unsigned d : {2u, 4u, 10u}) {
      const Rational lambda = ratio(1, d * n);
      const auto ext = vcg_star_lambda(inst, LambdaConfig{lambda});
      ASSERT_EQ(ext.ctrs.size(), n);
      EXPECT_TRUE(ext.slot_order_preserved);
      Rational total(0), base(0);
      for (const auto& x : ext.ctrs) total += x;
      for (const auto& x : inst.ctrs()) base += x;
      EXPECT_EQ(total, base);
      for (std::size_t j = s + 1; j <= n; ++j) EXPECT_EQ(ext.ctrs[j - 1], lambda * inst.ctr(s));
      for (std::size_t i = 1; i <= s; ++i) {
        const Rational gap = abs(ext.prices[i - 1] - ext.base_prices[i - 1]) * inst.ctr(i);
        EXPECT_LE(gap, inst.value(1) * static_cast<unsigned long>(n) * lambda * inst.ctr(1));
      }
      EXPECT_NO_THROW(ext.extended(inst));
    }
  }
  const auto inst = three();
  EXPECT_THROW(vcg_star_lambda(inst, LambdaConfig{Rational(1, 3)}), InvalidInput);
  EXPECT_THROW(vcg_star_lambda(inst, LambdaConfig{Rational(0)}), InvalidInput);
}

TEST(Lambda, PricesApproachVcgAsLambdaShrinks) {
  const auto inst = three();
  Rational previous(-1);
  for (unsigned long d = 4; d <= 4096; d *= 4) {
    const auto ext = vcg_star_lambda(inst, LambdaConfig{ratio(1, d)});
    const Rational gap = abs(ext.prices[0] - ext.base_prices[0]) + abs(ext.prices[1] - ext.base_prices[1]);
    if (previous >= 0) EXPECT_LT(gap, previous);
    previous = gap;
  }
}

}  // namespace
}  // namespace stabscore::reserve
