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

// Acceptance run: one PASS/FAIL line per criterion, each with its own time
// limit. Exits nonzero if any criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stabscore/adauction.hpp"
#include "stabscore/game_core.hpp"
#include "stabscore/parallel.hpp"
#include "stabscore/reserve.hpp"
#include "stabscore/srsg.hpp"
#include "support/oracles.hpp"

namespace {

using namespace stabscore;
using auction::AuctionInstance;
using auction::Equilibrium;
using auction::ShapeKind;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  // Records a failed check; the first few messages are kept.
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (ok || failures < 3) detail << (failures ? "; " : "") << what;
    ok = false;
    ++failures;
  }
  int failures = 0;
};

AuctionInstance shaped(ShapeKind v, ShapeKind x, std::size_t s, std::size_t n, const Rational& vb, const Rational& xb) {
  return AuctionInstance(auction::shape_prefix(v, n, Rational(static_cast<unsigned long>(n)), vb),
                         auction::shape_prefix(x, s, Rational(static_cast<unsigned long>(s)), xb));
}

std::string str(const Rational& r) { return to_string(r); }

// ---------------------------------------------------------------------------

void worked_example(Outcome& o) {
  const srsg::SrsgInstance inst(4, 6, 2, srsg::CostFn::linear(6));
  const auto game = *srsg::to_integer_game(inst);
  const std::vector<std::size_t> first{0, 0, 1, 1, 2, 3};
  const auto a = srsg::Assignment::from_rows({first, first});
  const auto b = srsg::Assignment::from_rows({first, {0, 1, 0, 1, 2, 3}});
  const auto c = srsg::Assignment::from_rows({first, {0, 1, 2, 3, 0, 1}});
  const auto sa = score_vector(game, srsg::to_profile(inst, a), DeviationKind::strict, 2);
  const auto sb = score_vector(game, srsg::to_profile(inst, b), DeviationKind::strict, 4);
  const auto sc = score_vector(game, srsg::to_profile(inst, c), DeviationKind::strict, 6);
  o.expect(sa.at(2) == 2, "SD_2(a) = " + std::to_string(sa.at(2)));
  o.expect(sb.at(2) == 0, "SD_2(b) = " + std::to_string(sb.at(2)));
  o.expect(sb.at(4) == 1, "SD_4(b) = " + std::to_string(sb.at(4)));
  for (std::size_t r = 1; r <= 6; ++r) o.expect(sc.at(r) == 0, "SD_" + std::to_string(r) + "(c) nonzero");
  o.expect(!sa.truncated() && !sb.truncated() && !sc.truncated(), "search budget exhausted");

  std::vector<Profile> profiles{srsg::to_profile(inst, a), srsg::to_profile(inst, b), srsg::to_profile(inst, c)};
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    Profile p{std::vector<Action>(6)};
    for (auto& x : p.actions) x = rng() % 16;
    profiles.push_back(p);
  }
  std::uint64_t least = ~std::uint64_t{0};
  for (const auto& p : profiles) least = std::min(least, score_vector(game, p, DeviationKind::weak, 2).at(2));
  o.expect(least >= 2, "min weak D_2 = " + std::to_string(least));
  o.detail << (o.ok ? "" : " | ") << "SD(a)_2=2 SD(b)_2=0 SD(b)_4=1 SD(c)=0; min weak D_2 over 1003 profiles = " << least;
}

void repeat_construction(Outcome& o) {
  std::size_t cases = 0;
  for (std::size_t m = 2; m <= 6; ++m) {
    for (std::size_t n = m + 1; n <= 4 * m; ++n) {
      const srsg::SrsgInstance inst(m, n, 2, srsg::CostFn::linear(n));
      const auto a = srsg::build_repeat_ne(inst);
      const auto expect = inst.q() * oracle::pascal(inst.full_load(), 2);
      const auto structural = srsg::count_pair_deviations(inst, a, srsg::CountMethod::structural);
      const auto brute = srsg::count_pair_deviations(inst, a, srsg::CountMethod::bruteforce);
      const std::string at = "(m,n)=(" + std::to_string(m) + "," + std::to_string(n) + ")";
      o.expect(srsg::is_nash(inst, a), at + " not NE");
      o.expect(structural.count == expect, at + " structural " + std::to_string(structural.count));
      o.expect(brute.count == expect && brute.incomplete == 0, at + " brute force " + std::to_string(brute.count));
      ++cases;
    }
  }
  o.detail << (o.ok ? "" : " | ") << cases << " (m,n) cases, structural and brute force equal q*C(ceil(n/m),2)";
}

void scatter_construction(Outcome& o) {
  struct Point { std::size_t m, n; std::uint64_t count; };
  std::vector<Point> positive;
  std::size_t zero_cases = 0;
  for (std::size_t m = 2; m <= 8; ++m) {
    for (std::size_t n = m + 1; n <= 3 * m * m; ++n) {
      const srsg::SrsgInstance inst(m, n, 2, srsg::CostFn::linear(n));
      const auto a = srsg::build_scatter_ne(inst);
      o.expect(srsg::is_nash(inst, a), "scatter not NE");
      const auto c = srsg::count_pair_deviations(inst, a, srsg::CountMethod::structural).count;
      if (n < m * m || 2 * inst.q() <= m) {
        o.expect(c == 0, "nonzero count at m=" + std::to_string(m) + " n=" + std::to_string(n));
        ++zero_cases;
      } else {
        positive.push_back({m, n, c});
      }
    }
  }
  // One C fitted over the whole grid. The per-m maxima must level off, else C would depend on m.
  std::vector<double> per_m(9, 0.0);
  for (const auto& p : positive) {
    const double ratio = static_cast<double>(p.count) * p.m * p.m / (static_cast<double>(p.n) * p.n);
    per_m[p.m] = std::max(per_m[p.m], ratio);
  }
  const double fitted = *std::max_element(per_m.begin(), per_m.end());
  for (std::size_t m = 6; m <= 8; ++m) {
    const double step = per_m[m] - per_m[m - 1];
    const double prev = per_m[m - 1] - per_m[m - 2];
    o.expect(step < prev, "per-m max ratio not levelling off at m=" + std::to_string(m));
  }
  for (const auto& p : positive)
    o.expect(static_cast<double>(p.count) <= fitted * p.n * p.n / (p.m * p.m) + 1e-9, "bound violated");
  o.detail << (o.ok ? "" : " | ") << zero_cases << " zero cases; C = " << fitted << " over " << positive.size()
           << " positive cases; per-m max for m=3..8:";
  for (std::size_t m = 3; m <= 8; ++m) o.detail << " " << per_m[m];
}

void random_ne_expectation(Outcome& o) {
  struct Case { std::size_t m, n, k; };
  for (const auto& cs : {Case{4, 26, 3}, Case{10, 55, 3}, Case{6, 40, 5}}) {
    const srsg::SrsgInstance inst(cs.m, cs.n, cs.k, srsg::CostFn::linear(cs.n));
    const auto mc = srsg::monte_carlo_pair_deviations(inst, 20000, 7);
    const double exact_beta = to_double(srsg::expected_pair_deviations_exact_beta(inst));
    const std::size_t c = inst.full_load();
    const Rational p = ratio(static_cast<long>(inst.q() * c * (c - 1)), cs.n * (cs.n - 1));
    const Rational miss = pow(1 - p, cs.k) + Rational(static_cast<unsigned long>(cs.k)) * p * pow(1 - p, cs.k - 1);
    const double per_pair = static_cast<double>(oracle::pascal(cs.n, 2)) * to_double(1 - miss);
    const double rel = std::abs(mc.mean - exact_beta) / exact_beta;
    const double z = std::abs(mc.mean - per_pair) / mc.std_error();
    const std::string at = "(" + std::to_string(cs.m) + "," + std::to_string(cs.n) + "," + std::to_string(cs.k) + ")";
    o.expect(rel <= 0.15, at + " off the exact-beta form by " + std::to_string(rel));
    o.expect(z <= 3, at + " " + std::to_string(z) + " standard errors from the per-pair prediction");
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s mean %.3f beta-form %.3f (%.1f%%) per-pair %.3f (%.2f se); ", at.c_str(),
                  mc.mean, exact_beta, 100 * rel, per_pair, z);
    o.detail << buf;
  }
}

void payment_identity(Outcome& o) {
  std::mt19937_64 rng(501);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t s = 1 + rng() % 20, n = s + 1 + rng() % 4;
    const auto inst = oracle::random_instance(rng, s, n);
    const auto vcg = auction::vcg_payments(inst);
    const auto gsp = auction::gsp_outcome(inst, auction::le_bids(inst));
    o.expect(gsp.price == vcg, "GSP at LE differs from VCG at instance " + std::to_string(t));
    o.expect(auction::vcg_payments_recursive(inst) == vcg, "recursion differs at instance " + std::to_string(t));
    o.expect(oracle::clarke_prices(inst.values(), inst.ctrs()) == vcg, "Clarke pivot differs at " + std::to_string(t));
  }
  o.detail << (o.ok ? "" : " | ") << "1000 instances, s <= 20: GSP(LE) = closed form = recursion = Clarke pivot";
}

void pair_delta_oracle(Outcome& o) {
  std::mt19937_64 rng(601);
  std::size_t pairs = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t s = 2 + rng() % 14, n = s + 1 + rng() % 3;
    const auto inst = oracle::random_instance(rng, s, n);
    const auto bids = auction::le_bids(inst).bids;
    for (std::size_t k = 1; k <= s; ++k) {
      for (std::size_t j = k + 1; j <= s + 1; ++j, ++pairs) {
        const Rational direct = oracle::pair_move_delta(inst, bids, k, j);
        const Rational formula = auction::le_utility_delta(inst, k, j);
        o.expect(direct == formula, "pair (" + std::to_string(k) + "," + std::to_string(j) + "): formula " +
                                        str(formula) + " direct " + str(direct));
      }
    }
  }
  o.detail << (o.ok ? "" : " | ") << pairs << " pairs on 100 instances";
}

void value_shape_counts(Outcome& o) {
  // Convex values need convex CTRs and concave values need concave CTRs. Linear CTRs are both.
  for (std::size_t s = 2; s <= 50; ++s) {
    for (auto x : {ShapeKind::linear, ShapeKind::beta_convex}) {
      const auto a = auction::count_pair_deviations(shaped(ShapeKind::beta_convex, x, s, 2 * s, 2, 2), Equilibrium::lower);
      o.expect(a == s, "beta-convex values s=" + std::to_string(s) + ": " + std::to_string(a));
    }
    for (auto x : {ShapeKind::linear, ShapeKind::beta_concave}) {
      const auto b = auction::count_pair_deviations(shaped(ShapeKind::beta_concave, x, s, 2 * s, 2, 2), Equilibrium::lower);
      o.expect(b == oracle::pascal(s + 1, 2), "beta-concave values s=" + std::to_string(s) + ": " + std::to_string(b));
    }
  }
  o.detail << (o.ok ? "" : " | ") << "s = 2..50; convex values with linear and beta-convex CTRs, "
           << "concave values with linear and beta-concave CTRs";
}

void table_trends(Outcome& o) {
  std::vector<double> xs, ys;
  std::uint64_t worst_convex_margin = ~std::uint64_t{0};
  for (std::size_t s = 10; s <= 200; s += 10) {
    const auto lin = shaped(ShapeKind::linear, ShapeKind::linear, s, 2 * s, 2, 2);
    const auto d = auction::count_pair_deviations(lin, Equilibrium::lower);
    xs.push_back(std::log(static_cast<double>(s)));
    ys.push_back(std::log(static_cast<double>(d)));

    const auto cvx = shaped(ShapeKind::linear, ShapeKind::beta_convex, s, 2 * s, 2, 2);
    const auto dc = auction::count_pair_deviations(cvx, Equilibrium::lower);
    const double bound = 10.0 * s * std::log2(static_cast<double>(s));
    o.expect(static_cast<double>(dc) <= bound, "beta-convex CTRs s=" + std::to_string(s) + ": " + std::to_string(dc));
    worst_convex_margin = std::min<std::uint64_t>(worst_convex_margin, static_cast<std::uint64_t>(bound) - dc);

    const auto ccv = shaped(ShapeKind::linear, ShapeKind::beta_concave, s, 2 * s, 2, Rational(3, 2));
    const auto dcc = auction::count_pair_deviations(ccv, Equilibrium::lower);
    const auto floor_arg = static_cast<std::size_t>(std::floor((1.0 - 1.0 / 1.5) * static_cast<double>(s) / 4.0));
    o.expect(dcc >= oracle::pascal(floor_arg, 2),
             "beta-concave CTRs s=" + std::to_string(s) + ": " + std::to_string(dcc));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  o.expect(slope >= 1.35 && slope <= 1.65, "log-log slope " + std::to_string(slope));
  char buf[160];
  std::snprintf(buf, sizeof buf, "linear/linear slope %.4f; D_2(s=200) = %.0f", slope, std::exp(ys.back()));
  o.detail << (o.ok ? "" : " | ") << buf;
}

void upper_equilibrium(Outcome& o) {
  std::mt19937_64 rng(901);
  for (std::size_t s = 2; s <= 50; ++s) {
    std::vector<AuctionInstance> insts{shaped(ShapeKind::linear, ShapeKind::linear, s, 2 * s, 2, 2),
                                       oracle::random_instance(rng, s, s + 1 + rng() % 4)};
    for (const auto& inst : insts) {
      const auto bids = auction::ue_bids(inst).bids;
      for (std::size_t i = 1; i < s; ++i) {
        o.expect(auction::ue_pair_deviates(inst, i, i + 2), "predicate misses (i,i+2)");
        // The move leaves i + 2 where it was and must strictly help i.
        o.expect(oracle::pair_move_delta(inst, bids, i, i + 2) < 0,
                 "move gives no gain for (" + std::to_string(i) + "," + std::to_string(i + 2) + ") at s=" +
                     std::to_string(s));
      }
      const auto d = auction::count_pair_deviations(inst, Equilibrium::upper);
      o.expect(d >= 2 * s - 1, "D_2(UE) = " + std::to_string(d) + " at s=" + std::to_string(s));
    }
  }
  o.detail << (o.ok ? "" : " | ") << "s = 2..50, linear and random instances";
}

void vcg_versus_gsp(Outcome& o) {
  std::mt19937_64 rng(1001);
  std::size_t coalitions = 0;
  for (std::size_t s = 1; s <= 6; ++s) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto inst = rep == 0 ? shaped(ShapeKind::linear, ShapeKind::linear, s, 2 * s, 2, 2)
                                 : oracle::random_instance(rng, s, 2 * s);
      for (std::size_t r = 1; r <= s; ++r) {
        std::uint64_t verified = 0;
        for (const auto& set : auction::potential_coalitions(s, inst.n(), r)) {
          const auto dev = auction::vcg_coalition_deviation(inst, set);
          // Replay the reports through the Clarke-pivot oracle.
          const auto prices = oracle::clarke_prices(dev.reports, inst.ctrs());
          const auto truth = oracle::clarke_prices(inst.values(), inst.ctrs());
          std::vector<std::size_t> order(inst.n());
          std::iota(order.begin(), order.end(), std::size_t{0});
          std::sort(order.begin(), order.end(), [&](auto a, auto b) { return dev.reports[a] > dev.reports[b]; });
          bool none_worse = true, some_better = false;
          for (std::size_t b : set) {
            Rational before(0), after(0);
            if (b <= s) before = (inst.value(b) - truth[b - 1]) * inst.ctr(b);
            for (std::size_t j = 0; j < prices.size(); ++j)
              if (order[j] == b - 1) after = (inst.value(b) - prices[j]) * inst.ctr(j + 1);
            none_worse = none_worse && after >= before;
            some_better = some_better || after > before;
          }
          const bool weak = none_worse && some_better;
          o.expect(weak == (r >= 2), "oracle replay disagrees for a coalition of size " + std::to_string(r));
          verified += dev.deviates() ? 1 : 0;
          ++coalitions;
        }
        const auto expect = r >= 2 ? auction::potential_count(s, r) : 0;
        o.expect(verified == expect, "s=" + std::to_string(s) + " r=" + std::to_string(r) + ": " +
                                         std::to_string(verified) + " of " + std::to_string(expect));
        o.expect(auction::count_vcg_coalition_deviations(inst, r) == verified, "counting path disagrees");
      }
    }
  }
  const auto big = shaped(ShapeKind::linear, ShapeKind::linear, 36, 72, 2, 2);
  const double m2 = static_cast<double>(auction::potential_count(36, 2));
  const double gsp = static_cast<double>(auction::count_pair_deviations(big, Equilibrium::lower)) / m2;
  const double vcg = static_cast<double>(auction::count_vcg_coalition_deviations(big, 2)) / m2;
  o.expect(gsp < 0.5, "GSP ratio " + std::to_string(gsp));
  o.expect(vcg == 1.0, "VCG ratio " + std::to_string(vcg));
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu coalitions replayed for s <= 6 (r = 1 never deviates); s=36: GSP %.4f, VCG %.4f",
                coalitions, gsp, vcg);
  o.detail << (o.ok ? "" : " | ") << buf;
}

void coalition_reduction(Outcome& o) {
  // Interior points per gap, chosen by coalition size to bound the search.
  auto parts_for = [](std::size_t r) -> unsigned { return r <= 3 ? 4 : r == 4 ? 3 : r == 5 ? 2 : 1; };
  std::mt19937_64 rng(1101);
  std::atomic<std::uint64_t> checked{0}, mismatched{0}, chained{0}, strict_found{0};
  std::vector<AuctionInstance> insts;
  for (std::size_t s = 1; s <= 3; ++s)
    for (std::size_t n = s + 1; n <= 6; ++n)
      for (int rep = 0; rep < 2; ++rep) insts.push_back(oracle::random_instance(rng, s, n));
  std::vector<std::string> notes(insts.size());
  parallel_for(insts.size(), default_workers(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const auto& inst = insts[idx];
      const std::size_t s = inst.s(), n = inst.n();
      const auto le = auction::le_bids(inst).bids;
      for (std::size_t r = 1; r <= n; ++r) {
        const auto grid = oracle::bid_grid(le, parts_for(r));
        for (const auto& set : auction::potential_coalitions(s, n, r)) {
          std::vector<std::size_t> members;
          for (auto b : set) members.push_back(b - 1);
          const bool found = oracle::gsp_coalition_search(inst, le, members, grid, true) != oracle::Gain::none;
          const bool predicted = auction::coalition_deviates(inst, Equilibrium::lower, set);
          ++checked;
          if (found != predicted) {
            ++mismatched;
            // Losers s+1 and s+2 dropping together lower the price below what any pair can reach.
            if (std::find(set.begin(), set.end(), s + 1) != set.end() &&
                std::find(set.begin(), set.end(), s + 2) != set.end())
              ++chained;
            std::ostringstream os;
            os << "s=" << s << " n=" << n << " {";
            for (auto b : set) os << b << ' ';
            os << "} grid " << found << " predicate " << predicted;
            notes[idx] = os.str();
          }
        }
      }
      for (auto eq : {Equilibrium::lower, Equilibrium::upper}) {
        const auto bids = auction::equilibrium_bids(inst, eq).bids;
        for (std::size_t r = 1; r <= std::min<std::size_t>(n, 3); ++r) {
          const auto grid = oracle::bid_grid(bids, 4);
          for (const auto& c : coalitions_of_size(n, r))
            if (oracle::gsp_coalition_search(inst, bids, c, grid) == oracle::Gain::strict) ++strict_found;
        }
      }
    }
  });
  o.expect(mismatched == 0, std::to_string(mismatched.load()) + " mismatches, " + std::to_string(chained.load()) +
                                " with bidders s+1 and s+2 both in the coalition");
  for (const auto& note : notes)
    if (!note.empty()) {
      o.expect(false, note);
      break;
    }
  o.expect(strict_found == 0, std::to_string(strict_found.load()) + " strict deviations found");
  o.detail << (o.ok ? "" : " | ") << checked.load() << " potential coalitions on " << insts.size()
           << " instances; strict search over all coalitions of size <= 3 from LE and UE";
}

void random_reserve_sse(Outcome& o) {
  const AuctionInstance inst({Rational(7), Rational(4), Rational(2)}, {Rational(5), Rational(3), Rational(2)});
  for (const auto& q : {Rational(1, 4), Rational(1, 2)}) {
    for (unsigned level = 0; level <= 2; ++level) {
      reserve::SseOptions opts;
      opts.refine = level;
      const auto v = reserve::check_truthful_sse(inst, reserve::VcgStarConfig::for_instance(inst, q), opts);
      o.expect(v.status == reserve::SseStatus::certified_no_deviation_on_grid && !v.truncated,
               "q=" + str(q) + " level " + std::to_string(level) + " not certified");
      o.detail << "q=" << str(q) << " L" << level << " grid " << v.grid_size << "; ";
    }
  }
  const auto control = reserve::check_truthful_sse(inst, reserve::VcgStarConfig::for_instance(inst, Rational(0)));
  o.expect(control.status == reserve::SseStatus::deviation_found, "q=0 control certified");
  const AuctionInstance four({Rational(7), Rational(4), Rational(2), Rational(1)},
                             {Rational(5), Rational(3), Rational(2)});
  const auto loser = reserve::check_truthful_sse(four, reserve::VcgStarConfig::for_instance(four, Rational(1, 2)));
  o.expect(loser.status == reserve::SseStatus::deviation_found &&
               std::find(loser.coalition.begin(), loser.coalition.end(), 4u) != loser.coalition.end(),
           "n=4 case: no deviation involving bidder 4");
  std::ostringstream c;
  for (auto b : loser.coalition) c << b << ' ';
  o.detail << "q=0 finds a deviation; n=4 coalition { " << c.str() << "}";
}

void lambda_gap(Outcome& o) {
  std::mt19937_64 rng(1301);
  Rational worst(0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t s = 1 + rng() % 8, n = s + 1 + rng() % 5;
    const auto inst = oracle::random_instance(rng, s, n);
    for (unsigned long d : {2ul, 4ul, 10ul}) {
      const Rational lambda = ratio(1, d * n);
      const auto ext = reserve::vcg_star_lambda(inst, reserve::LambdaConfig{lambda});
      o.expect(ext.slot_order_preserved, "slot order broken");
      o.expect(ext.prices == oracle::clarke_prices(inst.values(), ext.ctrs), "extended prices differ from Clarke");
      const auto alloc = auction::vcg_truthful(ext.extended(inst));
      for (std::size_t i = 1; i <= s; ++i) {
        o.expect(alloc.slot_of(i) == i, "bidder moved slot");
        const Rational gap = abs(ext.prices[i - 1] - ext.base_prices[i - 1]) * inst.ctr(i);
        const Rational bound = inst.value(1) * static_cast<unsigned long>(n) * lambda * inst.ctr(1);
        o.expect(gap <= bound, "gap " + str(gap) + " above " + str(bound));
        if (bound > 0 && gap / bound > worst) worst = gap / bound;
      }
    }
  }
  o.detail << (o.ok ? "" : " | ") << "900 (instance, lambda) cases; largest gap/bound = " << to_double(worst);
}

void gsp_reserve_witnesses(Outcome& o) {
  std::mt19937_64 rng(1401);
  std::size_t le_cases = 0, ue_cases = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t s = 1 + rng() % 10;
    const auto inst = oracle::random_instance(rng, s, s + 1 + rng() % 3);
    const auto le = auction::le_bids(inst), ue = auction::ue_bids(inst);
    for (std::size_t i = 1; i <= s; ++i) {
      if (le.bid(i) < inst.value(i)) {
        for (const auto& w : {ratio(1, 4), ratio(1, 2), ratio(3, 4)}) {
          const Rational c = le.bid(i) + w * (inst.value(i) - le.bid(i));
          const auto got = auction::gsp_reserve_witness(inst, le, c);
          o.expect(got && got->kind == auction::WitnessCase::raise_bid, "LE: no case-I witness");
          ++le_cases;
        }
      }
      if (inst.value(i) < ue.bid(i)) {
        for (const auto& w : {ratio(1, 4), ratio(1, 2), ratio(3, 4)}) {
          const Rational c = inst.value(i) + w * (ue.bid(i) - inst.value(i));
          const auto got = auction::gsp_reserve_witness(inst, ue, c);
          o.expect(got && got->kind == auction::WitnessCase::lower_bid, "UE: no case-II witness");
          ++ue_cases;
        }
      }
    }
  }
  o.expect(le_cases > 0 && ue_cases > 0, "no cases generated");
  o.detail << (o.ok ? "" : " | ") << le_cases << " LE reserves, " << ue_cases << " UE reserves";
}

void reserve_modes_agree(Outcome& o) {
  std::mt19937_64 rng(1501);
  std::size_t disagree = 0;
  std::string first;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t s = 1 + rng() % 6;
    const auto inst = oracle::random_instance(rng, s, s + 1 + rng() % 3);
    const Rational c = ratio(static_cast<long>(rng() % 1000), 10);
    const auto f = reserve::reserve_vcg(inst, reserve::ReserveConfig{c}, reserve::ReserveMode::filtered);
    const auto k = reserve::reserve_vcg(inst, reserve::ReserveConfig{c}, reserve::ReserveMode::clamped);
    if (f.price != k.price || f.slot != k.slot) {
      if (disagree++ == 0) {
        std::ostringstream os;
        os << "instance " << t << " c=" << str(c) << ": filtered";
        for (const auto& p : f.price) os << ' ' << str(p);
        os << " vs clamped";
        for (const auto& p : k.price) os << ' ' << str(p);
        first = os.str();
      }
    }
  }
  o.expect(disagree == 0, std::to_string(disagree) + " of 1000 pairs disagree; first: " + first);
  if (o.ok) o.detail << "1000 pairs agree";
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "worked SRSG example scores", 60, worked_example},
      {2, "repeat-NE pair count", 60, repeat_construction},
      {3, "scatter-NE pair count", 60, scatter_construction},
      {4, "random-NE expected pair count", 300, random_ne_expectation},
      {5, "GSP-at-LE payments equal VCG", 10, payment_identity},
      {6, "pair utility delta matches direct evaluation", 30, pair_delta_oracle},
      {7, "value-shape pair counts under LE", 30, value_shape_counts},
      {8, "Table 1 trends and bounds", 300, table_trends},
      {9, "UE skip pairs and lower bound", 30, upper_equilibrium},
      {10, "VCG reaches M_r, GSP does not", 60, vcg_versus_gsp},
      {11, "coalition reduction on tiny instances", 300, coalition_reduction},
      {12, "random-reserve VCG truthful SSE on grid", 120, random_reserve_sse},
      {13, "slot-randomized payment gap", 10, lambda_gap},
      {14, "GSP reserve witnesses", 10, gsp_reserve_witnesses},
      {15, "filtered and clamped reserve VCG agree", 10, reserve_modes_agree},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(secs <= c.limit_seconds, "over time limit");
    if (!o.ok) ++failed;
    std::printf("%s %2d %s [%.2fs / %.0fs] %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_seconds,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
