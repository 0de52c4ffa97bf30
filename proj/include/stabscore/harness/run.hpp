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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stabscore/adauction.hpp"
#include "stabscore/errors.hpp"
#include "stabscore/game_core.hpp"
#include "stabscore/harness/game_file.hpp"
#include "stabscore/harness/specs.hpp"
#include "stabscore/harness/table.hpp"
#include "stabscore/parallel.hpp"
#include "stabscore/reserve.hpp"
#include "stabscore/srsg.hpp"

namespace stabscore::harness {

enum class OutputFormat { csv, json };

struct ScoreArgs {
  std::string game;
  std::vector<std::string> profiles;  // empty means every named profile
  std::string kind = "both";          // strict, weak or both
  std::optional<std::size_t> rmax;
};

struct SrsgArgs {
  std::size_t m = 4, n = 6, k = 2;
  std::string cost = "linear";
  std::string profile = "repeat";  // repeat, scatter, random
  std::size_t samples = 1;
  std::string method = "structural";  // structural, bruteforce, both
};

struct AuctionArgs {
  std::size_t s = 3;
  std::optional<std::size_t> n;  // defaults to 2s
  std::string v = "linear";
  std::string x = "linear";
  std::string eq = "le";  // le, ue, vcg
  bool count_pairs = false;
  std::optional<std::size_t> count_coalitions;
  bool table1 = false;
  std::string value_beta = "2";
  std::string ctr_convex_beta = "2";
  std::string ctr_concave_beta = "3/2";
};

struct ReserveArgs {
  std::string mode = "fixed";  // fixed, star, star-lambda
  std::size_t s = 3;
  std::optional<std::size_t> n;  // defaults to s
  std::string v = "linear";
  std::string x = "linear";
  std::string c = "0";
  std::string fixed_mode = "filtered";
  std::string q_reserve = "1/2";
  std::optional<std::string> vmax;  // defaults to 2 v_1
  std::optional<std::string> lambda;
  bool check_sse = false;
  unsigned grid_refine = 0;
  std::size_t max_coalition = 4;
};

struct SweepArgs {
  std::string target = "srsg";  // srsg or auction
  // srsg ranges
  std::string m = "2..6";
  std::string n = "m+1..4m";
  std::string k = "2";
  std::string cost = "linear";
  std::string profile = "repeat";
  std::string method = "structural";
  // auction ranges
  std::string s = "10..200:10";
  std::string auction_n = "2s";
  std::string v = "linear";
  std::string x = "linear";
  std::string eq = "le";
};

struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = 0;
  std::optional<std::string> output;
  OutputFormat format = OutputFormat::csv;
  bool decimal_columns = false;
  std::size_t workers = default_workers();
  ScoreArgs score;
  SrsgArgs srsg;
  AuctionArgs auction;
  ReserveArgs reserve;
  SweepArgs sweep;

  /// Settings that determine the output, in a fixed order.
  std::vector<std::pair<std::string, std::string>> echo() const {
    std::vector<std::pair<std::string, std::string>> e{{"subcommand", subcommand}, {"seed", std::to_string(seed)}};
    auto opt = [](const auto& o) { return o ? std::to_string(*o) : std::string("default"); };
    if (subcommand == "score") {
      std::string names;
      for (const auto& p : score.profiles) names += (names.empty() ? "" : ",") + p;
      e.insert(e.end(), {{"game", score.game}, {"profiles", names.empty() ? "all" : names}, {"kind", score.kind},
                         {"rmax", opt(score.rmax)}});
    } else if (subcommand == "srsg") {
      e.insert(e.end(), {{"m", std::to_string(srsg.m)}, {"n", std::to_string(srsg.n)}, {"k", std::to_string(srsg.k)},
                         {"cost", srsg.cost}, {"profile", srsg.profile}, {"samples", std::to_string(srsg.samples)},
                         {"method", srsg.method}});
    } else if (subcommand == "auction") {
      e.insert(e.end(), {{"s", std::to_string(auction.s)}, {"n", opt(auction.n)}, {"v", auction.v}, {"x", auction.x},
                         {"eq", auction.eq}, {"count_pairs", auction.count_pairs ? "true" : "false"},
                         {"count_coalitions", opt(auction.count_coalitions)},
                         {"table1", auction.table1 ? "true" : "false"}});
      if (auction.table1)
        e.insert(e.end(), {{"value_beta", auction.value_beta}, {"ctr_convex_beta", auction.ctr_convex_beta},
                           {"ctr_concave_beta", auction.ctr_concave_beta}});
    } else if (subcommand == "reserve") {
      e.insert(e.end(), {{"mode", reserve.mode}, {"s", std::to_string(reserve.s)}, {"n", opt(reserve.n)},
                         {"v", reserve.v}, {"x", reserve.x}, {"c", reserve.c}, {"fixed_mode", reserve.fixed_mode},
                         {"q_reserve", reserve.q_reserve}, {"vmax", reserve.vmax.value_or("default")},
                         {"lambda", reserve.lambda.value_or("default")},
                         {"check_sse", reserve.check_sse ? "true" : "false"},
                         {"grid_refine", std::to_string(reserve.grid_refine)},
                         {"max_coalition", std::to_string(reserve.max_coalition)}});
    } else if (subcommand == "sweep") {
      e.emplace_back("target", sweep.target);
      if (sweep.target == "srsg")
        e.insert(e.end(), {{"m", sweep.m}, {"n", sweep.n}, {"k", sweep.k}, {"cost", sweep.cost},
                           {"profile", sweep.profile}, {"method", sweep.method}});
      else
        e.insert(e.end(), {{"s", sweep.s}, {"n", sweep.auction_n}, {"v", sweep.v}, {"x", sweep.x}, {"eq", sweep.eq}});
    }
    return e;
  }
};

namespace impl {

inline std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

inline ResultTable start_table(const RunConfig& cfg, std::vector<Column> columns) {
  ResultTable t;
  t.columns = std::move(columns);
  t.provenance.emplace_back("tool", "stabscore");
  t.provenance.emplace_back("version", kVersion);
  for (auto& kv : cfg.echo()) t.provenance.push_back(std::move(kv));
  t.provenance.emplace_back("truncated", "false");
  return t;
}

inline std::vector<DeviationKind> kinds_for(const std::string& text) {
  if (text == "both") return {DeviationKind::strict, DeviationKind::weak};
  return {parse_deviation_kind(text)};
}

inline std::vector<srsg::CountMethod> methods_for(const std::string& text) {
  if (text == "both") return {srsg::CountMethod::structural, srsg::CountMethod::bruteforce};
  if (text == "structural") return {srsg::CountMethod::structural};
  if (text == "bruteforce") return {srsg::CountMethod::bruteforce};
  throw InvalidInput("method must be structural, bruteforce or both");
}

inline srsg::Assignment build_srsg_profile(const srsg::SrsgInstance& inst, const std::string& profile,
                                           std::uint64_t seed) {
  if (profile == "repeat") return srsg::build_repeat_ne(inst);
  if (profile == "scatter") return srsg::build_scatter_ne(inst);
  if (profile == "random") return srsg::sample_random_ne(inst, seed);
  throw InvalidInput("profile must be repeat, scatter or random");
}

inline auction::AuctionInstance auction_instance(std::size_t s, std::size_t n, const std::string& v,
                                                 const std::string& x) {
  ::stabscore::detail::require(s >= 1 && n >= 2, "need s >= 1 and n >= 2");
  return auction::AuctionInstance(VectorSpec{v}.materialize(n), VectorSpec{x}.materialize(s));
}

inline ResultTable run_score(const RunConfig& cfg) {
  ResultTable t = start_table(cfg, {{"profile", CellType::text},
                                    {"kind", CellType::text},
                                    {"r", CellType::integer},
                                    {"count", CellType::integer},
                                    {"incomplete", CellType::integer}});
  const LoadedGame g = load_game_file(cfg.score.game);
  std::vector<std::string> names = cfg.score.profiles;
  if (names.empty())
    for (const auto& [k, p] : g.profiles) names.push_back(k);
  const std::size_t n = g.game.player_count();
  const std::size_t rmax = cfg.score.rmax.value_or(n);
  ScoreOptions opts;
  opts.workers = cfg.workers;
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (const auto& name : names) {
    const Profile& p = g.profile(name);
    std::vector<ScoreVector> vecs;
    for (DeviationKind kind : kinds_for(cfg.score.kind)) {
      const ScoreVector v = g.fast ? score_vector(*g.fast, p, kind, rmax, opts) : score_vector(g.game, p, kind, rmax, opts);
      for (std::size_t r = 1; r <= rmax; ++r)
        t.add_row({name, std::string(to_string(kind)), as_int(r), as_int(v.at(r)), as_int(v.incomplete[r - 1])});
      if (v.truncated()) t.set_provenance("truncated", "true");
      vecs.push_back(v);
    }
    if (vecs.size() == 2 && rmax == n && !vecs[0].truncated() && !vecs[1].truncated()) {
      const StabilityFlags f = classify(vecs[0], vecs[1]);
      classes[name] = {{"is_nash", f.is_nash},
                       {"se_level", f.se_level},
                       {"sse_level", f.sse_level},
                       {"is_pareto_efficient", f.is_pareto_efficient}};
    }
  }
  if (!classes.empty()) t.report["classification"] = classes;
  return t;
}

inline ResultTable run_srsg(const RunConfig& cfg) {
  ResultTable t = start_table(cfg, {{"profile", CellType::text},
                                    {"r", CellType::integer},
                                    {"count", CellType::integer},
                                    {"method", CellType::text},
                                    {"incomplete", CellType::integer}});
  const auto& a = cfg.srsg;
  const srsg::SrsgInstance inst(a.m, a.n, a.k, parse_cost(a.cost, a.n));
  ::stabscore::detail::require(a.samples >= 1, "samples must be positive");
  const std::size_t draws = a.profile == "random" ? a.samples : 1;
  const auto methods = methods_for(a.method);
  std::vector<std::vector<srsg::PairCount>> counts(draws, std::vector<srsg::PairCount>(methods.size()));
  parallel_for(draws, cfg.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t d = begin; d < end; ++d) {
      const auto assignment = build_srsg_profile(inst, a.profile, derive_seed(cfg.seed, d));
      for (std::size_t mi = 0; mi < methods.size(); ++mi)
        counts[d][mi] = srsg::count_pair_deviations(inst, assignment, methods[mi]);
    }
  });
  for (std::size_t d = 0; d < draws; ++d) {
    const std::string label = draws == 1 ? a.profile : a.profile + "#" + std::to_string(d);
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      t.add_row({label, std::int64_t{2}, as_int(counts[d][mi].count), std::string(to_string(methods[mi])),
                 as_int(counts[d][mi].incomplete)});
      if (counts[d][mi].incomplete > 0) t.set_provenance("truncated", "true");
    }
  }
  t.report["q"] = inst.q();
  t.report["expected_pairs_exact_beta"] = to_string(srsg::expected_pair_deviations_exact_beta(inst));
  t.report["expected_pairs_exponential"] = srsg::expected_pair_deviations_exponential(inst);
  if (draws > 1) {
    double sum = 0;
    for (const auto& c : counts) sum += static_cast<double>(c[0].count);
    t.report["sample_mean"] = sum / static_cast<double>(draws);
  }
  return t;
}

inline ResultTable run_table1(const RunConfig& cfg) {
  const auto& a = cfg.auction;
  ResultTable t = start_table(cfg, {{"v_shape", CellType::text},
                                    {"x_shape", CellType::text},
                                    {"s", CellType::integer},
                                    {"D2", CellType::integer},
                                    {"M2", CellType::integer},
                                    {"ratio", CellType::real}});
  const std::size_t n = a.n.value_or(2 * a.s);
  const std::vector<std::string> vs{"beta-concave:" + a.value_beta, "linear", "beta-convex:" + a.value_beta};
  const std::vector<std::string> xs{"beta-concave:" + a.ctr_concave_beta, "linear", "beta-convex:" + a.ctr_convex_beta};
  for (const auto& v : vs) {
    for (const auto& x : xs) {
      const auto inst = auction_instance(a.s, n, v, x);
      const auto d2 = auction::count_pair_deviations(inst, auction::Equilibrium::lower);
      const auto m2 = auction::potential_count(a.s, 2);
      t.add_row({v, x, as_int(a.s), as_int(d2), as_int(m2), static_cast<double>(d2) / static_cast<double>(m2)});
    }
  }
  return t;
}

inline std::uint64_t auction_count(const auction::AuctionInstance& inst, const std::string& eq, std::size_t r,
                                   std::size_t workers) {
  auction::CoalitionCountOptions opts;
  opts.workers = workers;
  if (eq == "vcg") return auction::count_vcg_coalition_deviations(inst, r, opts);
  const auto e = eq == "le" ? auction::Equilibrium::lower : auction::Equilibrium::upper;
  if (r == 2) return auction::count_pair_deviations(inst, e);
  return auction::count_coalition_deviations(inst, e, r, opts);
}

inline ResultTable run_auction(const RunConfig& cfg) {
  const auto& a = cfg.auction;
  if (a.table1) return run_table1(cfg);
  ::stabscore::detail::require(a.eq == "le" || a.eq == "ue" || a.eq == "vcg", "eq must be le, ue or vcg");
  const auto inst = auction_instance(a.s, a.n.value_or(2 * a.s), a.v, a.x);
  if (a.count_pairs || a.count_coalitions) {
    ResultTable t = start_table(cfg, {{"eq", CellType::text},
                                      {"r", CellType::integer},
                                      {"count", CellType::integer},
                                      {"potential", CellType::integer}});
    std::vector<std::size_t> sizes;
    if (a.count_pairs) sizes.push_back(2);
    if (a.count_coalitions && !(a.count_pairs && *a.count_coalitions == 2)) sizes.push_back(*a.count_coalitions);
    for (std::size_t r : sizes) {
      ::stabscore::detail::require(r >= 1, "coalition size must be positive");
      t.add_row({a.eq, as_int(r), as_int(auction_count(inst, a.eq, r, cfg.workers)),
                 as_int(auction::potential_count(a.s, r))});
    }
    return t;
  }
  ResultTable t = start_table(cfg, {{"bidder", CellType::integer},
                                    {"value", CellType::rational},
                                    {"bid", CellType::rational},
                                    {"slot", CellType::integer},
                                    {"price", CellType::rational},
                                    {"utility", CellType::rational}});
  std::vector<Rational> bids;
  auction::SlotOutcome out;
  if (a.eq == "vcg") {
    bids = inst.values();
    out = auction::vcg_truthful(inst);
  } else {
    bids = auction::equilibrium_bids(inst, a.eq == "le" ? auction::Equilibrium::lower : auction::Equilibrium::upper)
               .bids;
    out = auction::gsp_outcome(inst, bids);
  }
  for (std::size_t b = 1; b <= inst.n(); ++b) {
    const std::size_t slot = out.slot_of(b);
    t.add_row({as_int(b), inst.value(b), bids[b - 1], as_int(slot), slot ? out.price[slot - 1] : Rational(0),
               out.utility_of(b)});
  }
  return t;
}

inline nlohmann::ordered_json rationals_json(const std::vector<Rational>& v) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

inline nlohmann::ordered_json verdict_json(const reserve::SseVerdict& v, unsigned refine) {
  nlohmann::ordered_json out;
  out["status"] = reserve::to_string(v.status);
  out["grid_refine"] = refine;
  out["grid_size"] = v.grid_size;
  out["examined"] = v.examined;
  out["coalition_sizes_truncated"] = v.truncated;
  if (v.warning) out["warning"] = *v.warning;
  if (v.status == reserve::SseStatus::deviation_found) {
    out["coalition"] = v.coalition;
    out["reports"] = rationals_json(v.reports);
    out["truthful_utility"] = rationals_json(v.truthful_utility);
    out["deviation_utility"] = rationals_json(v.deviation_utility);
  }
  return out;
}

inline ResultTable run_reserve(const RunConfig& cfg) {
  const auto& a = cfg.reserve;
  ResultTable t = start_table(cfg, {{"bidder", CellType::integer},
                                    {"value", CellType::rational},
                                    {"slot", CellType::integer},
                                    {"ctr", CellType::rational},
                                    {"price", CellType::rational},
                                    {"utility", CellType::rational}});
  const std::size_t n = a.n.value_or(a.s);
  auto inst = auction_instance(a.s, n, a.v, a.x);
  t.report["mechanism"] = a.mode;
  auto fill = [&](const auction::AuctionInstance& shown, const auction::SlotOutcome& out,
                  const std::vector<Rational>& utility) {
    for (std::size_t b = 1; b <= shown.n(); ++b) {
      const std::size_t slot = out.slot_of(b);
      t.add_row({as_int(b), shown.value(b), as_int(slot), slot ? shown.ctr(slot) : Rational(0),
                 slot ? out.price[slot - 1] : Rational(0), utility[b - 1]});
    }
  };
  if (a.mode == "fixed") {
    const reserve::ReserveConfig rc{parse_rational(a.c)};
    const auto mode = a.fixed_mode == "clamped" ? reserve::ReserveMode::clamped : reserve::ReserveMode::filtered;
    ::stabscore::detail::require(a.fixed_mode == "clamped" || a.fixed_mode == "filtered",
                                 "fixed-mode must be filtered or clamped");
    const auto out = reserve::reserve_vcg(inst, rc, mode);
    fill(inst, out, out.utility);
    const auto filtered = reserve::reserve_vcg(inst, rc, reserve::ReserveMode::filtered);
    const auto clamped = reserve::reserve_vcg(inst, rc, reserve::ReserveMode::clamped);
    t.report["payments"] = rationals_json(out.price);
    t.report["filtered_payments"] = rationals_json(filtered.price);
    t.report["clamped_payments"] = rationals_json(clamped.price);
    t.report["modes_agree"] = filtered.price == clamped.price && filtered.slot == clamped.slot;
    return t;
  }
  reserve::VcgStarConfig star{parse_rational(a.q_reserve), a.vmax ? parse_rational(*a.vmax) : 2 * inst.value(1)};
  if (a.mode == "star-lambda") {
    ::stabscore::detail::require(a.lambda.has_value(), "star-lambda needs --lambda");
    const auto ext = reserve::vcg_star_lambda(inst, reserve::LambdaConfig{parse_rational(*a.lambda)});
    t.report["base_payments"] = rationals_json(ext.base_prices);
    t.report["extended_ctrs"] = rationals_json(ext.ctrs);
    t.report["slot_order_preserved"] = ext.slot_order_preserved;
    inst = ext.extended(inst);
  } else {
    ::stabscore::detail::require(a.mode == "star", "mode must be fixed, star or star-lambda");
  }
  const auto truthful = auction::vcg_truthful(inst);
  const auto eu = reserve::expected_utilities_vcg_star(inst, star, inst.values());
  fill(inst, truthful, eu.utility);
  t.report["payments"] = rationals_json(truthful.price);
  t.report["expected_utilities"] = rationals_json(eu.utility);
  t.report["breakpoints"] = rationals_json(eu.breakpoints);
  t.report["q_reserve"] = to_string(star.q_reserve);
  t.report["vmax"] = to_string(star.vmax);
  if (a.check_sse) {
    reserve::SseOptions opts;
    opts.refine = a.grid_refine;
    opts.max_coalition = a.max_coalition;
    opts.workers = cfg.workers;
    const auto verdict = reserve::check_truthful_sse(inst, star, opts);
    t.report["sse"] = verdict_json(verdict, a.grid_refine);
    t.set_provenance("sse_status", reserve::to_string(verdict.status));
    if (verdict.truncated) t.set_provenance("truncated", "true");
  }
  return t;
}

inline ResultTable run_sweep(const RunConfig& cfg) {
  const auto& a = cfg.sweep;
  if (a.target == "srsg") {
    ResultTable t = start_table(cfg, {{"m", CellType::integer},
                                      {"n", CellType::integer},
                                      {"k", CellType::integer},
                                      {"q", CellType::integer},
                                      {"profile", CellType::text},
                                      {"method", CellType::text},
                                      {"count", CellType::integer},
                                      {"incomplete", CellType::integer}});
    struct Point {
      std::int64_t m, n, k;
    };
    std::vector<Point> points;
    for (auto m : expand_range(a.m, {}))
      for (auto n : expand_range(a.n, {{"m", m}}))
        for (auto k : expand_range(a.k, {{"m", m}, {"n", n}})) points.push_back({m, n, k});
    const auto methods = methods_for(a.method);
    std::vector<std::vector<srsg::PairCount>> results(points.size());
    parallel_for(points.size(), cfg.workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const auto& p = points[i];
        ::stabscore::detail::require(p.m >= 2 && p.n >= 2 && p.k >= 2, "sweep points need m, n, k >= 2");
        const srsg::SrsgInstance inst(p.m, p.n, p.k, parse_cost(a.cost, p.n));
        const auto assignment = build_srsg_profile(inst, a.profile, derive_seed(cfg.seed, i));
        for (auto method : methods) results[i].push_back(srsg::count_pair_deviations(inst, assignment, method));
      }
    });
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        t.add_row({p.m, p.n, p.k, p.n % p.m, a.profile, std::string(to_string(methods[mi])),
                   as_int(results[i][mi].count), as_int(results[i][mi].incomplete)});
        if (results[i][mi].incomplete > 0) t.set_provenance("truncated", "true");
      }
    }
    return t;
  }
  ::stabscore::detail::require(a.target == "auction", "sweep target must be srsg or auction");
  ::stabscore::detail::require(a.eq == "le" || a.eq == "ue" || a.eq == "vcg", "eq must be le, ue or vcg");
  ResultTable t = start_table(cfg, {{"s", CellType::integer},
                                    {"n", CellType::integer},
                                    {"v_shape", CellType::text},
                                    {"x_shape", CellType::text},
                                    {"eq", CellType::text},
                                    {"D2", CellType::integer},
                                    {"M2", CellType::integer},
                                    {"ratio", CellType::real}});
  std::vector<std::pair<std::int64_t, std::int64_t>> points;
  for (auto s : expand_range(a.s, {}))
    for (auto n : expand_range(a.auction_n, {{"s", s}})) points.emplace_back(s, n);
  std::vector<std::uint64_t> d2(points.size());
  parallel_for(points.size(), cfg.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto [s, n] = points[i];
      ::stabscore::detail::require(s >= 1 && n > s, "auction sweep points need n > s >= 1");
      d2[i] = auction_count(auction_instance(s, n, a.v, a.x), a.eq, 2, 1);
    }
  });
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [s, n] = points[i];
    const auto m2 = auction::potential_count(s, 2);
    t.add_row({s, n, a.v, a.x, a.eq, as_int(d2[i]), as_int(m2), static_cast<double>(d2[i]) / static_cast<double>(m2)});
  }
  return t;
}

}  // namespace impl

/// Dispatches one configured run. Errors propagate as exceptions; the CLI
/// turns them into an error record and a nonzero exit code.
inline ResultTable run(const RunConfig& cfg) {
  if (cfg.subcommand == "score") return impl::run_score(cfg);
  if (cfg.subcommand == "srsg") return impl::run_srsg(cfg);
  if (cfg.subcommand == "auction") return impl::run_auction(cfg);
  if (cfg.subcommand == "reserve") return impl::run_reserve(cfg);
  if (cfg.subcommand == "sweep") return impl::run_sweep(cfg);
  throw InvalidInput("unknown subcommand \"" + cfg.subcommand + "\"");
}

inline std::string render(const ResultTable& t, const RunConfig& cfg) {
  return cfg.format == OutputFormat::json ? to_json(t) : to_csv(t, cfg.decimal_columns);
}

}  // namespace stabscore::harness
