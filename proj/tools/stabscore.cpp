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

// Command-line front end: score, srsg, auction, reserve and sweep.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "stabscore/harness/run.hpp"

namespace {

using stabscore::harness::OutputFormat;
using stabscore::harness::RunConfig;

int emit_error(const std::string& type, const std::string& message, int code) {
  nlohmann::ordered_json rec;
  rec["error"] = {{"type", type}, {"message", message}};
  std::cerr << rec.dump() << "\n";
  return code;
}

void add_common(CLI::App* sub, RunConfig& cfg, std::string& format) {
  sub->add_option("--seed", cfg.seed, "Seed for every random draw in the run")->capture_default_str();
  sub->add_option("--out", cfg.output, "Write the table here instead of stdout");
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_flag("--decimal", cfg.decimal_columns, "Add decimal companions of rational columns (CSV only)");
  sub->add_option("--workers", cfg.workers, "Worker threads (env STABSCORE_WORKERS)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability scores for finite games, resource-selection games and ad auctions"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "csv";

  auto* score = app.add_subcommand("score", "Count deviating coalitions in a game file");
  add_common(score, cfg, format);
  score->add_option("--game", cfg.score.game, "Game-exchange JSON file")->required();
  score->add_option("--profile", cfg.score.profiles, "Named profile(s); default all");
  score->add_option("--kind", cfg.score.kind, "Deviation kind")
      ->check(CLI::IsMember({"strict", "weak", "both"}))
      ->capture_default_str();
  score->add_option("--rmax", cfg.score.rmax, "Largest coalition size (default n)");

  auto* srsg = app.add_subcommand("srsg", "Pair deviations in sequential resource-selection games");
  add_common(srsg, cfg, format);
  srsg->add_option("--m", cfg.srsg.m, "Resources")->capture_default_str();
  srsg->add_option("--n", cfg.srsg.n, "Agents")->capture_default_str();
  srsg->add_option("--k", cfg.srsg.k, "Steps")->capture_default_str();
  srsg->add_option("--cost", cfg.srsg.cost, "linear, power:e or c(1),...,c(n)")->capture_default_str();
  srsg->add_option("--profile", cfg.srsg.profile, "Equilibrium construction")
      ->check(CLI::IsMember({"repeat", "scatter", "random"}))
      ->capture_default_str();
  srsg->add_option("--samples", cfg.srsg.samples, "Random draws (profile random)")->capture_default_str();
  srsg->add_option("--method", cfg.srsg.method, "Counting method")
      ->check(CLI::IsMember({"structural", "bruteforce", "both"}))
      ->capture_default_str();

  auto* auction = app.add_subcommand("auction", "GSP and VCG position auctions");
  add_common(auction, cfg, format);
  auction->add_option("--s", cfg.auction.s, "Slots")->capture_default_str();
  auction->add_option("--n", cfg.auction.n, "Bidders (default 2s)");
  auction->add_option("--v", cfg.auction.v, "Values: list or shape such as linear:10..1, beta-convex:2")
      ->capture_default_str();
  auction->add_option("--x", cfg.auction.x, "CTRs: list or shape")->capture_default_str();
  auction->add_option("--eq", cfg.auction.eq, "Outcome")->check(CLI::IsMember({"le", "ue", "vcg"}))->capture_default_str();
  auction->add_flag("--count-pairs", cfg.auction.count_pairs, "Count deviating pairs");
  auction->add_option("--count-coalitions", cfg.auction.count_coalitions, "Count deviating coalitions of size r");
  auction->add_flag("--table1", cfg.auction.table1, "3x3 grid of value and CTR shapes");
  auction->add_option("--value-beta", cfg.auction.value_beta, "beta for value shapes in --table1")->capture_default_str();
  auction->add_option("--ctr-convex-beta", cfg.auction.ctr_convex_beta, "beta for convex CTRs in --table1")
      ->capture_default_str();
  auction->add_option("--ctr-concave-beta", cfg.auction.ctr_concave_beta, "beta for concave CTRs in --table1")
      ->capture_default_str();

  auto* reserve = app.add_subcommand("reserve", "VCG with fixed or random reserve prices");
  add_common(reserve, cfg, format);
  reserve->add_option("--mode", cfg.reserve.mode, "Mechanism")
      ->check(CLI::IsMember({"fixed", "star", "star-lambda"}))
      ->capture_default_str();
  reserve->add_option("--s", cfg.reserve.s, "Slots")->capture_default_str();
  reserve->add_option("--n", cfg.reserve.n, "Bidders (default s)");
  reserve->add_option("--v", cfg.reserve.v, "Values: list or shape")->capture_default_str();
  reserve->add_option("--x", cfg.reserve.x, "CTRs: list or shape")->capture_default_str();
  reserve->add_option("--c", cfg.reserve.c, "Fixed reserve price")->capture_default_str();
  reserve->add_option("--fixed-mode", cfg.reserve.fixed_mode, "Fixed reserve payment rule")
      ->check(CLI::IsMember({"filtered", "clamped"}))
      ->capture_default_str();
  reserve->add_option("--q-reserve", cfg.reserve.q_reserve, "Probability of drawing a random reserve")
      ->capture_default_str();
  reserve->add_option("--vmax", cfg.reserve.vmax, "Upper end of the reserve interval (default 2 v_1)");
  reserve->add_option("--lambda", cfg.reserve.lambda, "Slot-sharing probability, in (0, 1/n)");
  reserve->add_flag("--check-sse", cfg.reserve.check_sse, "Search grid misreports for coalition deviations");
  reserve->add_option("--grid-refine", cfg.reserve.grid_refine, "Grid refinement level")->capture_default_str();
  reserve->add_option("--max-coalition", cfg.reserve.max_coalition, "Largest coalition searched")
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Parameter sweeps; ranges like 2..6, m+1..4m, 10..200:10");
  add_common(sweep, cfg, format);
  sweep->add_option("--target", cfg.sweep.target, "What to sweep")
      ->check(CLI::IsMember({"srsg", "auction"}))
      ->capture_default_str();
  sweep->add_option("--m", cfg.sweep.m, "srsg: resource range")->capture_default_str();
  sweep->add_option("--n", cfg.sweep.n, "srsg: agent range, may use m")->capture_default_str();
  sweep->add_option("--k", cfg.sweep.k, "srsg: step range")->capture_default_str();
  sweep->add_option("--cost", cfg.sweep.cost, "srsg: cost function")->capture_default_str();
  sweep->add_option("--profile", cfg.sweep.profile, "srsg: construction")
      ->check(CLI::IsMember({"repeat", "scatter", "random"}))
      ->capture_default_str();
  sweep->add_option("--method", cfg.sweep.method, "srsg: counting method")
      ->check(CLI::IsMember({"structural", "bruteforce", "both"}))
      ->capture_default_str();
  sweep->add_option("--s", cfg.sweep.s, "auction: slot range")->capture_default_str();
  sweep->add_option("--bidders", cfg.sweep.auction_n, "auction: bidder range, may use s")->capture_default_str();
  sweep->add_option("--v", cfg.sweep.v, "auction: value shape")->capture_default_str();
  sweep->add_option("--x", cfg.sweep.x, "auction: CTR shape")->capture_default_str();
  sweep->add_option("--eq", cfg.sweep.eq, "auction: outcome")
      ->check(CLI::IsMember({"le", "ue", "vcg"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("usage", e.what(), 2);
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  try {
    const auto table = stabscore::harness::run(cfg);
    const std::string text = stabscore::harness::render(table, cfg);
    if (cfg.output) {
      std::ofstream out(*cfg.output, std::ios::binary);
      if (!out) return emit_error("io", "cannot write " + *cfg.output, 1);
      out << text;
    } else {
      std::cout << text;
    }
  } catch (const stabscore::UnsupportedConfiguration& e) {
    return emit_error("unsupported_configuration", e.what(), 2);
  } catch (const stabscore::TieError& e) {
    return emit_error("tie", e.what(), 2);
  } catch (const stabscore::GenerationError& e) {
    return emit_error("generation", e.what(), 2);
  } catch (const stabscore::InvalidInput& e) {
    return emit_error("invalid_input", e.what(), 2);
  } catch (const stabscore::ContractViolation& e) {
    return emit_error("contract_violation", e.what(), 3);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), 1);
  }
  return 0;
}
