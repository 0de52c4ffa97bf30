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
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stabscore/errors.hpp"
#include "stabscore/game_core.hpp"
#include "stabscore/harness/specs.hpp"
#include "stabscore/srsg.hpp"

// Game-exchange documents (JSON):
//
//   {
//     "format": "stabscore-game/1",
//     "n": 2, "action_counts": [2, 2],
//     "table": [ {"profile": [0, 0], "payoffs": ["3", "3"]}, ... ],
//     "profiles": { "dd": {"actions": [1, 1]} }
//   }
//
// or, instead of "table", a generator reference
//
//     "generator": {"name": "srsg", "m": 4, "n": 6, "k": 2, "cost": "linear"}
//
// whose named profiles may be given as per-step resource rows, 1-based:
//
//     "profiles": { "a": {"assignment": [[1,1,2,2,3,4], [1,1,2,2,3,4]]} }
namespace stabscore::harness {

inline constexpr const char* kGameFormat = "stabscore-game/1";

struct LoadedGame {
  FiniteGame game;
  std::optional<BasicFiniteGame<std::int64_t>> fast;  // same game with scaled integer payoffs, when available
  std::optional<srsg::SrsgInstance> srsg;
  std::vector<std::pair<std::string, Profile>> profiles;

  const Profile& profile(const std::string& name) const {
    for (const auto& [k, p] : profiles)
      if (k == name) return p;
    throw InvalidInput("game has no profile named \"" + name + "\"");
  }
};

namespace impl {

inline std::size_t profile_code(std::span<const std::size_t> counts, std::span<const Action> actions) {
  std::size_t code = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) code = code * counts[i] + actions[i];
  return code;
}

inline Rational payoff_from_json(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(std::to_string(v.get<std::int64_t>()));
  throw InvalidInput("payoffs must be integers or \"p/q\" strings");
}

}  // namespace impl

inline LoadedGame load_game(const nlohmann::json& doc) {
  if (doc.contains("format"))
    ::stabscore::detail::require(doc.at("format").get<std::string>() == kGameFormat,
                                 "unsupported game format " + doc.at("format").get<std::string>());
  std::optional<FiniteGame> game;
  std::optional<BasicFiniteGame<std::int64_t>> fast;
  std::optional<srsg::SrsgInstance> inst;

  if (doc.contains("generator")) {
    const auto& g = doc.at("generator");
    const std::string name = g.at("name").get<std::string>();
    ::stabscore::detail::require(name == "srsg", "unknown game generator \"" + name + "\"");
    const auto n = g.at("n").get<std::size_t>();
    srsg::CostFn cost = srsg::CostFn::linear(n);
    if (g.contains("cost")) {
      const auto& c = g.at("cost");
      if (c.is_string()) {
        cost = parse_cost(c.get<std::string>(), n);
      } else {
        std::vector<Rational> values;
        for (const auto& v : c) values.push_back(impl::payoff_from_json(v));
        cost = srsg::CostFn(std::move(values));
      }
    }
    inst.emplace(g.at("m").get<std::size_t>(), n, g.at("k").get<std::size_t>(), std::move(cost));
    game.emplace(srsg::to_finite_game(*inst));
    fast = srsg::to_integer_game(*inst);
  } else {
    const auto counts = doc.at("action_counts").get<std::vector<std::size_t>>();
    ::stabscore::detail::require(!counts.empty(), "action_counts must be nonempty");
    std::size_t total = 1;
    for (auto c : counts) {
      ::stabscore::detail::require(c > 0, "action counts must be positive");
      total *= c;
    }
    auto table = std::make_shared<std::vector<std::vector<Rational>>>(total);
    std::vector<bool> seen(total, false);
    for (const auto& entry : doc.at("table")) {
      const auto actions = entry.at("profile").get<std::vector<std::size_t>>();
      ::stabscore::detail::require(actions.size() == counts.size(), "table profile has the wrong length");
      for (std::size_t i = 0; i < counts.size(); ++i)
        ::stabscore::detail::require(actions[i] < counts[i], "table profile action out of range");
      const std::size_t code = impl::profile_code(counts, actions);
      ::stabscore::detail::require(!seen[code], "duplicate table profile");
      seen[code] = true;
      std::vector<Rational> pay;
      for (const auto& v : entry.at("payoffs")) pay.push_back(impl::payoff_from_json(v));
      ::stabscore::detail::require(pay.size() == counts.size(), "one payoff per player required");
      (*table)[code] = std::move(pay);
    }
    for (bool s : seen) ::stabscore::detail::require(s, "utility table must cover every profile");
    game.emplace(counts, [counts, table](PlayerIndex p, std::span<const Action> a) {
      return (*table)[impl::profile_code(counts, a)][p];
    });
  }
  if (doc.contains("n"))
    ::stabscore::detail::require(doc.at("n").get<std::size_t>() == game->player_count(),
                                 "n does not match the game");
  if (doc.contains("action_counts") && doc.contains("generator")) {
    const auto counts = doc.at("action_counts").get<std::vector<std::size_t>>();
    ::stabscore::detail::require(std::vector<std::size_t>(game->action_counts().begin(), game->action_counts().end()) ==
                                     counts,
                                 "action_counts do not match the generator");
  }

  LoadedGame out{std::move(*game), std::move(fast), std::move(inst), {}};
  if (doc.contains("profiles")) {
    for (const auto& [name, spec] : doc.at("profiles").items()) {
      Profile p;
      if (spec.contains("assignment")) {
        ::stabscore::detail::require(out.srsg.has_value(), "assignment profiles need an srsg generator");
        auto rows = spec.at("assignment").get<std::vector<std::vector<std::size_t>>>();
        for (auto& row : rows)
          for (auto& r : row) {
            ::stabscore::detail::require(r >= 1, "assignment resources are 1-based");
            --r;
          }
        const auto a = srsg::Assignment::from_rows(rows);
        a.validate_for(*out.srsg);
        p = srsg::to_profile(*out.srsg, a);
      } else {
        p.actions = spec.at("actions").get<std::vector<std::size_t>>();
      }
      out.game.validate_profile(p.actions);
      out.profiles.emplace_back(name, std::move(p));
    }
  }
  return out;
}

inline LoadedGame load_game_file(const std::string& path) {
  std::ifstream in(path);
  ::stabscore::detail::require(static_cast<bool>(in), "cannot open game file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("game file " + path + " is not valid JSON: " + e.what());
  }
  return load_game(doc);
}

/// Writes any game as an explicit utility table.
inline nlohmann::json export_game_table(const FiniteGame& game,
                                        const std::vector<std::pair<std::string, Profile>>& profiles = {}) {
  nlohmann::json doc;
  doc["format"] = kGameFormat;
  doc["n"] = game.player_count();
  const std::vector<std::size_t> counts(game.action_counts().begin(), game.action_counts().end());
  doc["action_counts"] = counts;
  nlohmann::json table = nlohmann::json::array();
  std::vector<Action> a(counts.size(), 0);
  while (true) {
    nlohmann::json pay = nlohmann::json::array();
    for (std::size_t p = 0; p < counts.size(); ++p) pay.push_back(to_string(game.utility(p, a)));
    table.push_back({{"profile", a}, {"payoffs", pay}});
    std::size_t pos = counts.size();
    while (pos > 0 && ++a[pos - 1] == counts[pos - 1]) a[--pos] = 0;
    if (pos == 0) break;
  }
  doc["table"] = table;
  nlohmann::json prof = nlohmann::json::object();
  for (const auto& [name, p] : profiles) prof[name] = {{"actions", p.actions}};
  doc["profiles"] = prof;
  return doc;
}

}  // namespace stabscore::harness
