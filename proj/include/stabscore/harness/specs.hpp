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

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stabscore/adauction/shapes.hpp"
#include "stabscore/errors.hpp"
#include "stabscore/rational.hpp"
#include "stabscore/srsg.hpp"

// Text forms accepted on the command line and in sweep configs.
namespace stabscore::harness {

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out(1);
  for (char c : text) {
    if (c == sep) out.emplace_back();
    else out.back() += c;
  }
  return out;
}

inline std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_rational(part));
  return out;
}

/// A vector given inline ("10,6,2") or as a shape: "kind[:beta][:hi..lo]",
/// e.g. "linear", "linear:10..1", "beta-convex:2", "beta-concave:3/2:40..0".
/// Shapes without endpoints run from `length` down towards 0 and stop one
/// step before reaching it.
struct VectorSpec {
  std::string text;

  bool is_inline() const {
    return !text.empty() && (std::isdigit(static_cast<unsigned char>(text.front())) || text.front() == '.');
  }

  std::optional<std::size_t> inline_length() const {
    if (!is_inline()) return std::nullopt;
    return split(text, ',').size();
  }

  /// Short label used in table cells.
  std::string label() const { return text; }

  std::vector<Rational> materialize(std::size_t length) const {
    if (is_inline()) {
      auto v = parse_rational_list(text);
      detail::require(v.size() == length, "inline list \"" + text + "\" has " + std::to_string(v.size()) +
                                              " entries, expected " + std::to_string(length));
      return v;
    }
    const auto parts = split(text, ':');
    const auto kind = auction::parse_shape_kind(parts[0]);
    const bool beta_kind = kind == auction::ShapeKind::beta_convex || kind == auction::ShapeKind::beta_concave;
    Rational beta(2);
    std::optional<std::pair<Rational, Rational>> ends;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto dots = parts[i].find("..");
      if (dots != std::string::npos) {
        ends = std::make_pair(parse_rational(parts[i].substr(0, dots)), parse_rational(parts[i].substr(dots + 2)));
      } else {
        detail::require(beta_kind && i == 1, "unexpected shape parameter \"" + parts[i] + "\" in " + text);
        beta = parse_rational(parts[i]);
      }
    }
    if (ends)
      return auction::make_shape(auction::ShapeSpec{kind, length, ends->first, ends->second, beta});
    return auction::shape_prefix(kind, length, Rational(static_cast<unsigned long>(length)), beta);
  }
};

/// Cost function: "linear" (c(t) = t), "power:e" (c(t) = t^e) or an inline list c(1),...,c(n).
inline srsg::CostFn parse_cost(std::string_view text, std::size_t n) {
  if (text == "linear") return srsg::CostFn::linear(n);
  if (text.rfind("power:", 0) == 0) {
    const unsigned e = static_cast<unsigned>(std::stoul(std::string(text.substr(6))));
    std::vector<Rational> v;
    for (std::size_t t = 1; t <= n; ++t) v.push_back(pow(Rational(static_cast<unsigned long>(t)), e));
    return srsg::CostFn(std::move(v));
  }
  return srsg::CostFn(parse_rational_list(text));
}

/// Integer expression over previously bound names: sums and differences of
/// terms "7", "m", "4m", "2*s".
inline std::int64_t eval_affine(std::string_view text, const std::map<std::string, std::int64_t>& env) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  detail::require(!s.empty(), "empty expression");
  std::int64_t total = 0;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw InvalidInput("malformed expression: " + s);
    }
    std::int64_t coef = 1;
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) coef = coef * 10 + (s[i++] - '0');
      have_coef = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    std::string name;
    while (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) name += s[i++];
    detail::require(have_coef || !name.empty(), "malformed expression: " + s);
    std::int64_t term = coef;
    if (!name.empty()) {
      const auto it = env.find(name);
      detail::require(it != env.end(), "unknown name \"" + name + "\" in expression " + s);
      term *= it->second;
    }
    total += sign * term;
  }
  return total;
}

/// "a..b", "a..b:step" or "x,y,z", with endpoints as affine expressions.
/// A range whose end precedes its start is empty.
inline std::vector<std::int64_t> expand_range(std::string_view text, const std::map<std::string, std::int64_t>& env) {
  const std::string s(text);
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    std::vector<std::int64_t> out;
    for (const auto& p : split(s, ',')) out.push_back(eval_affine(p, env));
    return out;
  }
  std::string tail = s.substr(dots + 2);
  std::int64_t step = 1;
  if (const auto colon = tail.find(':'); colon != std::string::npos) {
    step = eval_affine(tail.substr(colon + 1), env);
    tail = tail.substr(0, colon);
  }
  detail::require(step > 0, "range step must be positive");
  const std::int64_t lo = eval_affine(s.substr(0, dots), env);
  const std::int64_t hi = eval_affine(tail, env);
  std::vector<std::int64_t> out;
  for (std::int64_t v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

}  // namespace stabscore::harness
