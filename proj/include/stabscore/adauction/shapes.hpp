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
#include <optional>
#include <string>
#include <vector>

#include "stabscore/errors.hpp"
#include "stabscore/rational.hpp"

namespace stabscore::auction {

// Shape classes for nonincreasing vectors, described through the
// consecutive drops d_i = g_i - g_{i+1}. Convex means the drops never grow,
// beta-convex means each drop is at least beta times the next, and
// beta-concave means each drop is at most 1/beta times the next.
enum class ShapeKind { linear, convex, concave, beta_convex, beta_concave, irregular };

inline const char* to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::linear: return "linear";
    case ShapeKind::convex: return "convex";
    case ShapeKind::concave: return "concave";
    case ShapeKind::beta_convex: return "beta-convex";
    case ShapeKind::beta_concave: return "beta-concave";
    case ShapeKind::irregular: return "irregular";
  }
  return "irregular";
}

inline ShapeKind parse_shape_kind(const std::string& text) {
  for (ShapeKind k : {ShapeKind::linear, ShapeKind::convex, ShapeKind::concave, ShapeKind::beta_convex,
                      ShapeKind::beta_concave})
    if (text == to_string(k)) return k;
  throw InvalidInput("unknown shape kind: " + text);
}

struct ShapeSpec {
  ShapeKind kind = ShapeKind::linear;
  std::size_t length = 2;
  Rational hi = 1;    // first entry
  Rational lo = 0;    // last entry
  Rational beta = 2;  // only read by the beta kinds
};

/// Exact vector from hi down to lo with the requested drop pattern.
inline std::vector<Rational> make_shape(const ShapeSpec& spec) {
  if (spec.length < 2) throw GenerationError("shape length must be at least 2");
  if (spec.lo < 0) throw GenerationError("shape endpoints must be nonnegative");
  if (!(spec.hi > spec.lo)) throw GenerationError("shape must strictly decrease from hi to lo");
  const std::size_t drops = spec.length - 1;
  std::vector<Rational> weight(drops);
  for (std::size_t t = 0; t < drops; ++t) {
    switch (spec.kind) {
      case ShapeKind::linear: weight[t] = 1; break;
      case ShapeKind::convex: weight[t] = static_cast<unsigned long>(drops - t); break;
      case ShapeKind::concave: weight[t] = static_cast<unsigned long>(t + 1); break;
      case ShapeKind::beta_convex:
      case ShapeKind::beta_concave: {
        if (spec.beta < 1) throw GenerationError("beta must be at least 1");
        const unsigned e = static_cast<unsigned>(spec.kind == ShapeKind::beta_convex ? drops - 1 - t : t);
        weight[t] = pow(spec.beta, e);
        break;
      }
      case ShapeKind::irregular: throw GenerationError("irregular is a classification result, not a generator");
    }
  }
  Rational total(0);
  for (const auto& w : weight) total += w;
  const Rational unit = (spec.hi - spec.lo) / total;
  std::vector<Rational> out(spec.length);
  out[0] = spec.hi;
  for (std::size_t t = 0; t < drops; ++t) out[t + 1] = out[t] - weight[t] * unit;
  out.back() = spec.lo;
  return out;
}

/// First `count` entries of a shape that would reach zero one step later.
/// Used for CTRs (x_{s+1} = 0) and for valuations.
inline std::vector<Rational> shape_prefix(ShapeKind kind, std::size_t count, const Rational& hi,
                                          const Rational& beta = Rational(2)) {
  auto full = make_shape(ShapeSpec{kind, count + 1, hi, Rational(0), beta});
  full.pop_back();
  return full;
}

struct ShapeClassification {
  ShapeKind kind = ShapeKind::irregular;
  bool convex = false;
  bool concave = false;
  Rational beta = 1;  // largest certified beta for the reported beta kind, 1 otherwise
};

/// Checks the defining inequalities exactly on the first `prefix` entries
/// (all entries when prefix is empty).
inline ShapeClassification classify_shape(const std::vector<Rational>& g,
                                          std::optional<std::size_t> prefix = std::nullopt) {
  const std::size_t len = std::min(g.size(), prefix.value_or(g.size()));
  detail::require(len >= 2, "shape classification needs at least two entries");
  std::vector<Rational> d(len - 1);
  for (std::size_t i = 0; i + 1 < len; ++i) {
    d[i] = g[i] - g[i + 1];
    detail::require(d[i] >= 0, "shape classification expects a nonincreasing vector");
  }
  ShapeClassification out;
  out.convex = true;
  out.concave = true;
  std::optional<Rational> convex_beta;
  std::optional<Rational> concave_beta;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (d[i] > d[i - 1]) out.convex = false;
    if (d[i] < d[i - 1]) out.concave = false;
    if (d[i] > 0) {
      const Rational r = d[i - 1] / d[i];
      if (!convex_beta || r < *convex_beta) convex_beta = r;
    }
    if (d[i - 1] > 0) {
      const Rational r = d[i] / d[i - 1];
      if (!concave_beta || r < *concave_beta) concave_beta = r;
    }
  }
  if (out.convex && out.concave) {
    out.kind = ShapeKind::linear;
  } else if (out.convex) {
    if (convex_beta && *convex_beta > 1) {
      out.kind = ShapeKind::beta_convex;
      out.beta = *convex_beta;
    } else {
      out.kind = ShapeKind::convex;
    }
  } else if (out.concave) {
    if (concave_beta && *concave_beta > 1) {
      out.kind = ShapeKind::beta_concave;
      out.beta = *concave_beta;
    } else {
      out.kind = ShapeKind::concave;
    }
  }
  return out;
}

}  // namespace stabscore::auction
