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

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "stabscore/errors.hpp"

namespace stabscore {

/// Exact rational number. Every payoff, bid, value and probability in the
/// library is carried as a Rational; no comparison ever uses a tolerance.
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", "p" or a finite decimal literal such as "2.5" or "-0.125".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  if (s.empty()) throw InvalidInput("empty rational literal");
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw InvalidInput("bad rational literal: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw InvalidInput("bad rational literal: " + s);
    if (digits.front() == '+') digits.erase(digits.begin());
    BigInt num;
    if (num.set_str(digits, 10) != 0) throw InvalidInput("bad rational literal: " + s);
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  if (r.set_str(s, 10) != 0) throw InvalidInput("bad rational literal: " + std::string(text));
  if (r.get_den() == 0) throw InvalidInput("zero denominator: " + std::string(text));
  r.canonicalize();
  return r;
}

/// Canonical "p/q" form; integers print without a denominator.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline double to_double(const Rational& r) { return r.get_d(); }

/// num/den in canonical form. GMP arithmetic assumes canonical operands.
inline Rational ratio(long num, unsigned long den) {
  if (den == 0) throw InvalidInput("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Binomial coefficient as an unsigned 64-bit count; throws on overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw InvalidInput("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / 2; }

}  // namespace stabscore
