// Copyright 2026 The contextcost Authors
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

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

namespace contextcost {

using Rational = mpq_class;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::int64_t kDefaultSnapDenominator = 1'000'000;

/// Parses "p/q", an integer, or a plain decimal ("0.25", "1e-3") into an
/// exact canonical rational. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& r);

/// Nearest point of the grid k/denominator, reduced.
Rational snap_to_grid(double x, std::int64_t denominator = kDefaultSnapDenominator);

/// -log2(r) for r > 0. Exact-integer numerators and denominators take
/// the log2(q) - log2(p) route so that 1/k maps to exactly std::log2(k).
double neg_log2(const Rational& r);

/// Nearest binary64 to r. (mpq_class::get_d truncates.)
double nearest_double(const Rational& r);

/// Correctly rounded binary64 from "p/q" or decimal text.
double parse_double(std::string_view text);

/// Shortest round-tripping decimal for a binary64 value.
std::string format_double(double x);

/// Rounds to 12 significant digits (report precision).
double round_sig12(double x);

/// Arithmetic policy for the probability scalar. Exact scalars compare by
/// equality; binary64 compares within a tolerance.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode_name = "exact";
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational ratio(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  static double to_double(const Rational& x) { return nearest_double(x); }
  static Rational parse(std::string_view s) { return parse_rational(s); }
  static std::string format(const Rational& x) { return format_rational(x); }
  static bool near(const Rational& a, const Rational& b, double /*tol*/) { return a == b; }
  static double distance(const Rational& a, const Rational& b) {
    return std::abs(nearest_double(Rational(a - b)));
  }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static bool is_negative(const Rational& x) { return sgn(x) < 0; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* mode_name = "float";
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double ratio(long num, long den) { return static_cast<double>(num) / static_cast<double>(den); }
  static double to_double(double x) { return x; }
  static double parse(std::string_view s) { return parse_double(s); }
  static std::string format(double x) { return format_double(x); }
  static bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }
  static double distance(double a, double b) { return std::abs(a - b); }
  static bool is_zero(double x) { return x == 0.0; }
  static bool is_negative(double x) { return x < 0.0; }
};

template <class S>
concept ProbabilityScalar = requires { ScalarTraits<S>::exact; };

template <ProbabilityScalar S>
double to_double(const S& x) {
  return ScalarTraits<S>::to_double(x);
}

}  // namespace contextcost
