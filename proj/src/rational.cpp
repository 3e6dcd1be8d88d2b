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

#include "contextcost/rational.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace contextcost {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(unsigned long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return p;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) {
      throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    digits = std::string(s);
  }
  mpz_class num(digits, 10);
  Rational r;
  if (exponent >= 0) {
    r = Rational(num * pow10(static_cast<unsigned long>(exponent)));
  } else {
    r = Rational(num, pow10(static_cast<unsigned long>(-exponent)));
    r.canonicalize();
  }
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view p = text.substr(0, slash);
    std::string_view q = text.substr(slash + 1);
    std::string_view p_digits = p;
    if (!p_digits.empty() && (p_digits.front() == '-' || p_digits.front() == '+')) p_digits.remove_prefix(1);
    if (!all_digits(p_digits) || !all_digits(q)) {
      throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
    mpz_class num(std::string(p[0] == '+' ? p.substr(1) : p), 10);
    mpz_class den(std::string(q), 10);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  return parse_decimal(text);
}

std::string format_rational(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational snap_to_grid(double x, std::int64_t denominator) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot snap a non-finite value");
  // x * denominator is exact enough for |x| <= 1 and denominator <= 2^31.
  const double scaled = std::nearbyint(x * static_cast<double>(denominator));
  Rational r(mpz_class(scaled), mpz_class(static_cast<long>(denominator)));
  r.canonicalize();
  return r;
}

double neg_log2(const Rational& r) {
  constexpr unsigned long kExactBits = 53;
  if (mpz_sizeinbase(r.get_num_mpz_t(), 2) <= kExactBits && mpz_sizeinbase(r.get_den_mpz_t(), 2) <= kExactBits) {
    return std::log2(r.get_den().get_d()) - std::log2(r.get_num().get_d());
  }
  return -std::log2(nearest_double(r));
}

double nearest_double(const Rational& r) {
  constexpr unsigned long kExactBits = 53;
  if (mpz_sizeinbase(r.get_num_mpz_t(), 2) <= kExactBits && mpz_sizeinbase(r.get_den_mpz_t(), 2) <= kExactBits) {
    return r.get_num().get_d() / r.get_den().get_d();
  }
  // Long operands: 40 significant decimal digits, then correctly rounded strtod.
  mpf_class f(r, 256);
  mp_exp_t exp = 0;
  const std::string digits = f.get_str(exp, 10, 40);
  if (digits.empty()) return 0.0;
  const bool negative = digits.front() == '-';
  const std::string mantissa = negative ? digits.substr(1) : digits;
  const std::string text = (negative ? "-0." : "0.") + mantissa + "e" + std::to_string(exp);
  return std::strtod(text.c_str(), nullptr);
}

double parse_double(std::string_view text) {
  const Rational exact = parse_rational(text);
  if (text.find('/') == std::string_view::npos) return std::strtod(std::string(text).c_str(), nullptr);
  return nearest_double(exact);
}

std::string format_double(double x) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

double round_sig12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return std::strtod(buf, nullptr);
}

}  // namespace contextcost
