// Copyright 2026 The Authors.
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

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "srcloc/error.hpp"

namespace srcloc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Integral quantities (demands, capacities, supplies, flow values). The
// sentinel kInfinity compares above every finite value we ever produce and
// all arithmetic on it saturates.
using Count = std::int64_t;
inline constexpr Count kInfinity = std::numeric_limits<Count>::max() / 4;

constexpr bool is_infinite(Count c) { return c >= kInfinity; }

constexpr Count saturating_add(Count a, Count b) {
  if (is_infinite(a) || is_infinite(b)) return kInfinity;
  const Count s = a + b;
  return s >= kInfinity ? kInfinity : s;
}

constexpr Count saturating_mul(Count a, Count b) {
  if (a == 0 || b == 0) return 0;
  if (is_infinite(a) || is_infinite(b)) return kInfinity;
  if (a > kInfinity / b) return kInfinity;
  return a * b;
}

// Subtracting a finite amount from infinity leaves infinity.
constexpr Count saturating_sub(Count a, Count b) {
  if (is_infinite(a)) return kInfinity;
  return a - b;
}

inline std::string count_to_string(Count c) {
  return is_infinite(c) ? std::string("inf") : std::to_string(c);
}

inline std::string rational_to_string(const Rational& r) {
  // cpp_rational::str() prints "p/q" and plain integers without "/1".
  return r.str();
}

inline Rational parse_rational(std::string_view text) {
  if (text.empty()) throw Error(ErrorKind::kParse, "empty number");
  const auto valid = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid(text)) throw Error(ErrorKind::kParse, "malformed number '" + std::string(text) + "'");
    return Rational(BigInt(std::string(text)));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!valid(num) || !valid(den)) {
    throw Error(ErrorKind::kParse, "malformed rational '" + std::string(text) + "'");
  }
  BigInt d(std::string{den});
  if (d == 0) throw Error(ErrorKind::kParse, "zero denominator in '" + std::string(text) + "'");
  return Rational(BigInt(std::string{num}), d);
}

inline Count parse_count(std::string_view text) {
  if (text == "inf") return kInfinity;
  const Rational r = parse_rational(text);
  if (denominator(r) != 1) throw Error(ErrorKind::kParse, "expected an integer, got '" + std::string(text) + "'");
  const BigInt n = numerator(r);
  if (n < 0 || n >= kInfinity) throw Error(ErrorKind::kParse, "integer out of range: '" + std::string(text) + "'");
  return n.convert_to<Count>();
}

// A rational number extended with +infinity and -infinity. Used for costs
// (which may be +infinity), for flow-cost values mu, and for progress values
// of the double cover where -infinity marks "no finite flow yet".
class ExtendedRational {
 public:
  enum class Kind : std::uint8_t { kNegativeInfinity, kFinite, kPositiveInfinity };

  ExtendedRational() = default;
  ExtendedRational(std::int64_t v) : value_(v) {}  // NOLINT(runtime/explicit)
  ExtendedRational(Rational v) : value_(std::move(v)) {}  // NOLINT(runtime/explicit)

  static ExtendedRational infinity() { return ExtendedRational(Kind::kPositiveInfinity); }
  static ExtendedRational negative_infinity() { return ExtendedRational(Kind::kNegativeInfinity); }

  bool is_finite() const { return kind_ == Kind::kFinite; }
  bool is_positive_infinity() const { return kind_ == Kind::kPositiveInfinity; }
  bool is_negative_infinity() const { return kind_ == Kind::kNegativeInfinity; }
  Kind kind() const { return kind_; }

  const Rational& value() const {
    if (!is_finite()) throw std::logic_error("value() on an infinite ExtendedRational");
    return value_;
  }

  bool is_integer() const { return is_finite() && denominator(value_) == 1; }

  ExtendedRational operator-() const {
    switch (kind_) {
      case Kind::kPositiveInfinity:
        return negative_infinity();
      case Kind::kNegativeInfinity:
        return infinity();
      case Kind::kFinite:
        break;
    }
    return ExtendedRational(Rational(-value_));
  }

  friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.is_finite() && b.is_finite()) return ExtendedRational(Rational(a.value_ + b.value_));
    if ((a.is_positive_infinity() && b.is_negative_infinity()) ||
        (a.is_negative_infinity() && b.is_positive_infinity())) {
      throw std::logic_error("inf + (-inf) is undefined");
    }
    return a.is_finite() ? b : a;
  }
  friend ExtendedRational operator-(const ExtendedRational& a, const ExtendedRational& b) { return a + (-b); }
  ExtendedRational& operator+=(const ExtendedRational& o) { return *this = *this + o; }
  ExtendedRational& operator-=(const ExtendedRational& o) { return *this = *this - o; }

  // Multiplication by a finite nonnegative factor; 0 * inf = 0.
  friend ExtendedRational operator*(const ExtendedRational& a, const Rational& factor) {
    if (factor < 0) throw std::logic_error("negative scale factor");
    if (factor == 0) return ExtendedRational();
    if (!a.is_finite()) return a;
    return ExtendedRational(Rational(a.value_ * factor));
  }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    return a.kind_ == b.kind_ && (!a.is_finite() || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
    if (!a.is_finite()) return std::strong_ordering::equal;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::kPositiveInfinity:
        return "inf";
      case Kind::kNegativeInfinity:
        return "-inf";
      case Kind::kFinite:
        break;
    }
    return rational_to_string(value_);
  }

  static ExtendedRational parse(std::string_view text) {
    if (text == "inf" || text == "+inf") return infinity();
    if (text == "-inf") return negative_infinity();
    return ExtendedRational(parse_rational(text));
  }

 private:
  explicit ExtendedRational(Kind k) : kind_(k) {}

  Kind kind_ = Kind::kFinite;
  Rational value_{0};
};

using Cost = ExtendedRational;

inline ExtendedRational from_count(Count c) {
  return is_infinite(c) ? ExtendedRational::infinity() : ExtendedRational(c);
}

// H(j) = 1 + 1/2 + ... + 1/j, H(0) = 0.
inline Rational harmonic(std::int64_t j) {
  if (j < 0) throw std::invalid_argument("harmonic of a negative number");
  Rational h = 0;
  for (std::int64_t i = 1; i <= j; ++i) h += Rational(1, i);
  return h;
}

// Harmonic number of a nonnegative integral ExtendedRational; nullopt when
// the argument is infinite or fractional (the greedy bound is undefined).
inline std::optional<Rational> harmonic_of(const ExtendedRational& x) {
  if (!x.is_integer() || x.value() < 0) return std::nullopt;
  return harmonic(numerator(x.value()).convert_to<std::int64_t>());
}

inline BigInt lcm_of_denominators(const BigInt& acc, const Rational& r) {
  return boost::multiprecision::lcm(acc, denominator(r));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace srcloc
