// Copyright 2026 The lerw Authors
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

#ifndef LERW_SCALAR_HPP_
#define LERW_SCALAR_HPP_

#include <gmpxx.h>

#include <concepts>
#include <string>
#include <string_view>
#include <type_traits>

namespace lerw {

using Rational = mpq_class;

enum class NumericMode { kRational, kDouble };

template <typename S>
concept Scalar = std::same_as<S, Rational> || std::same_as<S, double>;

template <Scalar S>
constexpr NumericMode mode_of() {
  if constexpr (std::is_same_v<S, Rational>) {
    return NumericMode::kRational;
  } else {
    return NumericMode::kDouble;
  }
}

std::string_view to_string(NumericMode mode);
NumericMode parse_mode(std::string_view text);

// Parses "3/4", "-2", "0.25" or "1e-3". Rational mode rejects decimal
// notation so that exact inputs stay exact; double mode accepts both.
template <Scalar S>
S parse_scalar(std::string_view text);

template <Scalar S>
std::string format_scalar(const S& value);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double d) { return d; }

template <Scalar S>
S from_double(double d) {
  if constexpr (std::is_same_v<S, Rational>) {
    return Rational(d);
  } else {
    return d;
  }
}

inline Rational abs_value(const Rational& q) { return abs(q); }
inline double abs_value(double d) { return d < 0 ? -d : d; }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(double d) { return d == 0.0; }

// GMP arithmetic assumes reduced operands; inputs built from a numerator
// and denominator may not be.
inline Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}
inline double canonical(double d) { return d; }

}  // namespace lerw

#endif  // LERW_SCALAR_HPP_
