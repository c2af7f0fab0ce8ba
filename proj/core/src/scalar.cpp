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

#include "lerw/scalar.hpp"

#include <charconv>
#include <cstdio>
#include <string>

#include "lerw/errors.hpp"

namespace lerw {

std::string_view to_string(NumericMode mode) {
  return mode == NumericMode::kRational ? "rational" : "double";
}

NumericMode parse_mode(std::string_view text) {
  if (text == "rational") return NumericMode::kRational;
  if (text == "double") return NumericMode::kDouble;
  throw ValidationError("unknown numeric mode '" + std::string(text) + "'");
}

namespace {

bool looks_decimal(std::string_view text) {
  return text.find_first_of(".eE") != std::string_view::npos;
}

double parse_double_literal(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

Rational parse_rational_literal(std::string_view text) {
  const std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw ValidationError("cannot parse rational '" + s + "'");
  }
  if (q.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  if (looks_decimal(text)) {
    throw ValidationError("decimal literal '" + std::string(text) +
                          "' in rational mode; write it as a fraction");
  }
  return parse_rational_literal(text);
}

template <>
double parse_scalar<double>(std::string_view text) {
  if (looks_decimal(text)) return parse_double_literal(text);
  return parse_rational_literal(text).get_d();
}

template <>
std::string format_scalar<Rational>(const Rational& value) {
  return value.get_str();
}

template <>
std::string format_scalar<double>(const double& value) {
  // Shortest representation that round-trips; deterministic across runs.
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return std::to_string(value);
  return std::string(buf, ptr);
}

}  // namespace lerw
