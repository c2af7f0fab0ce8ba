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

#include "lerw/chain_io.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lerw/errors.hpp"

namespace lerw {
namespace {

std::string strip_comment(const std::string& line) {
  return line.substr(0, line.find('#'));
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace

template <Scalar S>
MarkovChain<S> read_chain(std::istream& in) {
  std::vector<std::string> names;
  std::vector<std::vector<S>> rows;
  std::optional<std::string> absorbing;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split(strip_comment(line));
    if (tokens.empty()) continue;
    if (names.empty()) {
      names = tokens;
      continue;
    }
    if (tokens[0] == "absorbing") {
      if (tokens.size() != 2) {
        throw ValidationError("line " + std::to_string(line_no) +
                              ": expected 'absorbing <name>'");
      }
      absorbing = tokens[1];
      continue;
    }
    if (absorbing) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": kernel row after absorbing line");
    }
    std::vector<S> row;
    for (const auto& tok : tokens) {
      try {
        row.push_back(parse_scalar<S>(tok));
      } catch (const ValidationError& e) {
        throw ValidationError("line " + std::to_string(line_no) + ": " +
                              e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  if (names.empty()) throw ValidationError("chain file has no state names");
  if (rows.size() != names.size()) {
    throw ValidationError("expected " + std::to_string(names.size()) +
                          " kernel rows, found " + std::to_string(rows.size()));
  }
  std::optional<StateId> absorbing_id;
  if (absorbing) {
    auto it = std::find(names.begin(), names.end(), *absorbing);
    if (it == names.end()) {
      throw ValidationError("unknown absorbing state '" + *absorbing + "'");
    }
    absorbing_id = static_cast<StateId>(it - names.begin());
  }
  return build_chain<S>(std::move(names), rows, absorbing_id);
}

template <Scalar S>
MarkovChain<S> read_chain_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw ValidationError("cannot open chain file " + filename);
  return read_chain<S>(in);
}

template <Scalar S>
void write_chain(std::ostream& out, const MarkovChain<S>& chain) {
  const std::size_t n = chain.size();
  for (std::size_t i = 0; i < n; ++i) {
    out << (i ? " " : "") << chain.name(static_cast<StateId>(i));
  }
  out << '\n';
  for (StateId x = 0; x < n; ++x) {
    for (StateId y = 0; y < n; ++y) {
      out << (y ? " " : "") << format_scalar<S>(chain.prob(x, y));
    }
    out << '\n';
  }
  if (chain.absorbing()) out << "absorbing " << chain.name(*chain.absorbing()) << '\n';
}

template MarkovChain<Rational> read_chain(std::istream&);
template MarkovChain<double> read_chain(std::istream&);
template MarkovChain<Rational> read_chain_file(const std::string&);
template MarkovChain<double> read_chain_file(const std::string&);
template void write_chain(std::ostream&, const MarkovChain<Rational>&);
template void write_chain(std::ostream&, const MarkovChain<double>&);

void write_path(std::ostream& out, const Path& w,
                const std::vector<std::string>& names,
                const std::vector<std::size_t>* indices) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    out << (i ? " " : "");
    if (w[i] < names.size()) {
      out << names[w[i]];
    } else {
      out << w[i];
    }
  }
  if (indices) {
    out << " |";
    for (std::size_t k : *indices) out << ' ' << k;
  }
  out << '\n';
}

std::vector<Path> read_paths(std::istream& in,
                             const std::vector<std::string>& names) {
  std::vector<Path> paths;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    line = line.substr(0, line.find('|'));
    const auto tokens = split(line);
    if (tokens.empty()) continue;
    std::vector<StateId> states;
    for (const auto& tok : tokens) {
      auto it = std::find(names.begin(), names.end(), tok);
      if (it == names.end()) {
        throw ValidationError("unknown state '" + tok + "' in path");
      }
      states.push_back(static_cast<StateId>(it - names.begin()));
    }
    paths.emplace_back(std::move(states));
  }
  return paths;
}

}  // namespace lerw
