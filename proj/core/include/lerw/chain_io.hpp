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

#ifndef LERW_CHAIN_IO_HPP_
#define LERW_CHAIN_IO_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lerw/chain.hpp"
#include "lerw/path.hpp"

namespace lerw {

// Plain-text chain format:
//
//   # comment
//   a b c
//   0 1/2 1/2
//   1/2 0 1/2
//   0 0 1
//   absorbing c
//
// The first non-comment line names the states, then one kernel row per
// state. Rational mode requires fractions or integers; double mode also
// accepts decimals. The trailing `absorbing` line is optional.
template <Scalar S>
MarkovChain<S> read_chain(std::istream& in);

template <Scalar S>
MarkovChain<S> read_chain_file(const std::string& filename);

template <Scalar S>
void write_chain(std::ostream& out, const MarkovChain<S>& chain);

// One path per line as whitespace-separated state names. With indices, the
// line continues with " | " and the index set.
void write_path(std::ostream& out, const Path& w,
                const std::vector<std::string>& names,
                const std::vector<std::size_t>* indices = nullptr);

std::vector<Path> read_paths(std::istream& in,
                             const std::vector<std::string>& names);

}  // namespace lerw

#endif  // LERW_CHAIN_IO_HPP_
