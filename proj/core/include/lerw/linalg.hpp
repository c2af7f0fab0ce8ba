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

#ifndef LERW_LINALG_HPP_
#define LERW_LINALG_HPP_

#include <cstddef>
#include <utility>
#include <vector>

#include "lerw/scalar.hpp"

namespace lerw {

// Row-major dense matrix over an exact or floating scalar.
template <Scalar S>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

DenseMatrix<double> to_double(const DenseMatrix<Rational>& m);

// Solves A X = B. Rational: exact Gaussian elimination. Double: LU with
// partial pivoting followed by a relative residual check (<= 1e-10).
// Throws SingularSystemError when no unique solution exists.
template <Scalar S>
DenseMatrix<S> solve(const DenseMatrix<S>& a, const DenseMatrix<S>& b);

template <Scalar S>
using SparseRow = std::vector<std::pair<std::size_t, S>>;

// Solves M y = rhs for a sparse nonsingular M-matrix (I - Q or its
// transpose, Q substochastic with an absorbing escape). Rational mode
// eliminates variables from the highest index down with diagonal pivots,
// which keeps fill local when unknowns are numbered in discovery order.
template <Scalar S>
std::vector<S> solve_sparse(std::vector<SparseRow<S>> rows, std::vector<S> rhs);

// Symmetric positive definite sparse systems with several right-hand sides
// sharing one factorization (sparse LDL^T in double mode).
template <Scalar S>
std::vector<std::vector<S>> solve_spd(const std::vector<SparseRow<S>>& rows,
                                      const std::vector<std::vector<S>>& rhs);

}  // namespace lerw

#endif  // LERW_LINALG_HPP_
