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

#include "lerw/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <map>
#include <set>

#include "lerw/errors.hpp"

namespace lerw {

DenseMatrix<double> to_double(const DenseMatrix<Rational>& m) {
  DenseMatrix<double> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  }
  return out;
}

template <>
DenseMatrix<Rational> solve(const DenseMatrix<Rational>& a,
                            const DenseMatrix<Rational>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) {
    throw ValidationError("solve: dimension mismatch");
  }
  const std::size_t m = b.cols();
  DenseMatrix<Rational> lhs = a;
  DenseMatrix<Rational> rhs = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(lhs(pivot, col)) == 0) ++pivot;
    if (pivot == n) throw SingularSystemError("singular rational system");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lhs(col, c), lhs(pivot, c));
      for (std::size_t c = 0; c < m; ++c) std::swap(rhs(col, c), rhs(pivot, c));
    }
    const Rational inv = 1 / lhs(col, col);
    for (std::size_t c = col; c < n; ++c) lhs(col, c) *= inv;
    for (std::size_t c = 0; c < m; ++c) rhs(col, c) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(lhs(r, col)) == 0) continue;
      const Rational factor = lhs(r, col);
      for (std::size_t c = col; c < n; ++c) lhs(r, c) -= factor * lhs(col, c);
      for (std::size_t c = 0; c < m; ++c) rhs(r, c) -= factor * rhs(col, c);
    }
  }
  return rhs;
}

template <>
DenseMatrix<double> solve(const DenseMatrix<double>& a,
                          const DenseMatrix<double>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) {
    throw ValidationError("solve: dimension mismatch");
  }
  const std::size_t m = b.cols();
  Eigen::MatrixXd ea(n, n), eb(n, m);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) ea(r, c) = a(r, c);
    for (std::size_t c = 0; c < m; ++c) eb(r, c) = b(r, c);
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(ea);
  Eigen::MatrixXd x = lu.solve(eb);
  const double scale = ea.norm() * x.norm() + eb.norm();
  const double residual = (ea * x - eb).norm();
  if (!x.allFinite() || residual > 1e-10 * std::max(scale, 1e-300)) {
    throw SingularSystemError("LU solve failed its residual check");
  }
  DenseMatrix<double> out(n, m);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) out(r, c) = x(r, c);
  }
  return out;
}

template <>
std::vector<Rational> solve_sparse(std::vector<SparseRow<Rational>> input,
                                   std::vector<Rational> rhs) {
  const std::size_t n = input.size();
  std::vector<std::map<std::size_t, Rational>> rows(n);
  std::vector<std::set<std::size_t>> cols(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (auto& [c, v] : input[r]) {
      if (sgn(v) == 0) continue;
      rows[r][c] += v;
      cols[c].insert(r);
    }
  }
  input.clear();
  for (std::size_t v = n; v-- > 0;) {
    auto pivot_it = rows[v].find(v);
    if (pivot_it == rows[v].end() || sgn(pivot_it->second) == 0) {
      throw SingularSystemError("zero pivot in sparse elimination");
    }
    const Rational pivot = pivot_it->second;
    const std::vector<std::size_t> targets(cols[v].begin(), cols[v].end());
    for (std::size_t r : targets) {
      if (r >= v) continue;
      auto it = rows[r].find(v);
      const Rational factor = it->second / pivot;
      rows[r].erase(it);
      cols[v].erase(r);
      for (const auto& [c, a] : rows[v]) {
        if (c == v) continue;
        Rational& entry = rows[r][c];
        entry -= factor * a;
        if (sgn(entry) == 0) {
          rows[r].erase(c);
          cols[c].erase(r);
        } else {
          cols[c].insert(r);
        }
      }
      rhs[r] -= factor * rhs[v];
    }
  }
  // Row v now only references variables <= v.
  std::vector<Rational> y(n);
  for (std::size_t v = 0; v < n; ++v) {
    Rational acc = rhs[v];
    Rational diag;
    for (const auto& [c, a] : rows[v]) {
      if (c == v) {
        diag = a;
      } else {
        acc -= a * y[c];
      }
    }
    y[v] = acc / diag;
  }
  return y;
}

template <>
std::vector<double> solve_sparse(std::vector<SparseRow<double>> input,
                                 std::vector<double> rhs) {
  const std::size_t n = input.size();
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t r = 0; r < n; ++r) {
    for (auto& [c, v] : input[r]) triplets.emplace_back(r, c, v);
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success) {
    throw SingularSystemError("sparse LU factorization failed");
  }
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) b(i) = rhs[i];
  Eigen::VectorXd x = lu.solve(b);
  const double residual = (m * x - b).norm();
  if (!x.allFinite() || residual > 1e-10 * (x.norm() + b.norm() + 1.0)) {
    throw SingularSystemError("sparse solve failed its residual check");
  }
  return std::vector<double>(x.data(), x.data() + n);
}

template <>
std::vector<std::vector<Rational>> solve_spd(
    const std::vector<SparseRow<Rational>>& rows,
    const std::vector<std::vector<Rational>>& rhs) {
  std::vector<std::vector<Rational>> out;
  for (const auto& b : rhs) out.push_back(solve_sparse<Rational>(rows, b));
  return out;
}

template <>
std::vector<std::vector<double>> solve_spd(
    const std::vector<SparseRow<double>>& rows,
    const std::vector<std::vector<double>>& rhs) {
  const std::size_t n = rows.size();
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t r = 0; r < n; ++r) {
    for (const auto& [c, v] : rows[r]) triplets.emplace_back(r, c, v);
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(m);
  if (ldlt.info() != Eigen::Success) {
    throw SingularSystemError("sparse LDL^T factorization failed");
  }
  std::vector<std::vector<double>> out;
  for (const auto& col : rhs) {
    Eigen::Map<const Eigen::VectorXd> b(col.data(), static_cast<Eigen::Index>(n));
    Eigen::VectorXd x = ldlt.solve(b);
    const double residual = (m * x - b).norm();
    if (!x.allFinite() || residual > 1e-10 * (x.norm() + b.norm() + 1.0)) {
      throw SingularSystemError("sparse LDL^T solve failed its residual check");
    }
    out.emplace_back(x.data(), x.data() + n);
  }
  return out;
}

}  // namespace lerw
