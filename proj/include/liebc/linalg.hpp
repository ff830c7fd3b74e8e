#pragma once

// Exact linear algebra over a field: dense row-reduction with first-nonzero
// pivoting, compressed-column sparse matrices, and rank/kernel/solve routines
// that split a sparse matrix into independent connected blocks first.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "liebc/field.hpp"

namespace liebc {

template <class F>
struct FieldOps;

template <>
struct FieldOps<FieldElement> {
  static bool is_zero(const FieldElement& x) { return x.is_zero(); }
  static FieldElement inv(const FieldElement& x) { return x.inv(); }
  static FieldElement conj(const FieldElement& x) { return x.conj(); }
};

template <>
struct FieldOps<Rational> {
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational inv(const Rational& x) { return x.reciprocal(); }
  static Rational conj(const Rational& x) { return x; }
};

template <class F>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<F> column(std::size_t c) const {
    std::vector<F> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& x) { return FieldOps<F>::is_zero(x); });
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  DenseMatrix adjoint() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = FieldOps<F>::conj((*this)(r, c));
    return t;
  }

  DenseMatrix conjugate() const {
    DenseMatrix t(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) t.data_[k] = FieldOps<F>::conj(data_[k]);
    return t;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (FieldOps<F>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const F& bkj = b(k, j);
          if (!FieldOps<F>::is_zero(bkj)) out(i, j) += aik * bkj;
        }
      }
    return out;
  }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend DenseMatrix operator*(const F& s, DenseMatrix a) {
    for (auto& x : a.data_) x = s * x;
    return a;
  }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<F> apply(const std::vector<F>& x) const {
    std::vector<F> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (!FieldOps<F>::is_zero((*this)(r, c)) && !FieldOps<F>::is_zero(x[c])) y[r] += (*this)(r, c) * x[c];
    return y;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<F> data_;
};

// Reduced row echelon form in place. The pivot for each column is the first
// row at or below the current one with a nonzero entry. Returns pivot columns.
template <class F>
std::vector<std::size_t> rref(DenseMatrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && FieldOps<F>::is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    F inv = FieldOps<F>::inv(m(row, col));
    for (std::size_t c = col; c < m.cols(); ++c)
      if (!FieldOps<F>::is_zero(m(row, c))) m(row, c) = m(row, c) * inv;
    std::vector<std::size_t> nz;
    for (std::size_t c = col; c < m.cols(); ++c)
      if (!FieldOps<F>::is_zero(m(row, c))) nz.push_back(c);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || FieldOps<F>::is_zero(m(r, col))) continue;
      F f = m(r, col);
      for (std::size_t c : nz) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t rank(DenseMatrix<F> m) {
  return rref(m).size();
}

// Kernel basis read off the reduced echelon form: one vector per free column.
template <class F>
std::vector<std::vector<F>> kernel(DenseMatrix<F> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<F> v(m.cols());
    v[f] = F(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      if (!FieldOps<F>::is_zero(m(r, f))) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class F>
std::optional<DenseMatrix<F>> inverse(const DenseMatrix<F>& a) {
  std::size_t n = a.rows();
  DenseMatrix<F> aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = F(1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  DenseMatrix<F> out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
  return out;
}

template <class F>
F determinant(DenseMatrix<F> m) {
  std::size_t n = m.rows();
  F det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && FieldOps<F>::is_zero(m(p, col))) ++p;
    if (p == n) return F();
    if (p != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(p, c), m(col, c));
      det = -det;
    }
    det = det * m(col, col);
    F inv = FieldOps<F>::inv(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (FieldOps<F>::is_zero(m(r, col))) continue;
      F f = m(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

template <class F>
using SparseVector = std::vector<std::pair<std::uint32_t, F>>;

template <class F>
SparseVector<F> sparsify(const std::vector<F>& v) {
  SparseVector<F> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!FieldOps<F>::is_zero(v[i])) out.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return out;
}

template <class F>
std::vector<F> densify(const SparseVector<F>& v, std::size_t n) {
  std::vector<F> out(n);
  for (const auto& [i, x] : v) out[i] = x;
  return out;
}

// Compressed-column matrix; entries within a column are sorted by row.
template <class F>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const SparseVector<F>& column(std::size_t c) const { return columns_[c]; }
  void set_column(std::size_t c, SparseVector<F> v) {
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    columns_[c] = std::move(v);
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }
  bool is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const auto& c) { return c.empty(); });
  }

  static SparseMatrix from_dense(const DenseMatrix<F>& d) {
    SparseMatrix s(d.rows(), d.cols());
    for (std::size_t c = 0; c < d.cols(); ++c) s.columns_[c] = sparsify(d.column(c));
    return s;
  }
  DenseMatrix<F> to_dense() const {
    DenseMatrix<F> d(rows_, cols());
    for (std::size_t c = 0; c < cols(); ++c)
      for (const auto& [r, x] : columns_[c]) d(r, c) = x;
    return d;
  }

  SparseVector<F> apply(const SparseVector<F>& x) const {
    std::vector<F> acc(rows_);
    std::vector<bool> touched(rows_, false);
    for (const auto& [c, xc] : x)
      for (const auto& [r, a] : columns_[c]) {
        acc[r] += a * xc;
        touched[r] = true;
      }
    SparseVector<F> out;
    for (std::size_t r = 0; r < rows_; ++r)
      if (touched[r] && !FieldOps<F>::is_zero(acc[r])) out.emplace_back(static_cast<std::uint32_t>(r), acc[r]);
    return out;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out(a.rows_, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) out.columns_[c] = a.apply(b.columns_[c]);
    return out;
  }
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out(a.rows_, a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
      std::vector<std::pair<std::uint32_t, F>> merged;
      auto ia = a.columns_[c].begin(), ib = b.columns_[c].begin();
      while (ia != a.columns_[c].end() || ib != b.columns_[c].end()) {
        if (ib == b.columns_[c].end() || (ia != a.columns_[c].end() && ia->first < ib->first)) {
          merged.push_back(*ia++);
        } else if (ia == a.columns_[c].end() || ib->first < ia->first) {
          merged.push_back(*ib++);
        } else {
          F s = ia->second + ib->second;
          if (!FieldOps<F>::is_zero(s)) merged.emplace_back(ia->first, s);
          ++ia;
          ++ib;
        }
      }
      out.columns_[c] = std::move(merged);
    }
    return out;
  }

  SparseMatrix adjoint() const {
    SparseMatrix out(cols(), rows_);
    for (std::size_t c = 0; c < cols(); ++c)
      for (const auto& [r, x] : columns_[c])
        out.columns_[r].emplace_back(static_cast<std::uint32_t>(c), FieldOps<F>::conj(x));
    return out;
  }

  // [a; b]
  static SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out(a.rows_ + b.rows_, a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
      out.columns_[c] = a.columns_[c];
      for (const auto& [r, x] : b.columns_[c])
        out.columns_[c].emplace_back(static_cast<std::uint32_t>(r + a.rows_), x);
    }
    return out;
  }
  // [a | b]
  static SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out(a.rows_, a.cols() + b.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) out.columns_[c] = a.columns_[c];
    for (std::size_t c = 0; c < b.cols(); ++c) out.columns_[a.cols() + c] = b.columns_[c];
    return out;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector<F>> columns_;
};

// Rows and columns of one connected block of the bipartite row/column graph.
struct Block {
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> cols;
};

template <class F>
std::vector<Block> connected_blocks(const SparseMatrix<F>& a) {
  std::size_t nc = a.cols(), nr = a.rows();
  std::vector<std::uint32_t> parent(nc + nr);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> row_used(nr, false);
  for (std::size_t c = 0; c < nc; ++c)
    for (const auto& [r, x] : a.column(c)) {
      row_used[r] = true;
      std::uint32_t u = find(static_cast<std::uint32_t>(c)), v = find(static_cast<std::uint32_t>(nc + r));
      if (u != v) parent[std::max(u, v)] = std::min(u, v);
    }
  std::vector<int> slot(nc + nr, -1);
  std::vector<Block> blocks;
  for (std::size_t c = 0; c < nc; ++c) {
    auto root = find(static_cast<std::uint32_t>(c));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[root]].cols.push_back(static_cast<std::uint32_t>(c));
  }
  for (std::size_t r = 0; r < nr; ++r) {
    if (!row_used[r]) continue;
    auto root = find(static_cast<std::uint32_t>(nc + r));
    blocks[slot[root]].rows.push_back(static_cast<std::uint32_t>(r));
  }
  return blocks;
}

template <class F>
DenseMatrix<F> extract(const SparseMatrix<F>& a, const Block& b) {
  std::vector<int> local(a.rows(), -1);
  for (std::size_t i = 0; i < b.rows.size(); ++i) local[b.rows[i]] = static_cast<int>(i);
  DenseMatrix<F> d(b.rows.size(), b.cols.size());
  for (std::size_t j = 0; j < b.cols.size(); ++j)
    for (const auto& [r, x] : a.column(b.cols[j])) d(local[r], j) = x;
  return d;
}

template <class F>
std::size_t rank(const SparseMatrix<F>& a) {
  std::size_t total = 0;
  for (const auto& b : connected_blocks(a))
    if (!b.rows.empty()) total += rank(extract(a, b));
  return total;
}

// Kernel basis; each vector is supported in one connected block, and within a
// block it is the echelon basis for the block's column order.
template <class F>
std::vector<SparseVector<F>> kernel(const SparseMatrix<F>& a) {
  std::vector<SparseVector<F>> out;
  for (const auto& b : connected_blocks(a)) {
    if (b.rows.empty()) {
      for (auto c : b.cols) out.push_back({{c, F(1)}});
      continue;
    }
    for (const auto& v : kernel(extract(a, b))) {
      SparseVector<F> g;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!FieldOps<F>::is_zero(v[j])) g.emplace_back(b.cols[j], v[j]);
      out.push_back(std::move(g));
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front().first < y.front().first; });
  return out;
}

// Columns of a that form a basis of its column space (pivot columns per block).
template <class F>
std::vector<SparseVector<F>> column_basis(const SparseMatrix<F>& a) {
  std::vector<std::uint32_t> keep;
  for (const auto& b : connected_blocks(a)) {
    if (b.rows.empty()) continue;
    auto d = extract(a, b);
    for (auto p : rref(d)) keep.push_back(b.cols[p]);
  }
  std::sort(keep.begin(), keep.end());
  std::vector<SparseVector<F>> out;
  for (auto c : keep) out.push_back(a.column(c));
  return out;
}

// Some solution of a*y = rhs, or nullopt if the system is inconsistent.
template <class F>
std::optional<SparseVector<F>> solve(const SparseMatrix<F>& a, const SparseVector<F>& rhs) {
  auto blocks = connected_blocks(a);
  std::vector<int> block_of_row(a.rows(), -1);
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (auto r : blocks[k].rows) block_of_row[r] = static_cast<int>(k);
  std::vector<std::vector<std::pair<std::uint32_t, F>>> rhs_of(blocks.size());
  for (const auto& [r, x] : rhs) {
    if (block_of_row[r] < 0) return std::nullopt;
    rhs_of[block_of_row[r]].emplace_back(r, x);
  }
  SparseVector<F> y;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (rhs_of[k].empty()) continue;
    const Block& b = blocks[k];
    DenseMatrix<F> sub = extract(a, b);
    DenseMatrix<F> aug(sub.rows(), sub.cols() + 1);
    for (std::size_t r = 0; r < sub.rows(); ++r)
      for (std::size_t c = 0; c < sub.cols(); ++c) aug(r, c) = sub(r, c);
    for (const auto& [r, x] : rhs_of[k]) {
      auto pos = std::lower_bound(b.rows.begin(), b.rows.end(), r) - b.rows.begin();
      aug(pos, sub.cols()) = x;
    }
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == sub.cols()) return std::nullopt;
    for (std::size_t i = 0; i < piv.size(); ++i)
      if (!FieldOps<F>::is_zero(aug(i, sub.cols()))) y.emplace_back(b.cols[piv[i]], aug(i, sub.cols()));
  }
  std::sort(y.begin(), y.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  return y;
}

}  // namespace liebc
