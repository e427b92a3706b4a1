#pragma once

#include <optional>
#include <vector>

#include "hopfq/algebra.hpp"

namespace hopfq {

/// Reduced row echelon form built one sparse row at a time.
///
/// Rows are kept fully reduced (zero in every other pivot column, pivot entry
/// one), so reducing a new vector takes a single pass over its support.
template <class S>
class SparseEchelon {
 public:
  SparseEchelon(Index cols, FieldSpec field)
      : cols_(cols), field_(field), pivot_row_(static_cast<std::size_t>(cols), -1), work_(cols, field) {}

  Index cols() const { return cols_; }
  Index rank() const { return static_cast<Index>(rows_.size()); }
  const FieldSpec& field() const { return field_; }
  const std::vector<SparseVec<S>>& rows() const { return rows_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  bool is_pivot(Index c) const { return pivot_row_[static_cast<std::size_t>(c)] >= 0; }

  std::vector<Index> free_columns() const {
    std::vector<Index> free;
    for (Index c = 0; c < cols_; ++c) {
      if (!is_pivot(c)) free.push_back(c);
    }
    return free;
  }

  /// v minus its projection onto the current row space.
  SparseVec<S> reduce(const SparseVec<S>& v) const {
    Accumulator<S> acc(cols_, field_);
    reduce_into(v, acc);
    return acc.take();
  }

  bool contains(const SparseVec<S>& v) const { return reduce(v).empty(); }

  /// Adds v to the row space; returns false when v was already in it.
  bool add(const SparseVec<S>& v) {
    reduce_into(v, work_);
    SparseVec<S> r = work_.take();
    if (r.empty()) return false;
    const Index pc = r.front().first;
    const S inv = r.front().second.inverse();
    for (auto& [c, x] : r) x *= inv;
    for (auto& row : rows_) {
      S f = entry(row, pc);
      if (is_zero(f)) continue;
      for (const auto& [c, x] : row) work_.add(c, x);
      for (const auto& [c, x] : r) work_.add(c, -(f * x));
      row = work_.take();
    }
    pivot_row_[static_cast<std::size_t>(pc)] = static_cast<Index>(rows_.size());
    pivots_.push_back(pc);
    rows_.push_back(std::move(r));
    return true;
  }

  /// Columns of the result span the null space of the accumulated rows.
  Matrix<S> kernel() const {
    const std::vector<Index> free = free_columns();
    Matrix<S> basis = zeros<S>(cols_, static_cast<Index>(free.size()), field_);
    std::vector<Index> col_of(static_cast<std::size_t>(cols_), -1);
    for (std::size_t k = 0; k < free.size(); ++k) {
      col_of[static_cast<std::size_t>(free[k])] = static_cast<Index>(k);
      basis(free[k], static_cast<Index>(k)) = field_.template make<S>(1);
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Index pc = pivots_[r];
      for (const auto& [c, x] : rows_[r]) {
        if (c != pc) basis(pc, col_of[static_cast<std::size_t>(c)]) = -x;
      }
    }
    auto& stats = elimination_stats();
    stats.kernels.fetch_add(1, std::memory_order_relaxed);
    stats.rank_nullity_checks.fetch_add(1, std::memory_order_relaxed);
    if (rank() + basis.cols() != cols_) throw HopfError("rank-nullity violated in sparse kernel computation");
    return basis;
  }

 private:
  static S entry(const SparseVec<S>& row, Index c) {
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& t, Index x) { return t.first < x; });
    if (it != row.end() && it->first == c) return it->second;
    return S(0);
  }

  void reduce_into(const SparseVec<S>& v, Accumulator<S>& acc) const {
    for (const auto& [c, x] : v) {
      if (c < 0 || c >= cols_) throw SpaceMismatch("echelon row index out of range");
      acc.add(c, x);
    }
    for (const auto& [c, x] : v) {
      const Index r = pivot_row_[static_cast<std::size_t>(c)];
      if (r < 0) continue;
      // Pivot columns of v are only touched by their own row, so x is final.
      S f = acc.peek(c);
      if (is_zero(f)) continue;
      for (const auto& [cc, y] : rows_[static_cast<std::size_t>(r)]) acc.add(cc, -(f * y));
    }
  }

  Index cols_;
  FieldSpec field_;
  std::vector<Index> pivot_row_;
  std::vector<Index> pivots_;
  std::vector<SparseVec<S>> rows_;
  Accumulator<S> work_;
};

/// Null space of a sparse row system, as columns.
template <class S>
Matrix<S> sparse_kernel(const std::vector<SparseVec<S>>& rows, Index cols, const FieldSpec& field) {
  SparseEchelon<S> e(cols, field);
  for (const auto& r : rows) e.add(r);
  return e.kernel();
}

/// Some x with A x = b, where A is given by sparse columns; nullopt when the
/// system is inconsistent.
template <class S>
std::optional<Vector<S>> solve_sparse(const std::vector<SparseVec<S>>& columns, Index rows, const SparseVec<S>& b,
                                      const FieldSpec& field) {
  const Index n = static_cast<Index>(columns.size());
  std::vector<SparseVec<S>> by_row(static_cast<std::size_t>(rows));
  for (Index j = 0; j < n; ++j) {
    for (const auto& [i, x] : columns[static_cast<std::size_t>(j)]) by_row[static_cast<std::size_t>(i)].emplace_back(j, x);
  }
  for (const auto& [i, x] : b) by_row[static_cast<std::size_t>(i)].emplace_back(n, x);
  SparseEchelon<S> e(n + 1, field);
  for (const auto& r : by_row) e.add(r);
  elimination_stats().reductions.fetch_add(1, std::memory_order_relaxed);
  Vector<S> x = zero_vector<S>(n, field);
  for (std::size_t r = 0; r < e.rows().size(); ++r) {
    const Index pc = e.pivots()[r];
    if (pc == n) return std::nullopt;
    const auto& row = e.rows()[r];
    if (row.back().first == n) x(pc) = row.back().second;
  }
  return x;
}

}  // namespace hopfq
