#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hopfq/linalg.hpp"

namespace hopfq {

/// Sparse coordinate vector: (basis index, nonzero coefficient) pairs, sorted by index.
template <class S>
using SparseVec = std::vector<std::pair<Index, S>>;

class InvalidStructure : public HopfError {
 public:
  using HopfError::HopfError;
};

/// Outcome of an axiom check. A failure names the axiom and the first
/// offending basis multi-index.
struct Verdict {
  bool pass = true;
  std::string axiom;
  std::vector<Index> witness;
  std::string detail;

  static Verdict ok() { return {}; }
  static Verdict fail(std::string axiom, std::vector<Index> witness, std::string detail = {}) {
    return {false, std::move(axiom), std::move(witness), std::move(detail)};
  }
  explicit operator bool() const { return pass; }

  std::string describe() const {
    if (pass) return "pass";
    std::ostringstream os;
    os << axiom << " fails";
    if (!witness.empty()) {
      os << " at basis index (";
      for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? "," : "") << witness[i];
      os << ")";
    }
    if (!detail.empty()) os << ": " << detail;
    return os.str();
  }
};

/// Dense accumulator used to sum sparse terms without allocation churn.
template <class S>
class Accumulator {
 public:
  Accumulator(Index n, const FieldSpec& field) : values_(static_cast<std::size_t>(n), field.template make<S>(0)), used_(static_cast<std::size_t>(n), false) {}

  void add(Index i, const S& c) {
    auto k = static_cast<std::size_t>(i);
    if (!used_[k]) {
      used_[k] = true;
      touched_.push_back(i);
    }
    values_[k] += c;
  }

  S peek(Index i) const { return values_[static_cast<std::size_t>(i)]; }

  /// Returns the nonzero entries sorted by index and resets the accumulator.
  SparseVec<S> take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVec<S> out;
    for (auto i : touched_) {
      auto k = static_cast<std::size_t>(i);
      if (!is_zero(values_[k])) out.emplace_back(i, values_[k]);
      values_[k] = S(0);
      used_[k] = false;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<S> values_;
  std::vector<bool> used_;
  std::vector<Index> touched_;
};

template <class S>
SparseVec<S> sparse_of(const Vector<S>& v) {
  SparseVec<S> out;
  for (Index i = 0; i < v.size(); ++i) {
    if (!is_zero(v(i))) out.emplace_back(i, v(i));
  }
  return out;
}

template <class S>
Vector<S> dense_of(const SparseVec<S>& v, Index n, const FieldSpec& field) {
  Vector<S> out = zero_vector<S>(n, field);
  for (const auto& [i, c] : v) out(i) += c;
  return out;
}

template <class S>
bool sparse_equal(const SparseVec<S>& a, const SparseVec<S>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].first != b[k].first || a[k].second != b[k].second) return false;
  }
  return true;
}

/// First index where two sparse vectors differ, or -1.
template <class S>
Index first_difference(const SparseVec<S>& a, const SparseVec<S>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) return a[i].first;
    if (i == a.size() || b[j].first < a[i].first) return b[j].first;
    if (a[i].second != b[j].second) return a[i].first;
    ++i;
    ++j;
  }
  return -1;
}

/// Finite-dimensional unital algebra given by structure constants:
/// e_i e_j = sum_k m[i][j][k] e_k.
template <class S>
class StructAlgebra {
 public:
  using Entry = std::tuple<Index, Index, Index, S>;

  StructAlgebra(BasedSpace space, std::vector<SparseVec<S>> table, Vector<S> unit, FieldSpec field)
      : space_(std::move(space)), table_(std::move(table)), unit_(std::move(unit)), field_(field) {
    const Index n = space_.dim();
    if (n == 0) throw InvalidStructure("unitality: a zero-dimensional algebra has no unit");
    if (static_cast<Index>(table_.size()) != n * n || unit_.size() != n) {
      throw InvalidStructure("algebra structure constants do not match dimension " + std::to_string(n));
    }
    for (const auto& v : table_) {
      for (const auto& [k, c] : v) {
        if (k < 0 || k >= n) throw InvalidStructure("product index out of range");
      }
    }
  }

  static StructAlgebra from_entries(BasedSpace space, const std::vector<Entry>& entries, Vector<S> unit,
                                    FieldSpec field) {
    const Index n = space.dim();
    std::vector<SparseVec<S>> table(static_cast<std::size_t>(n * n));
    std::vector<std::vector<std::pair<Index, S>>> raw(static_cast<std::size_t>(n * n));
    for (const auto& [i, j, k, c] : entries) {
      if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n) {
        throw InvalidStructure("multiplication entry index out of range");
      }
      raw[static_cast<std::size_t>(i * n + j)].emplace_back(k, c);
    }
    Accumulator<S> a(n, field);
    for (std::size_t ij = 0; ij < raw.size(); ++ij) {
      for (const auto& [k, c] : raw[ij]) a.add(k, c);
      table[ij] = a.take();
    }
    return StructAlgebra(std::move(space), std::move(table), std::move(unit), field);
  }

  const BasedSpace& space() const { return space_; }
  Index dim() const { return space_.dim(); }
  const FieldSpec& field() const { return field_; }
  const Vector<S>& unit() const { return unit_; }
  const SparseVec<S>& product(Index i, Index j) const { return table_[static_cast<std::size_t>(i * dim() + j)]; }
  const std::vector<SparseVec<S>>& table() const { return table_; }

  S structure(Index i, Index j, Index k) const {
    for (const auto& [idx, c] : product(i, j)) {
      if (idx == k) return c;
    }
    return field_.template make<S>(0);
  }

  SparseVec<S> multiply(const SparseVec<S>& a, const SparseVec<S>& b) const {
    Accumulator<S> acc(dim(), field_);
    for (const auto& [i, ci] : a) {
      for (const auto& [j, cj] : b) {
        const S cij = ci * cj;
        for (const auto& [k, ck] : product(i, j)) acc.add(k, cij * ck);
      }
    }
    return acc.take();
  }

  Vector<S> multiply(const Vector<S>& a, const Vector<S>& b) const {
    return dense_of(multiply(sparse_of(a), sparse_of(b)), dim(), field_);
  }

  /// Matrix of x -> a x.
  Matrix<S> left_mult(const Vector<S>& a) const {
    Matrix<S> m = zeros<S>(dim(), dim(), field_);
    for (Index i = 0; i < dim(); ++i) {
      if (is_zero(a(i))) continue;
      for (Index j = 0; j < dim(); ++j) {
        for (const auto& [k, c] : product(i, j)) m(k, j) += a(i) * c;
      }
    }
    return m;
  }

  /// Matrix of x -> x a.
  Matrix<S> right_mult(const Vector<S>& a) const {
    Matrix<S> m = zeros<S>(dim(), dim(), field_);
    for (Index j = 0; j < dim(); ++j) {
      if (is_zero(a(j))) continue;
      for (Index i = 0; i < dim(); ++i) {
        for (const auto& [k, c] : product(i, j)) m(k, i) += a(j) * c;
      }
    }
    return m;
  }

  Matrix<S> left_mult(Index i) const { return left_mult(basis_vector<S>(dim(), i, field_)); }
  Matrix<S> right_mult(Index i) const { return right_mult(basis_vector<S>(dim(), i, field_)); }

  StructAlgebra opposite() const {
    std::vector<SparseVec<S>> t(table_.size());
    for (Index i = 0; i < dim(); ++i) {
      for (Index j = 0; j < dim(); ++j) t[static_cast<std::size_t>(i * dim() + j)] = product(j, i);
    }
    return StructAlgebra(space_, std::move(t), unit_, field_);
  }

 private:
  BasedSpace space_;
  std::vector<SparseVec<S>> table_;
  Vector<S> unit_;
  FieldSpec field_;
};

/// Finite-dimensional counital coalgebra: Δ(e_i) = sum c e_j ⊗ e_k, stored
/// with flat index j * dim + k.
template <class S>
class StructCoalgebra {
 public:
  using Entry = std::tuple<Index, Index, Index, S>;

  StructCoalgebra(BasedSpace space, std::vector<SparseVec<S>> comult, Vector<S> counit, FieldSpec field)
      : space_(std::move(space)), comult_(std::move(comult)), counit_(std::move(counit)), field_(field) {
    const Index n = space_.dim();
    if (n == 0) throw InvalidStructure("counit: a zero-dimensional coalgebra is not counital");
    if (static_cast<Index>(comult_.size()) != n || counit_.size() != n) {
      throw InvalidStructure("coalgebra structure constants do not match dimension " + std::to_string(n));
    }
    for (const auto& v : comult_) {
      for (const auto& [jk, c] : v) {
        if (jk < 0 || jk >= n * n) throw InvalidStructure("coproduct index out of range");
      }
    }
  }

  static StructCoalgebra from_entries(BasedSpace space, const std::vector<Entry>& entries, Vector<S> counit,
                                      FieldSpec field) {
    const Index n = space.dim();
    std::vector<std::vector<std::pair<Index, S>>> raw(static_cast<std::size_t>(n));
    for (const auto& [i, j, k, c] : entries) {
      if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n) {
        throw InvalidStructure("comultiplication entry index out of range");
      }
      raw[static_cast<std::size_t>(i)].emplace_back(j * n + k, c);
    }
    std::vector<SparseVec<S>> comult(static_cast<std::size_t>(n));
    Accumulator<S> a(n * n, field);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      for (const auto& [jk, c] : raw[i]) a.add(jk, c);
      comult[i] = a.take();
    }
    return StructCoalgebra(std::move(space), std::move(comult), std::move(counit), field);
  }

  const BasedSpace& space() const { return space_; }
  Index dim() const { return space_.dim(); }
  const FieldSpec& field() const { return field_; }
  const Vector<S>& counit() const { return counit_; }
  const SparseVec<S>& coproduct(Index i) const { return comult_[static_cast<std::size_t>(i)]; }
  const std::vector<SparseVec<S>>& comult() const { return comult_; }

  S structure(Index i, Index j, Index k) const {
    for (const auto& [idx, c] : coproduct(i)) {
      if (idx == j * dim() + k) return c;
    }
    return field_.template make<S>(0);
  }

  /// Δ applied to an arbitrary element, as a sparse vector over flat (j, k).
  SparseVec<S> coproduct(const SparseVec<S>& x) const {
    Accumulator<S> acc(dim() * dim(), field_);
    for (const auto& [i, ci] : x) {
      for (const auto& [jk, c] : coproduct(i)) acc.add(jk, ci * c);
    }
    return acc.take();
  }

  S counit(const SparseVec<S>& x) const {
    S total = field_.template make<S>(0);
    for (const auto& [i, c] : x) total += c * counit_(i);
    return total;
  }

  /// The co-opposite coalgebra (Δ composed with the flip).
  StructCoalgebra co_opposite() const {
    const Index n = dim();
    std::vector<SparseVec<S>> c(comult_.size());
    Accumulator<S> acc(n * n, field_);
    for (Index i = 0; i < n; ++i) {
      for (const auto& [jk, v] : coproduct(i)) acc.add((jk % n) * n + jk / n, v);
      c[static_cast<std::size_t>(i)] = acc.take();
    }
    return StructCoalgebra(space_, std::move(c), counit_, field_);
  }

 private:
  BasedSpace space_;
  std::vector<SparseVec<S>> comult_;
  Vector<S> counit_;
  FieldSpec field_;
};

/// Associativity and unitality, entrywise.
template <class S>
Verdict check_algebra(const StructAlgebra<S>& a) {
  const Index n = a.dim();
  const auto& field = a.field();
  Accumulator<S> acc(n, field);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const auto& ij = a.product(i, j);
      for (Index k = 0; k < n; ++k) {
        for (const auto& [l, c] : ij) {
          for (const auto& [m, d] : a.product(l, k)) acc.add(m, c * d);
        }
        auto left = acc.take();
        for (const auto& [l, c] : a.product(j, k)) {
          for (const auto& [m, d] : a.product(i, l)) acc.add(m, c * d);
        }
        auto right = acc.take();
        auto diff = first_difference(left, right);
        if (diff >= 0) return Verdict::fail("associativity", {i, j, k, diff}, "(e_i e_j) e_k != e_i (e_j e_k)");
      }
    }
  }
  auto unit = sparse_of(a.unit());
  for (Index i = 0; i < n; ++i) {
    SparseVec<S> ei{{i, field.template make<S>(1)}};
    auto l = first_difference(a.multiply(unit, ei), ei);
    if (l >= 0) return Verdict::fail("unitality", {i, l}, "1 e_i != e_i");
    auto r = first_difference(a.multiply(ei, unit), ei);
    if (r >= 0) return Verdict::fail("unitality", {i, r}, "e_i 1 != e_i");
  }
  return Verdict::ok();
}

/// Coassociativity and counitality, entrywise.
template <class S>
Verdict check_coalgebra(const StructCoalgebra<S>& c) {
  const Index n = c.dim();
  const auto& field = c.field();
  Accumulator<S> acc(n * n * n, field);
  for (Index i = 0; i < n; ++i) {
    for (const auto& [jk, v] : c.coproduct(i)) {
      const Index j = jk / n, k = jk % n;
      for (const auto& [ab, w] : c.coproduct(j)) acc.add(ab * n + k, v * w);
    }
    auto left = acc.take();
    for (const auto& [jk, v] : c.coproduct(i)) {
      const Index j = jk / n, k = jk % n;
      for (const auto& [ab, w] : c.coproduct(k)) acc.add(j * n * n + ab, v * w);
    }
    auto right = acc.take();
    auto diff = first_difference(left, right);
    if (diff >= 0) {
      return Verdict::fail("coassociativity", {i, diff / (n * n), (diff / n) % n, diff % n},
                           "(Δ⊗id)Δ != (id⊗Δ)Δ");
    }
  }
  Accumulator<S> small(n, field);
  for (Index i = 0; i < n; ++i) {
    SparseVec<S> ei{{i, field.template make<S>(1)}};
    for (const auto& [jk, v] : c.coproduct(i)) small.add(jk % n, v * c.counit()(jk / n));
    auto l = first_difference(small.take(), ei);
    if (l >= 0) return Verdict::fail("counit", {i, l}, "(ε⊗id)Δ != id");
    for (const auto& [jk, v] : c.coproduct(i)) small.add(jk / n, v * c.counit()(jk % n));
    auto r = first_difference(small.take(), ei);
    if (r >= 0) return Verdict::fail("counit", {i, r}, "(id⊗ε)Δ != id");
  }
  return Verdict::ok();
}

}  // namespace hopfq
