#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "hopfq/scalar.hpp"

namespace hopfq {

using Index = Eigen::Index;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using SparseMatrix = Eigen::SparseMatrix<S, Eigen::ColMajor>;

/// Raised when two based spaces that must agree carry different label lists.
class SpaceMismatch : public HopfError {
 public:
  using HopfError::HopfError;
};

/// A finite-dimensional vector space with a named, ordered basis.
///
/// Copies share the label list. Two spaces are compatible exactly when their
/// label lists are identical.
class BasedSpace {
 public:
  BasedSpace();
  explicit BasedSpace(std::vector<std::string> labels);
  static BasedSpace numbered(const std::string& prefix, Index n);

  Index dim() const { return static_cast<Index>(labels_->size()); }
  const std::string& label(Index i) const { return (*labels_)[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& labels() const { return *labels_; }
  /// The dual space, with the dual basis labelled "<label>^*".
  BasedSpace dual() const;

  friend bool operator==(const BasedSpace& a, const BasedSpace& b) {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }
  friend bool operator!=(const BasedSpace& a, const BasedSpace& b) { return !(a == b); }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// Tensor product space with basis a_i ⊗ b_j in row-major order.
BasedSpace tensor(const BasedSpace& a, const BasedSpace& b);

void require_same(const BasedSpace& a, const BasedSpace& b, const char* what);

/// Counters over every elimination performed in this process.
struct EliminationStats {
  std::atomic<std::uint64_t> reductions{0};
  std::atomic<std::uint64_t> kernels{0};
  std::atomic<std::uint64_t> rank_nullity_checks{0};
};
EliminationStats& elimination_stats();

template <class S>
struct Echelon {
  Matrix<S> reduced;          // reduced row echelon form
  std::vector<Index> pivots;  // pivot column of each nonzero row
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

namespace detail {

Echelon<Zp> reduce_mod_p(const Matrix<Zp>& m, std::uint32_t p);
Echelon<Rational> reduce_bareiss(const Matrix<Rational>& m);

inline Echelon<Zp> reduce(const Matrix<Zp>& m, const FieldSpec& field) {
  if (field.kind != FieldSpec::Kind::GFp) throw FieldMismatch("GF(p) matrix reduced over " + field.name());
  return reduce_mod_p(m, field.p);
}
inline Echelon<Rational> reduce(const Matrix<Rational>& m, const FieldSpec& field) {
  if (field.kind != FieldSpec::Kind::Q) throw FieldMismatch("rational matrix reduced over " + field.name());
  return reduce_bareiss(m);
}

}  // namespace detail

template <class S>
Matrix<S> identity(Index n, const FieldSpec& field) {
  Matrix<S> m = Matrix<S>::Constant(n, n, field.template make<S>(0));
  for (Index i = 0; i < n; ++i) m(i, i) = field.template make<S>(1);
  return m;
}

template <class S>
Matrix<S> zeros(Index rows, Index cols, const FieldSpec& field) {
  return Matrix<S>::Constant(rows, cols, field.template make<S>(0));
}

template <class S>
Vector<S> zero_vector(Index n, const FieldSpec& field) {
  return Vector<S>::Constant(n, field.template make<S>(0));
}

template <class S>
Vector<S> basis_vector(Index n, Index i, const FieldSpec& field) {
  Vector<S> v = zero_vector<S>(n, field);
  v(i) = field.template make<S>(1);
  return v;
}

template <class S>
Echelon<S> row_reduce(const Matrix<S>& m, const FieldSpec& field) {
  elimination_stats().reductions.fetch_add(1, std::memory_order_relaxed);
  return detail::reduce(m, field);
}

template <class S>
Index rank(const Matrix<S>& m, const FieldSpec& field) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return row_reduce(m, field).rank();
}

/// Columns form a basis of {v : m v = 0}.
template <class S>
Matrix<S> kernel_basis(const Matrix<S>& m, const FieldSpec& field) {
  const Index cols = m.cols();
  std::vector<Index> pivots;
  Matrix<S> reduced;
  if (m.rows() > 0 && cols > 0) {
    auto ech = row_reduce(m, field);
    pivots = std::move(ech.pivots);
    reduced = std::move(ech.reduced);
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Index> free;
  for (Index c = 0; c < cols; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  }
  Matrix<S> basis = Matrix<S>::Constant(cols, static_cast<Index>(free.size()), field.template make<S>(0));
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], static_cast<Index>(k)) = field.template make<S>(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      basis(pivots[r], static_cast<Index>(k)) = -reduced(static_cast<Index>(r), free[k]);
    }
  }
  auto& stats = elimination_stats();
  stats.kernels.fetch_add(1, std::memory_order_relaxed);
  stats.rank_nullity_checks.fetch_add(1, std::memory_order_relaxed);
  if (static_cast<Index>(pivots.size()) + basis.cols() != cols) {
    throw HopfError("rank-nullity violated in kernel computation");
  }
  return basis;
}

/// Some solution x of a x = b, or nullopt when the system is inconsistent.
template <class S>
std::optional<Matrix<S>> solve(const Matrix<S>& a, const Matrix<S>& b, const FieldSpec& field) {
  if (a.rows() != b.rows()) throw HopfError("solve: row count mismatch");
  Matrix<S> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  Matrix<S> x = Matrix<S>::Constant(a.cols(), b.cols(), field.template make<S>(0));
  if (aug.rows() == 0) return x;
  auto ech = row_reduce(aug, field);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    const Index c = ech.pivots[r];
    if (c >= a.cols()) return std::nullopt;
    x.row(c) = ech.reduced.row(static_cast<Index>(r)).tail(b.cols());
  }
  return x;
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& a, const FieldSpec& field) {
  if (a.rows() != a.cols()) return std::nullopt;
  const Index n = a.rows();
  if (n == 0) return Matrix<S>(0, 0);
  Matrix<S> aug(n, 2 * n);
  aug << a, identity<S>(n, field);
  auto ech = row_reduce(aug, field);
  if (ech.rank() < n || ech.pivots[static_cast<std::size_t>(n - 1)] >= n) return std::nullopt;
  return Matrix<S>(ech.reduced.rightCols(n));
}

template <class S, class Derived>
bool all_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!is_zero(S(m(i, j)))) return false;
    }
  }
  return true;
}

template <class S>
bool all_zero(const SparseMatrix<S>& m) {
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (typename SparseMatrix<S>::InnerIterator it(m, k); it; ++it) {
      if (!is_zero(it.value())) return false;
    }
  }
  return true;
}

/// Kronecker product a ⊗ b with row/column index (i * b.rows() + k).
template <class S>
Matrix<S> kron(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <class S>
SparseMatrix<S> kron(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  std::vector<Eigen::Triplet<S>> triplets;
  triplets.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Index ja = 0; ja < a.outerSize(); ++ja) {
    for (typename SparseMatrix<S>::InnerIterator ita(a, ja); ita; ++ita) {
      for (Index jb = 0; jb < b.outerSize(); ++jb) {
        for (typename SparseMatrix<S>::InnerIterator itb(b, jb); itb; ++itb) {
          triplets.emplace_back(ita.row() * b.rows() + itb.row(), ja * b.cols() + jb, ita.value() * itb.value());
        }
      }
    }
  }
  SparseMatrix<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

template <class S>
SparseMatrix<S> sparse_identity(Index n, const FieldSpec& field) {
  std::vector<Eigen::Triplet<S>> t;
  t.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) t.emplace_back(i, i, field.template make<S>(1));
  SparseMatrix<S> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

template <class S>
SparseMatrix<S> to_sparse(const Matrix<S>& m) {
  std::vector<Eigen::Triplet<S>> t;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!is_zero(m(i, j))) t.emplace_back(i, j, m(i, j));
    }
  }
  SparseMatrix<S> s(m.rows(), m.cols());
  s.setFromTriplets(t.begin(), t.end());
  return s;
}

template <class S>
Matrix<S> to_dense(const SparseMatrix<S>& s, const FieldSpec& field) {
  Matrix<S> m = zeros<S>(s.rows(), s.cols(), field);
  for (Index k = 0; k < s.outerSize(); ++k) {
    for (typename SparseMatrix<S>::InnerIterator it(s, k); it; ++it) m(it.row(), it.col()) += it.value();
  }
  return m;
}

template <class S>
bool sparse_equal(const SparseMatrix<S>& a, const SparseMatrix<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  SparseMatrix<S> d = a - b;
  return all_zero(d);
}

/// Coordinates with respect to a fixed basis of a subspace (columns of `basis`).
template <class S>
class SubspaceCoords {
 public:
  SubspaceCoords() = default;
  SubspaceCoords(Matrix<S> basis, const FieldSpec& field) : basis_(std::move(basis)), field_(field) {
    const Index k = basis_.cols();
    if (k == 0) return;
    Matrix<S> t = basis_.transpose();
    auto ech = row_reduce(t, field_);
    if (ech.rank() != k) throw HopfError("subspace basis is not linearly independent");
    rows_ = ech.pivots;
    Matrix<S> square(k, k);
    for (Index r = 0; r < k; ++r) square.row(r) = basis_.row(rows_[static_cast<std::size_t>(r)]);
    auto inv = inverse(square, field_);
    if (!inv) throw HopfError("subspace pivot block is singular");
    pivot_inverse_ = std::move(*inv);
  }

  const Matrix<S>& basis() const { return basis_; }
  Index dim() const { return basis_.cols(); }

  /// Coordinates of v, or nullopt when v is not in the subspace.
  std::optional<Vector<S>> coords(const Vector<S>& v) const {
    const Index k = basis_.cols();
    Vector<S> c = zero_vector<S>(k, field_);
    if (k > 0) {
      Vector<S> picked(k);
      for (Index r = 0; r < k; ++r) picked(r) = v(rows_[static_cast<std::size_t>(r)]);
      c = pivot_inverse_ * picked;
    }
    Vector<S> back = k > 0 ? Vector<S>(basis_ * c) : zero_vector<S>(v.size(), field_);
    for (Index i = 0; i < v.size(); ++i) {
      if (back(i) != v(i)) return std::nullopt;
    }
    return c;
  }

 private:
  Matrix<S> basis_;
  FieldSpec field_;
  std::vector<Index> rows_;
  Matrix<S> pivot_inverse_;
};

/// A linear map between based spaces; column j is the image of basis vector j.
template <class S>
class MapMatrix {
 public:
  MapMatrix() = default;
  MapMatrix(BasedSpace domain, BasedSpace codomain, Matrix<S> entries, FieldSpec field)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)), field_(field) {
    if (entries_.rows() != codomain_.dim() || entries_.cols() != domain_.dim()) {
      throw SpaceMismatch("map entries are " + std::to_string(entries_.rows()) + "x" +
                          std::to_string(entries_.cols()) + " but spaces have dims " +
                          std::to_string(codomain_.dim()) + "x" + std::to_string(domain_.dim()));
    }
  }

  static MapMatrix identity(const BasedSpace& space, const FieldSpec& field) {
    return MapMatrix(space, space, hopfq::identity<S>(space.dim(), field), field);
  }
  static MapMatrix zero(const BasedSpace& domain, const BasedSpace& codomain, const FieldSpec& field) {
    return MapMatrix(domain, codomain, zeros<S>(codomain.dim(), domain.dim(), field), field);
  }

  const BasedSpace& domain() const { return domain_; }
  const BasedSpace& codomain() const { return codomain_; }
  const Matrix<S>& entries() const { return entries_; }
  const FieldSpec& field() const { return field_; }
  const S& operator()(Index i, Index j) const { return entries_(i, j); }

  Index rank() const { return hopfq::rank(entries_, field_); }

  /// Basis of the kernel as domain vectors; rank + count == dim(domain) is enforced.
  std::vector<Vector<S>> kernel() const {
    Matrix<S> k = kernel_basis(entries_, field_);
    std::vector<Vector<S>> out;
    out.reserve(static_cast<std::size_t>(k.cols()));
    for (Index j = 0; j < k.cols(); ++j) out.emplace_back(k.col(j));
    return out;
  }

  Vector<S> apply(const Vector<S>& v) const { return entries_ * v; }

  std::optional<MapMatrix> inverse() const {
    auto inv = hopfq::inverse(entries_, field_);
    if (!inv) return std::nullopt;
    return MapMatrix(codomain_, domain_, std::move(*inv), field_);
  }

  /// Transpose as a map between the dual spaces.
  MapMatrix dual() const {
    return MapMatrix(codomain_.dual(), domain_.dual(), entries_.transpose(), field_);
  }

  bool is_identity() const {
    if (domain_ != codomain_) return false;
    for (Index j = 0; j < entries_.cols(); ++j) {
      for (Index i = 0; i < entries_.rows(); ++i) {
        const S& e = entries_(i, j);
        if (i == j ? !(e == field_.template make<S>(1)) : !is_zero(e)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const MapMatrix& a, const MapMatrix& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.field_ == b.field_ &&
           a.entries_.rows() == b.entries_.rows() && a.entries_.cols() == b.entries_.cols() &&
           all_zero<S>(a.entries_ - b.entries_);
  }
  friend bool operator!=(const MapMatrix& a, const MapMatrix& b) { return !(a == b); }

 private:
  BasedSpace domain_;
  BasedSpace codomain_;
  Matrix<S> entries_;
  FieldSpec field_;
};

/// outer ∘ inner; the inner codomain must be the outer domain.
template <class S>
MapMatrix<S> compose(const MapMatrix<S>& outer, const MapMatrix<S>& inner) {
  require_same(inner.codomain(), outer.domain(), "compose");
  if (!(inner.field() == outer.field())) throw FieldMismatch("compose across fields");
  return MapMatrix<S>(inner.domain(), outer.codomain(), outer.entries() * inner.entries(), outer.field());
}

template <class S>
MapMatrix<S> operator*(const MapMatrix<S>& outer, const MapMatrix<S>& inner) {
  return compose(outer, inner);
}

template <class S>
MapMatrix<S> kron(const MapMatrix<S>& a, const MapMatrix<S>& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("tensor product across fields");
  return MapMatrix<S>(tensor(a.domain(), b.domain()), tensor(a.codomain(), b.codomain()),
                      kron(a.entries(), b.entries()), a.field());
}

}  // namespace hopfq
