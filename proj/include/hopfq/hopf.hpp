#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfq/tensor.hpp"

namespace hopfq {

class NoAntipode : public HopfError {
 public:
  using HopfError::HopfError;
};

/// Finite-dimensional Hopf algebra on one based space.
template <class S>
class HopfAlgebra {
 public:
  HopfAlgebra(StructAlgebra<S> alg, StructCoalgebra<S> coalg, MapMatrix<S> antipode)
      : alg_(std::move(alg)), coalg_(std::move(coalg)), antipode_(std::move(antipode)) {
    require_same(alg_.space(), coalg_.space(), "Hopf algebra coalgebra");
    require_same(antipode_.domain(), alg_.space(), "antipode domain");
    require_same(antipode_.codomain(), alg_.space(), "antipode codomain");
    antipode_inverse_ = antipode_.inverse();
    const Index n = dim();
    s_cols_.resize(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) s_cols_[static_cast<std::size_t>(j)] = sparse_of(Vector<S>(antipode_.entries().col(j)));
    if (antipode_inverse_) {
      sinv_cols_.resize(static_cast<std::size_t>(n));
      for (Index j = 0; j < n; ++j) {
        sinv_cols_[static_cast<std::size_t>(j)] = sparse_of(Vector<S>(antipode_inverse_->entries().col(j)));
      }
    }
  }

  const StructAlgebra<S>& alg() const { return alg_; }
  const StructCoalgebra<S>& coalg() const { return coalg_; }
  const BasedSpace& space() const { return alg_.space(); }
  Index dim() const { return alg_.dim(); }
  const FieldSpec& field() const { return alg_.field(); }
  const MapMatrix<S>& antipode() const { return antipode_; }
  bool has_antipode_inverse() const { return antipode_inverse_.has_value(); }
  const MapMatrix<S>& antipode_inverse() const {
    if (!antipode_inverse_) throw InvalidStructure("antipode is not invertible");
    return *antipode_inverse_;
  }
  /// S(e_j) and S^{-1}(e_j) as sparse vectors.
  const SparseVec<S>& antipode_of(Index j) const { return s_cols_[static_cast<std::size_t>(j)]; }
  const SparseVec<S>& antipode_inverse_of(Index j) const {
    if (!antipode_inverse_) throw InvalidStructure("antipode is not invertible");
    return sinv_cols_[static_cast<std::size_t>(j)];
  }

  SparseVec<S> apply_antipode(const SparseVec<S>& x) const { return apply_cols(s_cols_, x); }
  SparseVec<S> apply_antipode_inverse(const SparseVec<S>& x) const {
    if (!antipode_inverse_) throw InvalidStructure("antipode is not invertible");
    return apply_cols(sinv_cols_, x);
  }

  /// Δ(e_i) as an element of H ⊗ H.
  TensorElement<S> coproduct_tensor(Index i) const {
    return TensorElement<S>({space(), space()}, coalg_.coproduct(i), field());
  }

  TensorElement<S> unit_tensor(Index legs) const {
    SlotAlgebras<S> slots(static_cast<std::size_t>(legs), &alg_);
    return tensor_unit(slots);
  }

  SlotAlgebras<S> slots(Index legs) const { return SlotAlgebras<S>(static_cast<std::size_t>(legs), &alg_); }

 private:
  SparseVec<S> apply_cols(const std::vector<SparseVec<S>>& cols, const SparseVec<S>& x) const {
    Accumulator<S> acc(dim(), field());
    for (const auto& [j, c] : x) {
      for (const auto& [i, v] : cols[static_cast<std::size_t>(j)]) acc.add(i, c * v);
    }
    return acc.take();
  }

  StructAlgebra<S> alg_;
  StructCoalgebra<S> coalg_;
  MapMatrix<S> antipode_;
  std::optional<MapMatrix<S>> antipode_inverse_;
  std::vector<SparseVec<S>> s_cols_;
  std::vector<SparseVec<S>> sinv_cols_;
};

template <class S>
using HopfPtr = std::shared_ptr<const HopfAlgebra<S>>;

/// Δ and ε are unital algebra maps.
template <class S>
Verdict check_bialgebra(const StructAlgebra<S>& a, const StructCoalgebra<S>& c) {
  require_same(a.space(), c.space(), "bialgebra");
  const Index n = a.dim();
  const auto& field = a.field();
  SlotAlgebras<S> slots{&a, &a};
  std::vector<TensorElement<S>> deltas;
  deltas.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) deltas.emplace_back(std::vector<BasedSpace>{a.space(), a.space()}, c.coproduct(i), field);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const auto& ij = a.product(i, j);
      TensorElement<S> lhs({a.space(), a.space()}, c.coproduct(ij), field);
      auto rhs = tensor_mult(deltas[static_cast<std::size_t>(i)], deltas[static_cast<std::size_t>(j)], slots);
      if (lhs != rhs) {
        auto diff = first_difference(lhs.terms(), rhs.terms());
        return Verdict::fail("bialgebra", {i, j, diff / n, diff % n}, "Δ(e_i e_j) != Δ(e_i) Δ(e_j)");
      }
      if (c.counit(ij) != c.counit()(i) * c.counit()(j)) {
        return Verdict::fail("bialgebra", {i, j}, "ε(e_i e_j) != ε(e_i) ε(e_j)");
      }
    }
  }
  auto unit = sparse_of(a.unit());
  TensorElement<S> d1({a.space(), a.space()}, c.coproduct(unit), field);
  auto uu = tensor_unit(slots);
  if (d1 != uu) {
    auto diff = first_difference(d1.terms(), uu.terms());
    return Verdict::fail("bialgebra", {diff / n, diff % n}, "Δ(1) != 1 ⊗ 1");
  }
  if (c.counit(unit) != field.template make<S>(1)) return Verdict::fail("bialgebra", {}, "ε(1) != 1");
  return Verdict::ok();
}

namespace detail {

/// m(S ⊗ id)Δ(e_i) when left, m(id ⊗ S)Δ(e_i) otherwise.
template <class S>
SparseVec<S> antipode_convolution(const StructAlgebra<S>& a, const StructCoalgebra<S>& c,
                                  const std::vector<SparseVec<S>>& s_cols, Index i, bool left) {
  const Index n = a.dim();
  Accumulator<S> acc(n, a.field());
  for (const auto& [jk, v] : c.coproduct(i)) {
    const Index j = jk / n, k = jk % n;
    const auto& sj = s_cols[static_cast<std::size_t>(left ? j : k)];
    const Index other = left ? k : j;
    for (const auto& [l, w] : sj) {
      const auto& prod = left ? a.product(l, other) : a.product(other, l);
      for (const auto& [m, x] : prod) acc.add(m, v * w * x);
    }
  }
  return acc.take();
}

}  // namespace detail

/// Antipode identities m(S⊗id)Δ = uε = m(id⊗S)Δ on every basis vector.
template <class S>
Verdict check_antipode(const StructAlgebra<S>& a, const StructCoalgebra<S>& c, const MapMatrix<S>& antipode) {
  const Index n = a.dim();
  std::vector<SparseVec<S>> cols(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = sparse_of(Vector<S>(antipode.entries().col(j)));
  auto unit = sparse_of(a.unit());
  for (Index i = 0; i < n; ++i) {
    SparseVec<S> target;
    const S e = c.counit()(i);
    if (!is_zero(e)) {
      for (const auto& [k, u] : unit) target.emplace_back(k, e * u);
    }
    for (bool left : {true, false}) {
      auto got = detail::antipode_convolution(a, c, cols, i, left);
      auto diff = first_difference(got, target);
      if (diff >= 0) {
        return Verdict::fail("antipode identity", {i, diff}, left ? "m(S⊗id)Δ != uε" : "m(id⊗S)Δ != uε");
      }
    }
  }
  return Verdict::ok();
}

template <class S>
Verdict check_hopf(const HopfAlgebra<S>& h) {
  if (auto v = check_algebra(h.alg()); !v) return v;
  if (auto v = check_coalgebra(h.coalg()); !v) return v;
  if (auto v = check_bialgebra(h.alg(), h.coalg()); !v) return v;
  if (auto v = check_antipode(h.alg(), h.coalg(), h.antipode()); !v) return v;
  if (!h.has_antipode_inverse()) return Verdict::fail("antipode inverse", {}, "S is not invertible");
  if (!compose(h.antipode(), h.antipode_inverse()).is_identity() ||
      !compose(h.antipode_inverse(), h.antipode()).is_identity()) {
    return Verdict::fail("antipode inverse", {}, "S S^{-1} != id");
  }
  if (auto v = check_antipode(h.alg(), h.coalg().co_opposite(), h.antipode_inverse()); !v) {
    return Verdict::fail("antipode inverse", v.witness, "S^{-1} is not the antipode of the co-opposite");
  }
  return Verdict::ok();
}

/// The antipode as the solution of m(S⊗id)Δ = uε; the right identity is
/// verified afterwards.
template <class S>
MapMatrix<S> solve_antipode(const StructAlgebra<S>& a, const StructCoalgebra<S>& c) {
  require_same(a.space(), c.space(), "solve_antipode");
  const Index n = a.dim();
  const auto& field = a.field();
  // Unknown s(l, j) = coefficient of e_l in S(e_j), column index l * n + j.
  std::vector<SparseVec<S>> columns(static_cast<std::size_t>(n * n));
  SparseVec<S> rhs;
  for (Index i = 0; i < n; ++i) {
    for (const auto& [jk, v] : c.coproduct(i)) {
      const Index j = jk / n, k = jk % n;
      for (Index l = 0; l < n; ++l) {
        for (const auto& [m, x] : a.product(l, k)) columns[static_cast<std::size_t>(l * n + j)].emplace_back(i * n + m, v * x);
      }
    }
    const S e = c.counit()(i);
    for (Index m = 0; m < n; ++m) {
      if (!is_zero(e) && !is_zero(a.unit()(m))) rhs.emplace_back(i * n + m, e * a.unit()(m));
    }
  }
  Accumulator<S> acc(n * n, field);
  for (auto& col : columns) {
    for (const auto& [r, x] : col) acc.add(r, x);
    col = acc.take();
  }
  auto sol = solve_sparse(columns, n * n, rhs, field);
  if (!sol) throw NoAntipode("no S solves m(S⊗id)Δ = uε");
  Matrix<S> s = zeros<S>(n, n, field);
  for (Index l = 0; l < n; ++l) {
    for (Index j = 0; j < n; ++j) s(l, j) = (*sol)(l * n + j);
  }
  MapMatrix<S> antipode(a.space(), a.space(), std::move(s), field);
  if (auto v = check_antipode(a, c, antipode); !v) throw NoAntipode("left antipode is not a right antipode: " + v.describe());
  return antipode;
}

template <class S>
HopfAlgebra<S> make_hopf(StructAlgebra<S> a, StructCoalgebra<S> c, std::optional<MapMatrix<S>> antipode = std::nullopt) {
  MapMatrix<S> s = antipode ? std::move(*antipode) : solve_antipode(a, c);
  return HopfAlgebra<S>(std::move(a), std::move(c), std::move(s));
}

/// H* with product Δᵀ, coproduct mᵀ, unit ε, counit evaluation at 1, antipode Sᵀ.
template <class S>
HopfAlgebra<S> dual_hopf(const HopfAlgebra<S>& h) {
  const Index n = h.dim();
  const auto& field = h.field();
  auto space = h.space().dual();
  std::vector<typename StructAlgebra<S>::Entry> mult;
  for (Index k = 0; k < n; ++k) {
    for (const auto& [ab, v] : h.coalg().coproduct(k)) mult.emplace_back(ab / n, ab % n, k, v);
  }
  std::vector<typename StructCoalgebra<S>::Entry> comult;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (const auto& [k, v] : h.alg().product(i, j)) comult.emplace_back(k, i, j, v);
    }
  }
  auto alg = StructAlgebra<S>::from_entries(space, mult, h.coalg().counit(), field);
  auto coalg = StructCoalgebra<S>::from_entries(space, comult, h.alg().unit(), field);
  MapMatrix<S> s(space, space, h.antipode().entries().transpose(), field);
  return HopfAlgebra<S>(std::move(alg), std::move(coalg), std::move(s));
}

/// Finite-dimensional representation of an algebra: one sparse matrix per
/// basis element.
template <class S>
class Representation {
 public:
  Representation(BasedSpace carrier, std::vector<SparseMatrix<S>> action, FieldSpec field)
      : carrier_(std::move(carrier)), action_(std::move(action)), field_(field) {
    for (const auto& m : action_) {
      if (m.rows() != carrier_.dim() || m.cols() != carrier_.dim()) {
        throw SpaceMismatch("action matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            " on a carrier of dim " + std::to_string(carrier_.dim()));
      }
    }
  }

  const BasedSpace& carrier() const { return carrier_; }
  Index dim() const { return carrier_.dim(); }
  const FieldSpec& field() const { return field_; }
  Index algebra_dim() const { return static_cast<Index>(action_.size()); }
  const SparseMatrix<S>& action(Index i) const { return action_[static_cast<std::size_t>(i)]; }
  const std::vector<SparseMatrix<S>>& actions() const { return action_; }

  MapMatrix<S> action_map(Index i) const { return MapMatrix<S>(carrier_, carrier_, to_dense(action(i), field_), field_); }

  /// Action of an arbitrary algebra element.
  SparseMatrix<S> act(const SparseVec<S>& x) const {
    SparseMatrix<S> m(dim(), dim());
    for (const auto& [i, c] : x) m += c * action(i);
    m.prune([](Index, Index, const S& v) { return !is_zero(v); });
    return m;
  }

 private:
  BasedSpace carrier_;
  std::vector<SparseMatrix<S>> action_;
  FieldSpec field_;
};

/// A module over a Hopf algebra H.
template <class S>
using HModule = Representation<S>;
/// A module over a comodule algebra B.
template <class S>
using BModule = Representation<S>;

namespace detail {

template <class S>
SparseMatrix<S> from_columns(Index rows, const std::vector<SparseVec<S>>& cols) {
  std::vector<Eigen::Triplet<S>> t;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [i, v] : cols[j]) t.emplace_back(i, static_cast<Index>(j), v);
  }
  SparseMatrix<S> m(rows, static_cast<Index>(cols.size()));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

template <class S>
SparseMatrix<S> kron_sum(const std::vector<std::pair<S, std::pair<const SparseMatrix<S>*, const SparseMatrix<S>*>>>& terms,
                         Index rows_a, Index rows_b) {
  std::vector<Eigen::Triplet<S>> t;
  for (const auto& [c, ab] : terms) {
    const auto& a = *ab.first;
    const auto& b = *ab.second;
    for (Index ja = 0; ja < a.outerSize(); ++ja) {
      for (typename SparseMatrix<S>::InnerIterator ita(a, ja); ita; ++ita) {
        const S ca = c * ita.value();
        for (Index jb = 0; jb < b.outerSize(); ++jb) {
          for (typename SparseMatrix<S>::InnerIterator itb(b, jb); itb; ++itb) {
            t.emplace_back(ita.row() * b.rows() + itb.row(), ja * b.cols() + jb, ca * itb.value());
          }
        }
      }
    }
  }
  SparseMatrix<S> m(rows_a * rows_b, rows_a * rows_b);
  m.setFromTriplets(t.begin(), t.end());
  m.prune([](Index, Index, const S& v) { return !is_zero(v); });
  return m;
}

}  // namespace detail

template <class S>
Representation<S> regular_representation(const StructAlgebra<S>& a) {
  const Index n = a.dim();
  std::vector<SparseMatrix<S>> act;
  for (Index i = 0; i < n; ++i) {
    std::vector<SparseVec<S>> cols(static_cast<std::size_t>(n));
    for (Index j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = a.product(i, j);
    act.push_back(detail::from_columns(n, cols));
  }
  return Representation<S>(a.space(), std::move(act), a.field());
}

template <class S>
HModule<S> regular_module(const HopfAlgebra<S>& h) {
  return regular_representation(h.alg());
}

/// The unit object 𝕜_ε.
template <class S>
HModule<S> trivial_module(const HopfAlgebra<S>& h) {
  std::vector<SparseMatrix<S>> act;
  for (Index i = 0; i < h.dim(); ++i) {
    SparseMatrix<S> m(1, 1);
    if (!is_zero(h.coalg().counit()(i))) m.insert(0, 0) = h.coalg().counit()(i);
    act.push_back(std::move(m));
  }
  return HModule<S>(BasedSpace({"1"}), std::move(act), h.field());
}

/// H acting on itself by h · h' = h_(1) h' S(h_(2)).
template <class S>
HModule<S> adjoint_module(const HopfAlgebra<S>& h) {
  const Index n = h.dim();
  const auto& a = h.alg();
  std::vector<SparseMatrix<S>> act;
  for (Index i = 0; i < n; ++i) {
    std::vector<SparseVec<S>> cols(static_cast<std::size_t>(n));
    for (Index x = 0; x < n; ++x) {
      Accumulator<S> acc(n, h.field());
      for (const auto& [pq, c] : h.coalg().coproduct(i)) {
        const Index p = pq / n, q = pq % n;
        for (const auto& [y, v] : a.product(p, x)) {
          for (const auto& [z, w] : h.antipode_of(q)) {
            for (const auto& [m, u] : a.product(y, z)) acc.add(m, c * v * w * u);
          }
        }
      }
      cols[static_cast<std::size_t>(x)] = acc.take();
    }
    act.push_back(detail::from_columns(n, cols));
  }
  return HModule<S>(h.space(), std::move(act), h.field());
}

/// ρ(1) = id and ρ(e_i) ρ(e_j) = ρ(e_i e_j).
template <class S>
Verdict check_representation(const StructAlgebra<S>& a, const Representation<S>& x) {
  if (x.algebra_dim() != a.dim()) return Verdict::fail("module", {}, "one action matrix per basis element expected");
  const auto& field = a.field();
  SparseMatrix<S> one = x.act(sparse_of(a.unit()));
  if (!sparse_equal(one, sparse_identity<S>(x.dim(), field))) return Verdict::fail("module unit", {}, "ρ(1) != id");
  for (Index i = 0; i < a.dim(); ++i) {
    for (Index j = 0; j < a.dim(); ++j) {
      SparseMatrix<S> lhs = x.action(i) * x.action(j);
      if (!sparse_equal(lhs, x.act(a.product(i, j)))) {
        return Verdict::fail("module", {i, j}, "ρ(e_i) ρ(e_j) != ρ(e_i e_j)");
      }
    }
  }
  return Verdict::ok();
}

template <class S>
Verdict check_module(const HopfAlgebra<S>& h, const HModule<S>& x) {
  return check_representation(h.alg(), x);
}

/// Action of an element of H ⊗ H on X ⊗ Y.
template <class S>
SparseMatrix<S> act_tensor(const TensorElement<S>& t, const Representation<S>& x, const Representation<S>& y) {
  if (t.arity() != 2) throw SpaceMismatch("act_tensor needs a two-leg tensor");
  const Index m = t.factors()[1].dim();
  std::vector<std::pair<S, std::pair<const SparseMatrix<S>*, const SparseMatrix<S>*>>> terms;
  for (const auto& [f, c] : t.terms()) terms.push_back({c, {&x.action(f / m), &y.action(f % m)}});
  return detail::kron_sum(terms, x.dim(), y.dim());
}

/// X ⊗ Y with h·(x⊗y) = h_(1)x ⊗ h_(2)y.
template <class S>
HModule<S> module_tensor(const HopfAlgebra<S>& h, const HModule<S>& x, const HModule<S>& y) {
  std::vector<SparseMatrix<S>> act;
  for (Index i = 0; i < h.dim(); ++i) act.push_back(act_tensor(h.coproduct_tensor(i), x, y));
  return HModule<S>(tensor(x.carrier(), y.carrier()), std::move(act), h.field());
}

/// Left dual X* with ⟨h·x*, -⟩ = ⟨x*, S(h)·-⟩.
template <class S>
HModule<S> module_dual(const HopfAlgebra<S>& h, const HModule<S>& x) {
  std::vector<SparseMatrix<S>> act;
  for (Index i = 0; i < h.dim(); ++i) act.push_back(SparseMatrix<S>(x.act(h.antipode_of(i)).transpose()));
  return HModule<S>(x.carrier().dual(), std::move(act), h.field());
}

/// ev: X* ⊗ X -> 𝕜.
template <class S>
MapMatrix<S> evaluation(const HModule<S>& x) {
  const Index n = x.dim();
  Matrix<S> e = zeros<S>(1, n * n, x.field());
  for (Index i = 0; i < n; ++i) e(0, i * n + i) = x.field().template make<S>(1);
  return MapMatrix<S>(tensor(x.carrier().dual(), x.carrier()), BasedSpace({"1"}), std::move(e), x.field());
}

/// coev: 𝕜 -> X ⊗ X*.
template <class S>
MapMatrix<S> coevaluation(const HModule<S>& x) {
  const Index n = x.dim();
  Matrix<S> e = zeros<S>(n * n, 1, x.field());
  for (Index i = 0; i < n; ++i) e(i * n + i, 0) = x.field().template make<S>(1);
  return MapMatrix<S>(BasedSpace({"1"}), tensor(x.carrier(), x.carrier().dual()), std::move(e), x.field());
}

/// Whether a linear map between modules commutes with the action.
template <class S>
bool is_module_map(const HopfAlgebra<S>& h, const HModule<S>& from, const HModule<S>& to, const SparseMatrix<S>& f) {
  for (Index i = 0; i < h.dim(); ++i) {
    SparseMatrix<S> a = f * from.action(i);
    SparseMatrix<S> b = to.action(i) * f;
    if (!sparse_equal(a, b)) return false;
  }
  return true;
}

/// Flip X ⊗ Y -> Y ⊗ X.
template <class S>
SparseMatrix<S> flip_matrix(Index dx, Index dy, const FieldSpec& field) {
  std::vector<Eigen::Triplet<S>> t;
  for (Index i = 0; i < dx; ++i) {
    for (Index j = 0; j < dy; ++j) t.emplace_back(j * dx + i, i * dy + j, field.template make<S>(1));
  }
  SparseMatrix<S> m(dx * dy, dx * dy);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace hopfq
