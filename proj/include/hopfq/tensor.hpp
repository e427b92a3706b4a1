#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hopfq/algebra.hpp"
#include "hopfq/echelon.hpp"

namespace hopfq {

class NotInvertible : public HopfError {
 public:
  using HopfError::HopfError;
};

/// Element of V_1 ⊗ ... ⊗ V_n stored as sorted (flat index, coefficient)
/// pairs; the flat index is row-major in the factor dimensions and no stored
/// coefficient is zero.
template <class S>
class TensorElement {
 public:
  TensorElement() = default;
  TensorElement(std::vector<BasedSpace> factors, FieldSpec field) : factors_(std::move(factors)), field_(field) {
    total_ = 1;
    for (const auto& f : factors_) total_ *= f.dim();
  }
  TensorElement(std::vector<BasedSpace> factors, SparseVec<S> terms, FieldSpec field)
      : TensorElement(std::move(factors), field) {
    normalize(std::move(terms));
  }

  const std::vector<BasedSpace>& factors() const { return factors_; }
  const FieldSpec& field() const { return field_; }
  Index arity() const { return static_cast<Index>(factors_.size()); }
  Index total_dim() const { return total_; }
  const SparseVec<S>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Index flat_index(std::span<const Index> multi) const {
    if (static_cast<Index>(multi.size()) != arity()) {
      throw SpaceMismatch("multi-index of arity " + std::to_string(multi.size()) + " for a tensor of arity " +
                          std::to_string(arity()));
    }
    Index flat = 0;
    for (std::size_t s = 0; s < multi.size(); ++s) {
      const Index d = factors_[s].dim();
      if (multi[s] < 0 || multi[s] >= d) {
        throw SpaceMismatch("tensor index " + std::to_string(multi[s]) + " out of range for factor of dim " +
                            std::to_string(d));
      }
      flat = flat * d + multi[s];
    }
    return flat;
  }

  std::vector<Index> multi_index(Index flat) const {
    std::vector<Index> out(factors_.size());
    for (std::size_t s = factors_.size(); s-- > 0;) {
      const Index d = factors_[s].dim();
      out[s] = flat % d;
      flat /= d;
    }
    return out;
  }

  S coeff(std::span<const Index> multi) const { return coeff_flat(flat_index(multi)); }

  S coeff_flat(Index flat) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), flat,
                               [](const auto& t, Index f) { return t.first < f; });
    if (it != terms_.end() && it->first == flat) return it->second;
    return field_.template make<S>(0);
  }

  /// Adds c at the given multi-index; a zero sum removes the entry.
  void add(std::span<const Index> multi, const S& c) { add_flat(flat_index(multi), c); }

  void add_flat(Index flat, const S& c) {
    if (flat < 0 || flat >= total_) throw SpaceMismatch("flat tensor index out of range");
    auto it = std::lower_bound(terms_.begin(), terms_.end(), flat,
                               [](const auto& t, Index f) { return t.first < f; });
    if (it != terms_.end() && it->first == flat) {
      it->second += c;
      if (hopfq::is_zero(it->second)) terms_.erase(it);
    } else if (!hopfq::is_zero(c)) {
      terms_.insert(it, {flat, c});
    }
  }

  Vector<S> to_dense() const { return dense_of(terms_, total_, field_); }

  static TensorElement from_dense(std::vector<BasedSpace> factors, const Vector<S>& v, FieldSpec field) {
    TensorElement t(std::move(factors), field);
    if (v.size() != t.total_dim()) throw SpaceMismatch("dense vector does not match tensor dimension");
    t.terms_ = sparse_of(v);
    return t;
  }

  /// Pure tensor v_1 ⊗ ... ⊗ v_n of coordinate vectors.
  static TensorElement pure(std::vector<BasedSpace> factors, const std::vector<Vector<S>>& legs, FieldSpec field) {
    TensorElement t(std::move(factors), field);
    if (legs.size() != t.factors_.size()) throw SpaceMismatch("pure tensor needs one vector per factor");
    SparseVec<S> acc{{0, field.template make<S>(1)}};
    for (std::size_t s = 0; s < legs.size(); ++s) {
      if (legs[s].size() != t.factors_[s].dim()) throw SpaceMismatch("pure tensor leg has wrong dimension");
      SparseVec<S> next;
      auto leg = sparse_of(legs[s]);
      for (const auto& [f, c] : acc) {
        for (const auto& [i, d] : leg) next.emplace_back(f * t.factors_[s].dim() + i, c * d);
      }
      acc = std::move(next);
    }
    t.normalize(std::move(acc));
    return t;
  }

  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.factors_ == b.factors_ && sparse_equal(a.terms_, b.terms_);
  }
  friend bool operator!=(const TensorElement& a, const TensorElement& b) { return !(a == b); }

  TensorElement& operator+=(const TensorElement& o) {
    require_same_factors(o);
    SparseVec<S> merged = terms_;
    merged.insert(merged.end(), o.terms_.begin(), o.terms_.end());
    normalize(std::move(merged));
    return *this;
  }
  TensorElement& operator-=(const TensorElement& o) {
    require_same_factors(o);
    SparseVec<S> merged = terms_;
    for (const auto& [f, c] : o.terms_) merged.emplace_back(f, -c);
    normalize(std::move(merged));
    return *this;
  }
  TensorElement& operator*=(const S& c) {
    SparseVec<S> scaled;
    for (const auto& [f, v] : terms_) scaled.emplace_back(f, v * c);
    normalize(std::move(scaled));
    return *this;
  }
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }

  void require_same_factors(const TensorElement& o) const {
    if (factors_.size() != o.factors_.size()) throw SpaceMismatch("tensor arities differ");
    for (std::size_t s = 0; s < factors_.size(); ++s) require_same(factors_[s], o.factors_[s], "tensor factor");
  }

 private:
  void normalize(SparseVec<S> raw) {
    std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    terms_.clear();
    for (auto& [f, c] : raw) {
      if (f < 0 || f >= total_) throw SpaceMismatch("flat tensor index out of range");
      if (!terms_.empty() && terms_.back().first == f) {
        terms_.back().second += c;
      } else {
        terms_.emplace_back(f, std::move(c));
      }
      if (hopfq::is_zero(terms_.back().second)) terms_.pop_back();
    }
  }

  std::vector<BasedSpace> factors_;
  SparseVec<S> terms_;
  FieldSpec field_;
  Index total_ = 1;
};

/// Per-slot algebra data for products in a tensor product of algebras.
template <class S>
using SlotAlgebras = std::vector<const StructAlgebra<S>*>;

namespace detail {

template <class S>
void require_algebras(const std::vector<BasedSpace>& factors, const SlotAlgebras<S>& algebras, const char* what) {
  if (algebras.size() != factors.size()) {
    throw SpaceMismatch(std::string(what) + ": need one algebra per tensor slot");
  }
  for (std::size_t s = 0; s < factors.size(); ++s) {
    if (algebras[s] == nullptr) throw SpaceMismatch(std::string(what) + ": slot " + std::to_string(s) + " has no algebra");
    require_same(algebras[s]->space(), factors[s], what);
  }
}

/// Sums terms into a dense buffer when the tensor space is small enough.
template <class S>
class TermSink {
 public:
  TermSink(Index total, const FieldSpec& field) : total_(total), field_(field) {
    if (total <= (Index{1} << 22)) dense_.emplace(total, field);
  }
  void add(Index f, const S& c) {
    if (dense_) {
      dense_->add(f, c);
    } else {
      raw_.emplace_back(f, c);
    }
  }
  SparseVec<S> take() {
    if (dense_) return dense_->take();
    return std::move(raw_);
  }

 private:
  Index total_;
  FieldSpec field_;
  std::optional<Accumulator<S>> dense_;
  SparseVec<S> raw_;
};

}  // namespace detail

template <class S>
TensorElement<S> tensor_unit(const SlotAlgebras<S>& algebras) {
  std::vector<BasedSpace> factors;
  std::vector<Vector<S>> legs;
  for (const auto* a : algebras) {
    if (a == nullptr) throw SpaceMismatch("tensor unit: missing algebra");
    factors.push_back(a->space());
    legs.push_back(a->unit());
  }
  if (algebras.empty()) throw SpaceMismatch("tensor unit of an empty factor list");
  return TensorElement<S>::pure(std::move(factors), legs, algebras.front()->field());
}

/// Places the legs of t at the given (strictly increasing, 0-based) slots of
/// the ambient tensor product and fills the remaining slots with units.
template <class S>
TensorElement<S> leg_embed(const TensorElement<S>& t, const std::vector<Index>& slots, const SlotAlgebras<S>& ambient) {
  if (static_cast<Index>(slots.size()) != t.arity()) throw SpaceMismatch("leg_embed: slot count differs from arity");
  std::vector<int> source(ambient.size(), -1);
  for (std::size_t k = 0; k < slots.size(); ++k) {
    if (slots[k] < 0 || slots[k] >= static_cast<Index>(ambient.size())) throw SpaceMismatch("leg_embed: slot out of range");
    if (k > 0 && slots[k] <= slots[k - 1]) throw SpaceMismatch("leg_embed: slots must be strictly increasing");
    source[static_cast<std::size_t>(slots[k])] = static_cast<int>(k);
  }
  std::vector<BasedSpace> factors;
  for (std::size_t s = 0; s < ambient.size(); ++s) {
    if (ambient[s] == nullptr) throw SpaceMismatch("leg_embed: ambient slot " + std::to_string(s) + " has no algebra");
    factors.push_back(ambient[s]->space());
    if (source[s] >= 0) require_same(t.factors()[static_cast<std::size_t>(source[s])], factors.back(), "leg_embed");
  }
  const auto& field = t.field();
  SparseVec<S> out;
  for (const auto& [flat, c] : t.terms()) {
    auto idx = t.multi_index(flat);
    SparseVec<S> acc{{0, c}};
    for (std::size_t s = 0; s < ambient.size(); ++s) {
      const Index d = factors[s].dim();
      SparseVec<S> next;
      if (source[s] >= 0) {
        const Index i = idx[static_cast<std::size_t>(source[s])];
        for (const auto& [f, v] : acc) next.emplace_back(f * d + i, v);
      } else {
        const auto& u = ambient[s]->unit();
        for (const auto& [f, v] : acc) {
          for (Index i = 0; i < d; ++i) {
            if (!is_zero(u(i))) next.emplace_back(f * d + i, v * u(i));
          }
        }
      }
      acc = std::move(next);
    }
    out.insert(out.end(), acc.begin(), acc.end());
  }
  return TensorElement<S>(std::move(factors), std::move(out), field);
}

/// Slotwise product (a_1 ⊗ ... ⊗ a_n)(b_1 ⊗ ... ⊗ b_n) = a_1 b_1 ⊗ ... ⊗ a_n b_n.
template <class S>
TensorElement<S> tensor_mult(const TensorElement<S>& a, const TensorElement<S>& b, const SlotAlgebras<S>& algebras) {
  a.require_same_factors(b);
  detail::require_algebras(a.factors(), algebras, "tensor_mult");
  const auto n = algebras.size();
  detail::TermSink<S> sink(a.total_dim(), a.field());
  std::vector<std::vector<Index>> bidx;
  bidx.reserve(b.size());
  for (const auto& [fb, cb] : b.terms()) bidx.push_back(b.multi_index(fb));
  SparseVec<S> acc, next;
  std::size_t bi = 0;
  for (const auto& [fa, ca] : a.terms()) {
    auto ia = a.multi_index(fa);
    bi = 0;
    for (const auto& [fb, cb] : b.terms()) {
      const auto& ib = bidx[bi++];
      acc.assign(1, {0, ca * cb});
      for (std::size_t s = 0; s < n && !acc.empty(); ++s) {
        const auto& prod = algebras[s]->product(ia[s], ib[s]);
        const Index d = a.factors()[s].dim();
        next.clear();
        for (const auto& [f, v] : acc) {
          for (const auto& [k, w] : prod) next.emplace_back(f * d + k, v * w);
        }
        std::swap(acc, next);
      }
      for (const auto& [f, v] : acc) sink.add(f, v);
    }
  }
  return TensorElement<S>(a.factors(), sink.take(), a.field());
}

/// Product of several tensors, left to right.
template <class S>
TensorElement<S> tensor_mult(std::initializer_list<std::reference_wrapper<const TensorElement<S>>> ts,
                             const SlotAlgebras<S>& algebras) {
  auto it = ts.begin();
  TensorElement<S> acc = it->get();
  for (++it; it != ts.end(); ++it) acc = tensor_mult(acc, it->get(), algebras);
  return acc;
}

/// Matrix of x -> t x on the tensor product algebra.
template <class S>
Matrix<S> tensor_left_mult(const TensorElement<S>& t, const SlotAlgebras<S>& algebras) {
  detail::require_algebras(t.factors(), algebras, "tensor_left_mult");
  const Index total = t.total_dim();
  Matrix<S> m = zeros<S>(total, total, t.field());
  for (Index j = 0; j < total; ++j) {
    TensorElement<S> basis(t.factors(), SparseVec<S>{{j, t.field().template make<S>(1)}}, t.field());
    for (const auto& [i, c] : tensor_mult(t, basis, algebras).terms()) m(i, j) = c;
  }
  return m;
}

/// Two-sided inverse of t, or NotInvertible. Solves t s = 1 through the
/// left-multiplication matrix and then checks s t = 1 as well.
template <class S>
TensorElement<S> tensor_invert(const TensorElement<S>& t, const SlotAlgebras<S>& algebras) {
  auto unit = tensor_unit(algebras);
  t.require_same_factors(unit);
  const Index total = t.total_dim();
  std::vector<SparseVec<S>> columns(static_cast<std::size_t>(total));
  for (Index j = 0; j < total; ++j) {
    TensorElement<S> basis(t.factors(), SparseVec<S>{{j, t.field().template make<S>(1)}}, t.field());
    columns[static_cast<std::size_t>(j)] = tensor_mult(t, basis, algebras).terms();
  }
  auto sol = solve_sparse(columns, total, unit.terms(), t.field());
  if (!sol) throw NotInvertible("element of a dimension-" + std::to_string(total) + " tensor algebra is not invertible");
  auto s = TensorElement<S>::from_dense(t.factors(), *sol, t.field());
  if (tensor_mult(t, s, algebras) != unit || tensor_mult(s, t, algebras) != unit) {
    throw NotInvertible("element has only a one-sided inverse");
  }
  return s;
}

/// Reorders legs: leg k of the result is leg order[k] of t.
template <class S>
TensorElement<S> permute_legs(const TensorElement<S>& t, const std::vector<Index>& order) {
  if (static_cast<Index>(order.size()) != t.arity()) throw SpaceMismatch("permute_legs: wrong arity");
  std::vector<bool> seen(order.size(), false);
  std::vector<BasedSpace> factors;
  for (auto o : order) {
    if (o < 0 || o >= t.arity() || seen[static_cast<std::size_t>(o)]) throw SpaceMismatch("permute_legs: not a permutation");
    seen[static_cast<std::size_t>(o)] = true;
    factors.push_back(t.factors()[static_cast<std::size_t>(o)]);
  }
  SparseVec<S> out;
  out.reserve(t.size());
  for (const auto& [flat, c] : t.terms()) {
    auto idx = t.multi_index(flat);
    Index f = 0;
    for (std::size_t k = 0; k < order.size(); ++k) f = f * factors[k].dim() + idx[static_cast<std::size_t>(order[k])];
    out.emplace_back(f, c);
  }
  return TensorElement<S>(std::move(factors), std::move(out), t.field());
}

/// The flip of a two-leg tensor (R_21 from R).
template <class S>
TensorElement<S> flip(const TensorElement<S>& t) {
  return permute_legs(t, {1, 0});
}

/// Replaces leg `leg` by new legs via a linear map given on basis vectors;
/// image(i) is a sparse vector over the flat index of `new_legs`.
template <class S>
TensorElement<S> expand_leg(const TensorElement<S>& t, Index leg, const std::function<const SparseVec<S>&(Index)>& image,
                            const std::vector<BasedSpace>& new_legs) {
  if (leg < 0 || leg >= t.arity()) throw SpaceMismatch("expand_leg: leg out of range");
  std::vector<BasedSpace> factors;
  Index inner = 1;
  for (const auto& f : new_legs) inner *= f.dim();
  Index tail = 1;
  for (Index s = 0; s < t.arity(); ++s) {
    if (s == leg) {
      factors.insert(factors.end(), new_legs.begin(), new_legs.end());
    } else {
      factors.push_back(t.factors()[static_cast<std::size_t>(s)]);
    }
    if (s > leg) tail *= t.factors()[static_cast<std::size_t>(s)].dim();
  }
  const Index leg_dim = t.factors()[static_cast<std::size_t>(leg)].dim();
  TensorElement<S> shape(factors, t.field());
  detail::TermSink<S> sink(shape.total_dim(), t.field());
  for (const auto& [flat, c] : t.terms()) {
    const Index after = flat % tail;
    const Index i = (flat / tail) % leg_dim;
    const Index before = flat / (tail * leg_dim);
    for (const auto& [k, v] : image(i)) sink.add((before * inner + k) * tail + after, c * v);
  }
  return TensorElement<S>(std::move(factors), sink.take(), t.field());
}

/// Applies a linear map (column j = image of basis j) to one leg.
template <class S>
TensorElement<S> map_leg(const TensorElement<S>& t, Index leg, const MapMatrix<S>& map) {
  require_same(map.domain(), t.factors()[static_cast<std::size_t>(leg)], "map_leg");
  std::vector<SparseVec<S>> cols(static_cast<std::size_t>(map.domain().dim()));
  for (Index j = 0; j < map.domain().dim(); ++j) cols[static_cast<std::size_t>(j)] = sparse_of(Vector<S>(map.entries().col(j)));
  return expand_leg<S>(t, leg, [&](Index j) -> const SparseVec<S>& { return cols[static_cast<std::size_t>(j)]; },
                       {map.codomain()});
}

/// Pairs one leg with a functional given by its values on the basis.
template <class S>
TensorElement<S> contract_leg(const TensorElement<S>& t, Index leg, const Vector<S>& functional) {
  if (functional.size() != t.factors()[static_cast<std::size_t>(leg)].dim()) {
    throw SpaceMismatch("contract_leg: functional has wrong dimension");
  }
  std::vector<SparseVec<S>> images;
  for (Index i = 0; i < functional.size(); ++i) {
    images.push_back(is_zero(functional(i)) ? SparseVec<S>{} : SparseVec<S>{{0, functional(i)}});
  }
  auto out = expand_leg<S>(t, leg, [&](Index i) -> const SparseVec<S>& { return images[static_cast<std::size_t>(i)]; },
                           {BasedSpace({"1"})});
  std::vector<BasedSpace> factors;
  for (Index s = 0; s < t.arity(); ++s) {
    if (s != leg) factors.push_back(t.factors()[static_cast<std::size_t>(s)]);
  }
  return TensorElement<S>(std::move(factors), out.terms(), t.field());
}

}  // namespace hopfq
