#pragma once

#include <memory>

#include "hopfq/hopf.hpp"

namespace hopfq {

/// An invertible element R of H ⊗ H together with its verified inverse.
template <class S>
class RMatrix {
 public:
  RMatrix(HopfPtr<S> host, TensorElement<S> r) : host_(std::move(host)), r_(std::move(r)) {
    r_.require_same_factors(host_->unit_tensor(2));
    inverse_ = tensor_invert(r_, host_->slots(2));
  }

  const HopfAlgebra<S>& host() const { return *host_; }
  const HopfPtr<S>& host_ptr() const { return host_; }
  const TensorElement<S>& element() const { return r_; }
  const TensorElement<S>& inverse() const { return inverse_; }

 private:
  HopfPtr<S> host_;
  TensorElement<S> r_;
  TensorElement<S> inverse_;
};

template <class S>
using RMatrixPtr = std::shared_ptr<const RMatrix<S>>;

/// Applies Δ to one leg of a tensor whose legs all live in H.
template <class S>
TensorElement<S> coproduct_on_leg(const HopfAlgebra<S>& h, const TensorElement<S>& t, Index leg) {
  return expand_leg<S>(t, leg, [&](Index i) -> const SparseVec<S>& { return h.coalg().coproduct(i); },
                       {h.space(), h.space()});
}

namespace detail {

template <class S>
Verdict compare(const TensorElement<S>& lhs, const TensorElement<S>& rhs, const std::string& axiom,
                const std::string& detail, std::vector<Index> prefix = {}) {
  if (lhs == rhs) return Verdict::ok();
  auto diff = first_difference(lhs.terms(), rhs.terms());
  auto idx = lhs.multi_index(diff);
  prefix.insert(prefix.end(), idx.begin(), idx.end());
  return Verdict::fail(axiom, std::move(prefix), detail);
}

}  // namespace detail

/// R-matrix axioms (Δ⊗id)R = R13 R23, (id⊗Δ)R = R13 R12, R Δ(h) = Δᵒᵖ(h) R.
template <class S>
Verdict check_r_matrix(const RMatrix<S>& rm) {
  const auto& h = rm.host();
  const auto& r = rm.element();
  auto s3 = h.slots(3);
  auto r13 = leg_embed(r, {0, 2}, s3);
  auto r23 = leg_embed(r, {1, 2}, s3);
  auto r12 = leg_embed(r, {0, 1}, s3);
  if (auto v = detail::compare(coproduct_on_leg(h, r, 0), tensor_mult(r13, r23, s3), "R-matrix axiom (i)",
                               "(Δ⊗id)R != R13 R23");
      !v) {
    return v;
  }
  if (auto v = detail::compare(coproduct_on_leg(h, r, 1), tensor_mult(r13, r12, s3), "R-matrix axiom (ii)",
                               "(id⊗Δ)R != R13 R12");
      !v) {
    return v;
  }
  auto s2 = h.slots(2);
  for (Index i = 0; i < h.dim(); ++i) {
    auto d = h.coproduct_tensor(i);
    if (auto v = detail::compare(tensor_mult(r, d, s2), tensor_mult(flip(d), r, s2), "R-matrix axiom (iii)",
                                 "R Δ(h) != Δop(h) R", {i});
        !v) {
      return v;
    }
  }
  return Verdict::ok();
}

/// Inverts r first; NotInvertible propagates.
template <class S>
Verdict check_r_matrix(HopfPtr<S> h, const TensorElement<S>& r) {
  return check_r_matrix(RMatrix<S>(std::move(h), r));
}

/// (ε⊗id)R and (id⊗ε)R as elements of H.
template <class S>
std::pair<SparseVec<S>, SparseVec<S>> counit_legs(const HopfAlgebra<S>& h, const TensorElement<S>& r) {
  const Index n = h.dim();
  Accumulator<S> a(n, h.field()), b(n, h.field());
  for (const auto& [f, c] : r.terms()) {
    const auto& eps = h.coalg().counit();
    if (!is_zero(eps(f / n))) a.add(f % n, c * eps(f / n));
    if (!is_zero(eps(f % n))) b.add(f / n, c * eps(f % n));
  }
  return {a.take(), b.take()};
}

/// c_{X,Y}(x⊗y) = R^i y ⊗ R_i x as a sparse map X⊗Y -> Y⊗X.
template <class S>
SparseMatrix<S> braiding_sparse(const TensorElement<S>& r, const HModule<S>& x, const HModule<S>& y) {
  SparseMatrix<S> flip = flip_matrix<S>(x.dim(), y.dim(), x.field());
  return flip * act_tensor(r, x, y);
}

template <class S>
MapMatrix<S> braiding_matrix(const RMatrix<S>& r, const HModule<S>& x, const HModule<S>& y) {
  return MapMatrix<S>(tensor(x.carrier(), y.carrier()), tensor(y.carrier(), x.carrier()),
                      to_dense(braiding_sparse(r.element(), x, y), x.field()), x.field());
}

/// Inverse braiding Y⊗X -> X⊗Y, built from R⁻¹.
template <class S>
SparseMatrix<S> braiding_inverse_sparse(const TensorElement<S>& r_inv, const HModule<S>& x, const HModule<S>& y) {
  SparseMatrix<S> flip = flip_matrix<S>(y.dim(), x.dim(), x.field());
  return act_tensor(r_inv, x, y) * flip;
}

/// Both hexagon identities on the given modules.
template <class S>
Verdict check_hexagon(const RMatrix<S>& r, const HModule<S>& x, const HModule<S>& y, const HModule<S>& z) {
  const auto& h = r.host();
  const auto& field = h.field();
  const auto& R = r.element();
  auto id = [&](Index n) { return sparse_identity<S>(n, field); };
  auto xy = module_tensor(h, x, y);
  auto yz = module_tensor(h, y, z);
  SparseMatrix<S> lhs1 = braiding_sparse(R, xy, z);
  SparseMatrix<S> rhs1 =
      SparseMatrix<S>(kron(braiding_sparse(R, x, z), id(y.dim()))) * SparseMatrix<S>(kron(id(x.dim()), braiding_sparse(R, y, z)));
  if (!sparse_equal(lhs1, rhs1)) return Verdict::fail("hexagon (1)", {}, "c_{X⊗Y,Z} != (c_{X,Z}⊗id)(id⊗c_{Y,Z})");
  SparseMatrix<S> lhs2 = braiding_sparse(R, x, yz);
  SparseMatrix<S> rhs2 =
      SparseMatrix<S>(kron(id(y.dim()), braiding_sparse(R, x, z))) * SparseMatrix<S>(kron(braiding_sparse(R, x, y), id(z.dim())));
  if (!sparse_equal(lhs2, rhs2)) return Verdict::fail("hexagon (2)", {}, "c_{X,Y⊗Z} != (id⊗c_{X,Z})(c_{X,Y}⊗id)");
  return Verdict::ok();
}

/// The Drinfeld map f -> f(R^i R_j) R_i R^j together with the monodromy R21 R.
template <class S>
struct DrinfeldMap {
  MapMatrix<S> matrix;
  TensorElement<S> monodromy;
};

template <class S>
TensorElement<S> monodromy(const RMatrix<S>& r) {
  return tensor_mult(flip(r.element()), r.element(), r.host().slots(2));
}

/// Matrix of f -> (f⊗id)(Q) from H* to H for Q ∈ H⊗H: column k is the
/// contraction of the dual basis functional h^k against the first leg.
template <class S>
MapMatrix<S> contraction_map(const HopfAlgebra<S>& h, const TensorElement<S>& q) {
  const Index n = h.dim();
  Matrix<S> m = zeros<S>(n, n, h.field());
  for (const auto& [f, c] : q.terms()) m(f % n, f / n) += c;
  return MapMatrix<S>(h.space().dual(), h.space(), std::move(m), h.field());
}

template <class S>
DrinfeldMap<S> drinfeld_map(const RMatrix<S>& r) {
  auto q = monodromy(r);
  return {contraction_map(r.host(), q), std::move(q)};
}

template <class S>
bool is_factorizable_hopf(const RMatrix<S>& r) {
  return drinfeld_map(r).matrix.rank() == r.host().dim();
}

template <class S>
bool is_triangular(const RMatrix<S>& r) {
  return flip(r.element()) == r.inverse();
}

/// The mirror R-matrix (R21)⁻¹.
template <class S>
RMatrix<S> mirror(const RMatrix<S>& r) {
  return RMatrix<S>(r.host_ptr(), flip(r.inverse()));
}

}  // namespace hopfq
