#pragma once

#include <deque>
#include <memory>
#include <string>

#include "hopfq/echelon.hpp"
#include "hopfq/quasitri.hpp"

namespace hopfq {

class ImageEscapesEndSpace : public HopfError {
 public:
  using HopfError::HopfError;
};

/// An algebra B with a left coaction δ: B -> H ⊗ B.
///
/// coaction(b) is δ(e_b) as a sparse vector over the flat index h * dim B + b'.
template <class S>
class ComoduleAlgebra {
 public:
  ComoduleAlgebra(HopfPtr<S> host, StructAlgebra<S> alg, std::vector<SparseVec<S>> coaction)
      : host_(std::move(host)), alg_(std::move(alg)), coaction_(std::move(coaction)) {
    if (!(host_->field() == alg_.field())) throw FieldMismatch("comodule algebra and Hopf algebra use different fields");
    if (static_cast<Index>(coaction_.size()) != alg_.dim()) {
      throw SpaceMismatch("coaction needs one image per basis element of B");
    }
    const Index total = host_->dim() * alg_.dim();
    for (const auto& v : coaction_) {
      for (const auto& [f, c] : v) {
        if (f < 0 || f >= total) throw SpaceMismatch("coaction index out of range");
      }
    }
  }

  const HopfAlgebra<S>& host() const { return *host_; }
  const HopfPtr<S>& host_ptr() const { return host_; }
  const StructAlgebra<S>& alg() const { return alg_; }
  const BasedSpace& space() const { return alg_.space(); }
  Index dim() const { return alg_.dim(); }
  const FieldSpec& field() const { return alg_.field(); }
  const SparseVec<S>& coaction(Index b) const { return coaction_[static_cast<std::size_t>(b)]; }
  const std::vector<SparseVec<S>>& coactions() const { return coaction_; }

  TensorElement<S> coaction_tensor(Index b) const { return TensorElement<S>({host_->space(), space()}, coaction(b), field()); }

  TensorElement<S> coaction_tensor(const SparseVec<S>& x) const {
    TensorElement<S> t({host_->space(), space()}, field());
    for (const auto& [b, c] : x) {
      for (const auto& [f, v] : coaction(b)) t.add_flat(f, c * v);
    }
    return t;
  }

  /// δ as a map B -> H ⊗ B.
  MapMatrix<S> coaction_map() const {
    Matrix<S> m = zeros<S>(host_->dim() * dim(), dim(), field());
    for (Index b = 0; b < dim(); ++b) {
      for (const auto& [f, c] : coaction(b)) m(f, b) = c;
    }
    return MapMatrix<S>(space(), tensor(host_->space(), space()), std::move(m), field());
  }

  SlotAlgebras<S> slots_hb() const { return {&host_->alg(), &alg_}; }
  SlotAlgebras<S> slots_hhb() const { return {&host_->alg(), &host_->alg(), &alg_}; }

 private:
  HopfPtr<S> host_;
  StructAlgebra<S> alg_;
  std::vector<SparseVec<S>> coaction_;
};

template <class S>
using ComodulePtr = std::shared_ptr<const ComoduleAlgebra<S>>;

/// δ is a unital algebra map, coassociative and counital.
template <class S>
Verdict check_comodule_algebra(const ComoduleAlgebra<S>& c) {
  if (auto v = check_algebra(c.alg()); !v) return v;
  const auto& h = c.host();
  const Index n = c.dim();
  auto hb = c.slots_hb();
  if (c.coaction_tensor(sparse_of(c.alg().unit())) != tensor_unit(hb)) {
    return Verdict::fail("coaction unit", {}, "δ(1) != 1⊗1");
  }
  std::vector<TensorElement<S>> d;
  for (Index b = 0; b < n; ++b) d.push_back(c.coaction_tensor(b));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      auto lhs = c.coaction_tensor(c.alg().product(i, j));
      if (auto v = detail::compare(lhs, tensor_mult(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(j)], hb),
                                   "coaction multiplicativity", "δ(b b') != δ(b) δ(b')", {i, j});
          !v) {
        return v;
      }
    }
  }
  for (Index b = 0; b < n; ++b) {
    const auto& t = d[static_cast<std::size_t>(b)];
    auto lhs = expand_leg<S>(t, 0, [&](Index i) -> const SparseVec<S>& { return h.coalg().coproduct(i); },
                             {h.space(), h.space()});
    auto rhs = expand_leg<S>(t, 1, [&](Index i) -> const SparseVec<S>& { return c.coaction(i); }, {h.space(), c.space()});
    if (auto v = detail::compare(lhs, rhs, "coassociativity", "(Δ⊗id)δ != (id⊗δ)δ", {b}); !v) return v;
    Accumulator<S> acc(n, c.field());
    for (const auto& [f, x] : t.terms()) {
      const S e = h.coalg().counit()(f / n);
      if (!is_zero(e)) acc.add(f % n, x * e);
    }
    auto back = acc.take();
    if (!sparse_equal(back, SparseVec<S>{{b, c.field().template make<S>(1)}})) {
      return Verdict::fail("coaction counit", {b}, "(ε⊗id)δ(b) != b");
    }
  }
  return Verdict::ok();
}

/// An invertible K ∈ H ⊗ B paired with an R-matrix on the same Hopf algebra.
template <class S>
class KMatrix {
 public:
  KMatrix(ComodulePtr<S> comodule, RMatrixPtr<S> r, TensorElement<S> k)
      : comodule_(std::move(comodule)), r_(std::move(r)), k_(std::move(k)) {
    if (&comodule_->host() != &r_->host() && !(comodule_->host().space() == r_->host().space())) {
      throw SpaceMismatch("K-matrix: comodule and R-matrix live over different Hopf algebras");
    }
    k_.require_same_factors(tensor_unit(comodule_->slots_hb()));
    inverse_ = tensor_invert(k_, comodule_->slots_hb());
  }

  const ComoduleAlgebra<S>& comodule() const { return *comodule_; }
  const ComodulePtr<S>& comodule_ptr() const { return comodule_; }
  const RMatrix<S>& rmatrix() const { return *r_; }
  const RMatrixPtr<S>& rmatrix_ptr() const { return r_; }
  const HopfAlgebra<S>& host() const { return comodule_->host(); }
  const TensorElement<S>& element() const { return k_; }
  const TensorElement<S>& inverse() const { return inverse_; }

 private:
  ComodulePtr<S> comodule_;
  RMatrixPtr<S> r_;
  TensorElement<S> k_;
  TensorElement<S> inverse_;
};

template <class S>
using KMatrixPtr = std::shared_ptr<const KMatrix<S>>;

/// (Δ⊗id)K = K23 R21 K13 R21⁻¹, (id⊗δ)K = R21 K13 R12, K δ(b) = δ(b) K.
template <class S>
Verdict check_k_matrix(const KMatrix<S>& km) {
  const auto& c = km.comodule();
  const auto& h = c.host();
  const auto& k = km.element();
  const auto& r = km.rmatrix().element();
  auto s3 = c.slots_hhb();
  auto r21 = leg_embed(flip(r), {0, 1}, s3);
  auto r21_inv = leg_embed(flip(km.rmatrix().inverse()), {0, 1}, s3);
  auto r12 = leg_embed(r, {0, 1}, s3);
  auto k13 = leg_embed(k, {0, 2}, s3);
  auto k23 = leg_embed(k, {1, 2}, s3);
  auto lhs1 = expand_leg<S>(k, 0, [&](Index i) -> const SparseVec<S>& { return h.coalg().coproduct(i); },
                            {h.space(), h.space()});
  auto rhs1 = tensor_mult(tensor_mult(tensor_mult(k23, r21, s3), k13, s3), r21_inv, s3);
  if (auto v = detail::compare(lhs1, rhs1, "K-matrix axiom (i)", "(Δ⊗id)K != K23 R21 K13 R21^-1"); !v) return v;
  auto lhs2 = expand_leg<S>(k, 1, [&](Index i) -> const SparseVec<S>& { return c.coaction(i); }, {h.space(), c.space()});
  auto rhs2 = tensor_mult(tensor_mult(r21, k13, s3), r12, s3);
  if (auto v = detail::compare(lhs2, rhs2, "K-matrix axiom (ii)", "(id⊗δ)K != R21 K13 R12"); !v) return v;
  auto hb = c.slots_hb();
  for (Index b = 0; b < c.dim(); ++b) {
    auto d = c.coaction_tensor(b);
    if (auto v = detail::compare(tensor_mult(k, d, hb), tensor_mult(d, k, hb), "K-matrix axiom (iii)", "K δ(b) != δ(b) K", {b});
        !v) {
      return v;
    }
  }
  return Verdict::ok();
}

/// X ▷ M: the B-module X ⊗ M with b acting through δ(b).
template <class S>
BModule<S> module_action(const ComoduleAlgebra<S>& c, const HModule<S>& x, const BModule<S>& m) {
  std::vector<SparseMatrix<S>> act;
  for (Index b = 0; b < c.dim(); ++b) act.push_back(act_tensor(c.coaction_tensor(b), x, m));
  return BModule<S>(tensor(x.carrier(), m.carrier()), std::move(act), c.field());
}

/// e_{X,M}(x⊗m) = K_i x ⊗ K^i m.
template <class S>
SparseMatrix<S> module_braiding_sparse(const KMatrix<S>& k, const HModule<S>& x, const BModule<S>& m) {
  return act_tensor(k.element(), x, m);
}

template <class S>
MapMatrix<S> module_braiding(const KMatrix<S>& k, const HModule<S>& x, const BModule<S>& m) {
  auto sp = tensor(x.carrier(), m.carrier());
  return MapMatrix<S>(sp, sp, to_dense(module_braiding_sparse(k, x, m), m.field()), m.field());
}

/// The two braided-module identities on X, Y, M and e_{1,M} = id.
template <class S>
Verdict check_braided_module(const KMatrix<S>& k, const HModule<S>& x, const HModule<S>& y, const BModule<S>& m) {
  const auto& c = k.comodule();
  const auto& h = c.host();
  const auto& field = c.field();
  const auto& R = k.rmatrix().element();
  auto id = [&](Index n) { return sparse_identity<S>(n, field); };
  const Index dx = x.dim(), dy = y.dim(), dm = m.dim();

  SparseMatrix<S> e_xm = module_braiding_sparse(k, x, m);
  SparseMatrix<S> e_ym = module_braiding_sparse(k, y, m);
  SparseMatrix<S> c_yx = braiding_sparse(R, y, x);

  SparseMatrix<S> lhs1 = module_braiding_sparse(k, module_tensor(h, x, y), m);
  SparseMatrix<S> rhs1 = SparseMatrix<S>(kron(id(dx), e_ym)) * SparseMatrix<S>(kron(c_yx, id(dm))) *
                         SparseMatrix<S>(kron(id(dy), e_xm)) *
                         SparseMatrix<S>(kron(braiding_inverse_sparse(k.rmatrix().inverse(), y, x), id(dm)));
  if (!sparse_equal(lhs1, rhs1)) {
    return Verdict::fail("braided module (1)", {}, "e_{X⊗Y,M} != (id▷e_{Y,M})(c_{Y,X}▷id)(id▷e_{X,M})(c_{Y,X}^-1▷id)");
  }
  SparseMatrix<S> lhs2 = module_braiding_sparse(k, x, module_action(c, y, m));
  SparseMatrix<S> rhs2 = SparseMatrix<S>(kron(c_yx, id(dm))) * SparseMatrix<S>(kron(id(dy), e_xm)) *
                         SparseMatrix<S>(kron(braiding_sparse(R, x, y), id(dm)));
  if (!sparse_equal(lhs2, rhs2)) {
    return Verdict::fail("braided module (2)", {}, "e_{X,Y▷M} != (c_{Y,X}▷id)(id▷e_{X,M})(c_{X,Y}▷id)");
  }
  if (!sparse_equal(module_braiding_sparse(k, trivial_module(h), m), id(dm))) {
    return Verdict::fail("braided module unit", {}, "e_{1,M} != id");
  }
  return Verdict::ok();
}

/// A small set of basis elements generating B as an algebra, chosen greedily
/// in basis order.
template <class S>
std::vector<Index> algebra_generators(const StructAlgebra<S>& a) {
  const Index n = a.dim();
  SparseEchelon<S> span(n, a.field());
  std::vector<SparseVec<S>> basis;
  std::vector<Index> gens;
  auto grow = [&](const SparseVec<S>& v, std::deque<SparseVec<S>>& queue) {
    if (span.add(v)) {
      basis.push_back(v);
      queue.push_back(v);
    }
  };
  std::deque<SparseVec<S>> queue;
  grow(sparse_of(a.unit()), queue);
  for (Index i = 0; i < n && span.rank() < n; ++i) {
    SparseVec<S> e{{i, a.field().template make<S>(1)}};
    if (span.contains(e)) continue;
    gens.push_back(i);
    // Words in the generators found so far; new generator multiplies everything.
    for (const auto& v : basis) queue.push_back(v);
    grow(e, queue);
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (Index g : gens) grow(a.multiply(v, SparseVec<S>{{g, a.field().template make<S>(1)}}), queue);
    }
  }
  return gens;
}

/// The space E(H,B) of maps ξ: H -> B with ξ(b_[-1] h) b_[0] = b ξ(h).
///
/// A map ξ is stored as a vector over Hom(H,B) with coordinate j * dim B + k
/// holding the coefficient of b_k in ξ(h_j).
template <class S>
struct EndSpace {
  BasedSpace hom_space;
  BasedSpace space;
  Matrix<S> basis;
  SubspaceCoords<S> coordinates;
  std::vector<MapMatrix<S>> h_action;

  Index dim() const { return basis.cols(); }
  std::optional<Vector<S>> coords(const Vector<S>& xi) const { return coordinates.coords(xi); }

  HModule<S> module(const FieldSpec& field) const {
    std::vector<SparseMatrix<S>> act;
    for (const auto& m : h_action) act.push_back(to_sparse(m.entries()));
    return HModule<S>(space, std::move(act), field);
  }
};

template <class S>
EndSpace<S> compute_end_space(const ComoduleAlgebra<S>& c) {
  const auto& h = c.host();
  const auto& b = c.alg();
  const Index nh = h.dim(), nb = c.dim(), unknowns = nh * nb;
  const auto& field = c.field();
  SparseEchelon<S> ech(unknowns, field);
  // δ is an algebra map and the constraint is multiplicative in b, so the
  // generators of B suffice.
  for (Index g : algebra_generators(b)) {
    for (Index j = 0; j < nh; ++j) {
      std::vector<std::tuple<Index, Index, S>> eqs;
      for (const auto& [f, cf] : c.coaction(g)) {
        const Index p = f / nb, q = f % nb;
        for (const auto& [l, m1] : h.alg().product(p, j)) {
          for (Index k = 0; k < nb; ++k) {
            for (const auto& [r, m2] : b.product(k, q)) eqs.emplace_back(r, l * nb + k, cf * m1 * m2);
          }
        }
      }
      for (Index k = 0; k < nb; ++k) {
        for (const auto& [r, m2] : b.product(g, k)) eqs.emplace_back(r, j * nb + k, -m2);
      }
      std::sort(eqs.begin(), eqs.end(), [](const auto& x, const auto& y) {
        return std::get<0>(x) != std::get<0>(y) ? std::get<0>(x) < std::get<0>(y) : std::get<1>(x) < std::get<1>(y);
      });
      std::size_t i = 0;
      while (i < eqs.size()) {
        const Index r = std::get<0>(eqs[i]);
        SparseVec<S> row;
        while (i < eqs.size() && std::get<0>(eqs[i]) == r) {
          const Index var = std::get<1>(eqs[i]);
          S sum = std::get<2>(eqs[i]);
          for (++i; i < eqs.size() && std::get<0>(eqs[i]) == r && std::get<1>(eqs[i]) == var; ++i) sum += std::get<2>(eqs[i]);
          if (!is_zero(sum)) row.emplace_back(var, sum);
        }
        if (!row.empty()) ech.add(row);
      }
    }
  }
  EndSpace<S> e;
  std::vector<std::string> hom_labels;
  for (Index j = 0; j < nh; ++j) {
    for (Index k = 0; k < nb; ++k) hom_labels.push_back(h.space().label(j) + "->" + b.space().label(k));
  }
  e.hom_space = BasedSpace(std::move(hom_labels));
  e.basis = ech.kernel();
  e.space = BasedSpace::numbered("xi", e.basis.cols());
  e.coordinates = SubspaceCoords<S>(e.basis, field);
  // (h_i · ξ)(h_j) = ξ(h_j h_i)
  for (Index i = 0; i < nh; ++i) {
    Matrix<S> act(e.dim(), e.dim());
    for (Index col = 0; col < e.dim(); ++col) {
      Vector<S> moved = zero_vector<S>(unknowns, field);
      for (Index j = 0; j < nh; ++j) {
        for (const auto& [l, m] : h.alg().product(j, i)) {
          for (Index k = 0; k < nb; ++k) moved(j * nb + k) += m * e.basis(l * nb + k, col);
        }
      }
      auto x = e.coords(moved);
      if (!x) throw HopfError("E(H,B) is not stable under the H-action");
      act.col(col) = *x;
    }
    e.h_action.emplace_back(e.space, e.space, std::move(act), field);
  }
  if (auto v = check_module(h, e.module(field)); !v) throw HopfError("E(H,B) action: " + v.describe());
  return e;
}

/// ξ ↦ ξ(1_H) from E(H,B) to B.
template <class S>
MapMatrix<S> evaluate_at_unit(const ComoduleAlgebra<S>& c, const EndSpace<S>& e) {
  const Index nh = c.host().dim(), nb = c.dim();
  const auto& u = c.host().alg().unit();
  Matrix<S> m = zeros<S>(nb, e.dim(), c.field());
  for (Index col = 0; col < e.dim(); ++col) {
    for (Index j = 0; j < nh; ++j) {
      if (is_zero(u(j))) continue;
      for (Index k = 0; k < nb; ++k) m(k, col) += u(j) * e.basis(j * nb + k, col);
    }
  }
  return MapMatrix<S>(e.space, c.space(), std::move(m), c.field());
}

namespace detail {

/// Columns k = 0..dim H-1 hold the map h ↦ ⟨g_k, S(h_(1)) K_i h_(2)⟩ K^i as a
/// Hom(H,B) vector, where g_k = h^k (plain) or h^k ∘ S (twisted).
template <class S>
Matrix<S> theta_columns(const KMatrix<S>& km, bool twisted) {
  const auto& c = km.comodule();
  const auto& h = c.host();
  const Index nh = h.dim(), nb = c.dim();
  const auto& field = c.field();
  Matrix<S> t = zeros<S>(nh * nb, nh, field);
  for (Index j = 0; j < nh; ++j) {
    for (const auto& [pq, cd] : h.coalg().coproduct(j)) {
      const Index p = pq / nh, q = pq % nh;
      for (const auto& [ab, ck] : km.element().terms()) {
        const Index a = ab / nb, bb = ab % nb;
        SparseVec<S> v = h.alg().multiply(h.alg().multiply(h.antipode_of(p), SparseVec<S>{{a, ck * cd}}),
                                          SparseVec<S>{{q, field.template make<S>(1)}});
        if (twisted) v = h.apply_antipode(v);
        for (const auto& [k, x] : v) t(j * nb + bb, k) += x;
      }
    }
  }
  return t;
}

template <class S>
MapMatrix<S> express_in(const EndSpace<S>& e, const Matrix<S>& cols, const BasedSpace& domain, const FieldSpec& field,
                        const char* what) {
  Matrix<S> m(e.dim(), cols.cols());
  for (Index k = 0; k < cols.cols(); ++k) {
    auto x = e.coords(Vector<S>(cols.col(k)));
    if (!x) throw ImageEscapesEndSpace(std::string(what) + ": image of basis functional " + std::to_string(k) + " is not in E(H,B)");
    m.col(k) = *x;
  }
  return MapMatrix<S>(domain, e.space, std::move(m), field);
}

}  // namespace detail

/// θ_B: H* -> E(H,B), f ↦ [h ↦ ⟨f, S(h_(1)) K_i h_(2)⟩ K^i].
template <class S>
MapMatrix<S> theta_comodule(const KMatrix<S>& k, const EndSpace<S>& e) {
  return detail::express_in(e, detail::theta_columns(k, false), k.host().space().dual(), k.host().field(), "theta_B");
}

template <class S>
MapMatrix<S> theta_comodule(const KMatrix<S>& k) {
  return theta_comodule(k, compute_end_space(k.comodule()));
}

/// f ↦ [h ↦ ⟨f, S(S(h_(1)) K_i h_(2))⟩ K^i].
template <class S>
MapMatrix<S> theta_module_category(const KMatrix<S>& k, const EndSpace<S>& e) {
  return detail::express_in(e, detail::theta_columns(k, true), k.host().space().dual(), k.host().field(),
                            "theta_B-FdMod");
}

template <class S>
MapMatrix<S> theta_module_category(const KMatrix<S>& k) {
  return theta_module_category(k, compute_end_space(k.comodule()));
}

/// The antipode of H* in the dual basis, Sᵀ.
template <class S>
MapMatrix<S> dual_antipode(const HopfAlgebra<S>& h) {
  return h.antipode().dual();
}

template <class S>
bool is_factorizable_comodule(const KMatrix<S>& k, const EndSpace<S>& e) {
  return theta_comodule(k, e).rank() == k.host().dim();
}

template <class S>
bool is_factorizable_comodule(const KMatrix<S>& k) {
  return is_factorizable_comodule(k, compute_end_space(k.comodule()));
}

/// ω = Σ h_i ⊗ θ_{B-FdMod}(h^i) in H ⊗ E(H,B).
template <class S>
struct Copairing {
  TensorElement<S> element;
  Matrix<S> coefficients;  // dim H × dim E
  Verdict invariance;
};

/// Whether h · ω = ε(h) ω, with H acting on its first leg adjointly.
template <class S>
Verdict check_copairing_invariance(const HopfAlgebra<S>& h, const EndSpace<S>& e, const Matrix<S>& w) {
  const Index n = h.dim();
  const auto& field = h.field();
  auto ad = adjoint_module(h);
  std::vector<Matrix<S>> ad_dense, act_t;
  for (Index i = 0; i < n; ++i) {
    ad_dense.push_back(to_dense(ad.action(i), field));
    act_t.push_back(e.h_action[static_cast<std::size_t>(i)].entries().transpose());
  }
  for (Index a = 0; a < n; ++a) {
    Matrix<S> lhs = zeros<S>(w.rows(), w.cols(), field);
    for (const auto& [pq, c] : h.coalg().coproduct(a)) {
      lhs += c * (ad_dense[static_cast<std::size_t>(pq / n)] * w * act_t[static_cast<std::size_t>(pq % n)]);
    }
    Matrix<S> rhs = h.coalg().counit()(a) * w;
    for (Index i = 0; i < w.rows(); ++i) {
      for (Index j = 0; j < w.cols(); ++j) {
        if (lhs(i, j) != rhs(i, j)) return Verdict::fail("copairing invariance", {a, i, j}, "h·ω != ε(h)ω");
      }
    }
  }
  return Verdict::ok();
}

template <class S>
Copairing<S> omega_copairing(const KMatrix<S>& k, const EndSpace<S>& e) {
  const auto& h = k.host();
  Matrix<S> w = theta_module_category(k, e).entries().transpose();
  TensorElement<S> t({h.space(), e.space}, h.field());
  for (Index i = 0; i < w.rows(); ++i) {
    for (Index j = 0; j < w.cols(); ++j) {
      if (!is_zero(w(i, j))) t.add_flat(i * w.cols() + j, w(i, j));
    }
  }
  auto inv = check_copairing_invariance(h, e, w);
  return {std::move(t), std::move(w), std::move(inv)};
}

template <class S>
struct WeakFactorizability {
  Index source_dim = 0;
  Index target_dim = 0;
  Index rank = 0;
  bool bijective = false;
};

namespace detail {

/// Common fixed vectors: ∩_i ker(A_i - ε_i I).
template <class S>
Matrix<S> fixed_vectors(const std::vector<Matrix<S>>& maps, const Vector<S>& eps, Index dim, const FieldSpec& field) {
  Matrix<S> stacked(dim * static_cast<Index>(maps.size()), dim);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    Matrix<S> m = maps[i];
    for (Index d = 0; d < dim; ++d) m(d, d) -= eps(static_cast<Index>(i));
    stacked.block(static_cast<Index>(i) * dim, 0, dim, dim) = m;
  }
  return kernel_basis(stacked, field);
}

}  // namespace detail

/// Ω: Hom(E_C, 1) -> Hom(1, E_M), f ↦ (f⊗id)ω.
template <class S>
WeakFactorizability<S> weak_factorizability(const KMatrix<S>& k, const EndSpace<S>& e, const Copairing<S>& omega) {
  const auto& h = k.host();
  const auto& field = h.field();
  const Index n = h.dim();
  auto ad = adjoint_module(h);
  std::vector<Matrix<S>> ad_t, act;
  for (Index i = 0; i < n; ++i) {
    ad_t.push_back(to_dense(ad.action(i), field).transpose());
    act.push_back(e.h_action[static_cast<std::size_t>(i)].entries());
  }
  Matrix<S> source = detail::fixed_vectors(ad_t, h.coalg().counit(), n, field);
  Matrix<S> target = detail::fixed_vectors(act, h.coalg().counit(), e.dim(), field);
  WeakFactorizability<S> out;
  out.source_dim = source.cols();
  out.target_dim = target.cols();
  if (source.cols() > 0) {
    Matrix<S> image = omega.coefficients.transpose() * source;
    SubspaceCoords<S> tc(target, field);
    for (Index j = 0; j < image.cols(); ++j) {
      if (!tc.coords(Vector<S>(image.col(j)))) throw HopfError("Ω lands outside the invariants of E(H,B)");
    }
    out.rank = hopfq::rank(image, field);
  }
  out.bijective = out.source_dim == out.target_dim && out.rank == out.source_dim;
  return out;
}

template <class S>
WeakFactorizability<S> weak_factorizability(const KMatrix<S>& k) {
  auto e = compute_end_space(k.comodule());
  return weak_factorizability(k, e, omega_copairing(k, e));
}

namespace detail {

template <class S>
SparseVec<S> apply(const SparseMatrix<S>& m, const SparseVec<S>& v, const FieldSpec& field) {
  Accumulator<S> acc(m.rows(), field);
  for (const auto& [j, x] : v) {
    for (typename SparseMatrix<S>::InnerIterator it(m, j); it; ++it) acc.add(it.row(), x * it.value());
  }
  return acc.take();
}

}  // namespace detail

/// Operators whose invariant subspaces are the H-costable ideals: left and
/// right multiplication by algebra generators, and b ↦ (h^k ⊗ id) δ(b).
template <class S>
std::vector<SparseMatrix<S>> costable_operators(const ComoduleAlgebra<S>& c, bool all_basis = false) {
  const auto& b = c.alg();
  const Index n = c.dim(), nh = c.host().dim();
  std::vector<Index> gens;
  if (all_basis) {
    for (Index i = 0; i < n; ++i) gens.push_back(i);
  } else {
    gens = algebra_generators(b);
  }
  auto reg = regular_representation(b);
  auto right = regular_representation(b.opposite());
  std::vector<SparseMatrix<S>> ops;
  for (Index g : gens) ops.push_back(reg.action(g));
  for (Index g : gens) ops.push_back(right.action(g));
  std::vector<std::vector<SparseVec<S>>> cols(static_cast<std::size_t>(nh), std::vector<SparseVec<S>>(static_cast<std::size_t>(n)));
  for (Index j = 0; j < n; ++j) {
    for (const auto& [f, x] : c.coaction(j)) cols[static_cast<std::size_t>(f / n)][static_cast<std::size_t>(j)].emplace_back(f % n, x);
  }
  for (Index k = 0; k < nh; ++k) {
    auto m = detail::from_columns(n, cols[static_cast<std::size_t>(k)]);
    if (m.nonZeros() > 0) ops.push_back(std::move(m));
  }
  return ops;
}

/// The smallest subspace containing the generators and invariant under all
/// costable operators, as basis columns.
template <class S>
Matrix<S> costable_closure(const ComoduleAlgebra<S>& c, const std::vector<Vector<S>>& generators) {
  const Index n = c.dim();
  const auto& field = c.field();
  auto ops = costable_operators(c);
  SparseEchelon<S> span(n, field);
  std::deque<SparseVec<S>> queue;
  for (const auto& g : generators) {
    auto v = sparse_of(g);
    if (span.add(v)) queue.push_back(v);
  }
  while (!queue.empty() && span.rank() < n) {
    auto v = std::move(queue.front());
    queue.pop_front();
    for (const auto& op : ops) {
      auto w = detail::apply(op, v, field);
      if (span.add(w)) queue.push_back(std::move(w));
    }
  }
  Matrix<S> out = zeros<S>(n, span.rank(), field);
  for (Index r = 0; r < span.rank(); ++r) {
    for (const auto& [i, x] : span.rows()[static_cast<std::size_t>(r)]) out(i, r) = x;
  }
  return out;
}

/// Dimension of the span of all words in the costable operators, stopping
/// once it reaches (dim B)².
template <class S>
Index operator_span_dim(const std::vector<SparseMatrix<S>>& ops, Index n, const FieldSpec& field) {
  const Index full = n * n;
  auto flat = [&](const SparseMatrix<S>& m) {
    SparseVec<S> v;
    for (Index j = 0; j < m.outerSize(); ++j) {
      for (typename SparseMatrix<S>::InnerIterator it(m, j); it; ++it) {
        if (!is_zero(it.value())) v.emplace_back(it.row() * n + j, it.value());
      }
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  };
  SparseEchelon<S> span(full, field);
  std::deque<SparseMatrix<S>> frontier;
  SparseMatrix<S> id = sparse_identity<S>(n, field);
  if (span.add(flat(id))) frontier.push_back(id);
  Index rounds = 0;
  while (!frontier.empty() && span.rank() < full && rounds <= full + 1) {
    std::deque<SparseMatrix<S>> next;
    for (const auto& m : frontier) {
      for (const auto& op : ops) {
        SparseMatrix<S> p = op * m;
        p.prune([](Index, Index, const S& v) { return !is_zero(v); });
        if (span.add(flat(p))) next.push_back(std::move(p));
        if (span.rank() == full) return full;
      }
    }
    frontier = std::move(next);
    ++rounds;
  }
  return span.rank();
}

template <class S>
struct Simplicity {
  enum class Kind { Simple, NotSimple, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::string certificate;
  Matrix<S> witness;  // basis of a proper nonzero costable ideal
  FieldSpec field;

  std::string name() const {
    switch (kind) {
      case Kind::Simple:
        return "Simple";
      case Kind::NotSimple:
        return "NotSimple";
      default:
        return "Inconclusive";
    }
  }
};

template <class S>
Simplicity<S> h_simplicity(const ComoduleAlgebra<S>& c) {
  const Index n = c.dim();
  const auto& field = c.field();
  Simplicity<S> out;
  out.field = field;
  auto proper = [&](const Vector<S>& v) -> bool {
    Matrix<S> span = costable_closure(c, {v});
    if (span.cols() > 0 && span.cols() < n) {
      out.kind = Simplicity<S>::Kind::NotSimple;
      out.witness = std::move(span);
      return true;
    }
    return false;
  };
  for (Index i = 0; i < n; ++i) {
    if (proper(basis_vector<S>(n, i, field))) return out;
  }
  const Index span_dim = operator_span_dim(costable_operators(c), n, field);
  if (span_dim == n * n) {
    out.kind = Simplicity<S>::Kind::Simple;
    out.certificate = "operator algebra has dimension " + std::to_string(span_dim) + " = (dim B)^2 over " + field.name();
    return out;
  }
  const auto one = field.template make<S>(1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      Vector<S> d = basis_vector<S>(n, i, field);
      d(j) = -one;
      if (proper(d)) return out;
      d(j) = one;
      if (proper(d)) return out;
    }
  }
  out.certificate = "operator algebra has dimension " + std::to_string(span_dim) + " < (dim B)^2 over " + field.name() +
                    "; no proper ideal found, re-run over other fields";
  return out;
}

/// Whether e_{X,B} is the identity for the regular B-module; naturality
/// extends this to every finite-dimensional B-module.
template <class S>
bool z2_membership(const KMatrix<S>& k, const HModule<S>& x) {
  auto reg = regular_representation(k.comodule().alg());
  return sparse_equal(module_braiding_sparse(k, x, reg), sparse_identity<S>(x.dim() * reg.dim(), k.comodule().field()));
}

}  // namespace hopfq
