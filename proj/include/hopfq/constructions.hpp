#pragma once

#include <memory>
#include <string>

#include "hopfq/comodule.hpp"
#include "hopfq/groups.hpp"

namespace hopfq {

class UnknownExample : public HopfError {
 public:
  using HopfError::HopfError;
};

/// Everything a check or factorizability computation may need. Missing
/// parts are null.
template <class S>
struct Bundle {
  std::string name;
  FieldSpec field;
  HopfPtr<S> hopf;
  RMatrixPtr<S> rmatrix;
  ComodulePtr<S> comodule;
  KMatrixPtr<S> kmatrix;
};

template <class S>
HopfPtr<S> group_algebra(const FiniteGroup& g, const FieldSpec& field) {
  const Index n = g.order();
  const S one = field.template make<S>(1);
  std::vector<typename StructAlgebra<S>::Entry> mult;
  std::vector<typename StructCoalgebra<S>::Entry> comult;
  Matrix<S> s = zeros<S>(n, n, field);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) mult.emplace_back(a, b, g.mul(a, b), one);
    comult.emplace_back(a, a, a, one);
    s(g.inv(a), a) = one;
  }
  BasedSpace sp(g.labels());
  auto alg = StructAlgebra<S>::from_entries(sp, mult, basis_vector<S>(n, g.identity(), field), field);
  Vector<S> eps(n);
  for (Index i = 0; i < n; ++i) eps(i) = one;
  auto co = StructCoalgebra<S>::from_entries(sp, comult, eps, field);
  return std::make_shared<const HopfAlgebra<S>>(make_hopf<S>(std::move(alg), std::move(co), MapMatrix<S>(sp, sp, s, field)));
}

/// Functions on G, with basis δ_g.
template <class S>
HopfPtr<S> dual_group_algebra(const FiniteGroup& g, const FieldSpec& field) {
  auto d = dual_hopf(*group_algebra<S>(g, field));
  std::vector<std::string> labels;
  for (const auto& l : g.labels()) labels.push_back("δ_" + l);
  BasedSpace sp(labels);
  StructAlgebra<S> a(sp, d.alg().table(), d.alg().unit(), field);
  StructCoalgebra<S> c(sp, d.coalg().comult(), d.coalg().counit(), field);
  return std::make_shared<const HopfAlgebra<S>>(
      make_hopf<S>(std::move(a), std::move(c), MapMatrix<S>(sp, sp, d.antipode().entries(), field)));
}

/// Sweedler's algebra on the basis 1, g, x, gx with g² = 1, x² = 0, xg = -gx.
template <class S>
HopfPtr<S> sweedler_h4(const FieldSpec& field) {
  if (field.characteristic() == 2) throw InvalidStructure("Sweedler's algebra needs characteristic != 2");
  auto c = [&](long v) { return field.template make<S>(v); };
  enum { one = 0, g = 1, x = 2, gx = 3 };
  std::vector<typename StructAlgebra<S>::Entry> mult;
  for (int i = 0; i < 4; ++i) {
    mult.emplace_back(one, i, i, c(1));
    if (i != one) mult.emplace_back(i, one, i, c(1));
  }
  mult.emplace_back(g, g, one, c(1));
  mult.emplace_back(g, x, gx, c(1));
  mult.emplace_back(g, gx, x, c(1));
  mult.emplace_back(x, g, gx, c(-1));
  mult.emplace_back(gx, g, x, c(-1));
  std::vector<typename StructCoalgebra<S>::Entry> comult{
      {one, one, one, c(1)}, {g, g, g, c(1)}, {x, x, one, c(1)}, {x, g, x, c(1)}, {gx, gx, g, c(1)}, {gx, one, gx, c(1)}};
  BasedSpace sp({"1", "g", "x", "gx"});
  Vector<S> eps(4);
  eps << c(1), c(1), c(0), c(0);
  auto alg = StructAlgebra<S>::from_entries(sp, mult, basis_vector<S>(4, one, field), field);
  auto co = StructCoalgebra<S>::from_entries(sp, comult, eps, field);
  return std::make_shared<const HopfAlgebra<S>>(make_hopf<S>(std::move(alg), std::move(co)));
}

/// R_λ = ½(1⊗1 + 1⊗g + g⊗1 - g⊗g) + (λ/2)(x⊗x - x⊗gx + gx⊗gx + gx⊗x).
template <class S>
TensorElement<S> r_lambda(const HopfAlgebra<S>& h, const S& lambda) {
  const auto& field = h.field();
  const S half = field.template make<S>(1, 2);
  const S l = half * lambda;
  TensorElement<S> r({h.space(), h.space()}, field);
  auto put = [&](Index a, Index b, const S& v) { r.add_flat(a * 4 + b, v); };
  put(0, 0, half);
  put(0, 1, half);
  put(1, 0, half);
  put(1, 1, -half);
  put(2, 2, l);
  put(2, 3, -l);
  put(3, 3, l);
  put(3, 2, l);
  return r;
}

template <class S>
RMatrixPtr<S> trivial_rmatrix(const HopfPtr<S>& h) {
  return std::make_shared<const RMatrix<S>>(h, h->unit_tensor(2));
}

/// Index of δ_x y in D(G).
inline Index double_index(const FiniteGroup& g, int x, int y) { return static_cast<Index>(x) * g.order() + y; }

/// D(G) on the basis δ_x y, with R = Σ δ_g e ⊗ δ_x g.
template <class S>
std::pair<HopfPtr<S>, RMatrixPtr<S>> drinfeld_double_group(const FiniteGroup& g, const FieldSpec& field) {
  const int n = g.order();
  const Index dim = static_cast<Index>(n) * n;
  const S one = field.template make<S>(1);
  const int e = g.identity();
  std::vector<std::string> labels;
  std::vector<typename StructAlgebra<S>::Entry> mult;
  std::vector<typename StructCoalgebra<S>::Entry> comult;
  Vector<S> unit = zero_vector<S>(dim, field), eps = zero_vector<S>(dim, field);
  Matrix<S> s = zeros<S>(dim, dim, field);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      labels.push_back("δ_" + g.label(x) + "·" + g.label(y));
      const Index i = double_index(g, x, y);
      for (int y2 = 0; y2 < n; ++y2) {
        // (δ_x y)(δ_{x'} y') is nonzero only for x' = y⁻¹ x y.
        const int x2 = g.mul(g.mul(g.inv(y), x), y);
        mult.emplace_back(i, double_index(g, x2, y2), double_index(g, x, g.mul(y, y2)), one);
      }
      for (int a = 0; a < n; ++a) {
        const int b = g.mul(g.inv(a), x);
        comult.emplace_back(i, double_index(g, a, y), double_index(g, b, y), one);
      }
      if (x == e) eps(i) = one;
      const int yi = g.inv(y);
      s(double_index(g, g.mul(g.mul(yi, g.inv(x)), y), yi), i) = one;
    }
    unit(double_index(g, x, e)) = one;
  }
  BasedSpace sp(labels);
  auto alg = StructAlgebra<S>::from_entries(sp, mult, unit, field);
  auto co = StructCoalgebra<S>::from_entries(sp, comult, eps, field);
  auto h = std::make_shared<const HopfAlgebra<S>>(make_hopf<S>(std::move(alg), std::move(co), MapMatrix<S>(sp, sp, s, field)));
  TensorElement<S> r({sp, sp}, field);
  for (int a = 0; a < n; ++a) {
    for (int x = 0; x < n; ++x) r.add_flat(double_index(g, a, e) * dim + double_index(g, x, a), one);
  }
  return {h, std::make_shared<const RMatrix<S>>(h, std::move(r))};
}

/// (H, Δ) as a comodule algebra over itself.
template <class S>
ComodulePtr<S> regular_comodule(const HopfPtr<S>& h) {
  return std::make_shared<const ComoduleAlgebra<S>>(h, h->alg(), h->coalg().comult());
}

/// The ground field with δ(1) = 1 ⊗ 1.
template <class S>
ComodulePtr<S> scalar_comodule(const HopfPtr<S>& h) {
  const auto& field = h->field();
  std::vector<typename StructAlgebra<S>::Entry> m{{0, 0, 0, field.template make<S>(1)}};
  auto a = StructAlgebra<S>::from_entries(BasedSpace({"1"}), m, basis_vector<S>(1, 0, field), field);
  return std::make_shared<const ComoduleAlgebra<S>>(h, std::move(a), std::vector<SparseVec<S>>{sparse_of(h->alg().unit())});
}

/// B with δ(b) = 1 ⊗ b.
template <class S>
ComodulePtr<S> trivial_coaction(const HopfPtr<S>& h, StructAlgebra<S> b) {
  const Index nb = b.dim();
  std::vector<SparseVec<S>> co(static_cast<std::size_t>(nb));
  for (Index j = 0; j < nb; ++j) {
    for (Index i = 0; i < h->dim(); ++i) {
      if (!is_zero(h->alg().unit()(i))) co[static_cast<std::size_t>(j)].emplace_back(i * nb + j, h->alg().unit()(i));
    }
  }
  return std::make_shared<const ComoduleAlgebra<S>>(h, std::move(b), std::move(co));
}

/// 𝕜G' ⊆ 𝕜G with δ the restricted coproduct; h must be group_algebra(g).
template <class S>
ComodulePtr<S> subgroup_comodule(const HopfPtr<S>& h, const FiniteGroup& g, const std::vector<int>& elements) {
  const auto& field = h->field();
  const S one = field.template make<S>(1);
  auto sub = g.restrict_to(elements, "sub");
  const Index m = sub.order();
  std::vector<typename StructAlgebra<S>::Entry> mult;
  std::vector<SparseVec<S>> co(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) mult.emplace_back(a, b, sub.mul(a, b), one);
    co[static_cast<std::size_t>(a)].emplace_back(static_cast<Index>(elements[static_cast<std::size_t>(a)]) * m + a, one);
  }
  auto alg = StructAlgebra<S>::from_entries(BasedSpace(sub.labels()), mult, basis_vector<S>(m, sub.identity(), field), field);
  return std::make_shared<const ComoduleAlgebra<S>>(h, std::move(alg), std::move(co));
}

template <class S>
TensorElement<S> unit_kmatrix(const ComoduleAlgebra<S>& c) {
  return tensor_unit(c.slots_hb());
}

template <class S>
struct ReflectiveAlgebraData {
  ComodulePtr<S> base;
  StructCoalgebra<S> hat_coalgebra;
  ComodulePtr<S> crossed;
  KMatrixPtr<S> kmatrix;
};

namespace detail {

template <class S>
SparseVec<S> unit_of(const FieldSpec& field, Index i) {
  return {{i, field.template make<S>(1)}};
}

inline void require(const Verdict& v, const std::string& what) {
  if (!v) throw InvalidStructure(what + ": " + v.describe());
}

}  // namespace detail

/// R_H(A) = A ⋊ (Ĥ*)ᵒᵖ with its coaction and K_ref = h_k ⊗ h^k, verified.
///
/// Basis element a ⊗ h^k has index a * dim H + k.
template <class S>
ReflectiveAlgebraData<S> reflective_algebra(const RMatrixPtr<S>& rp, const ComodulePtr<S>& a) {
  const auto& h = rp->host();
  const auto& field = h.field();
  const auto& ha = h.alg();
  const Index n = h.dim(), na = a->dim(), nr = na * n;
  auto e = [&](Index i) { return detail::unit_of<S>(field, i); };
  auto mul3 = [&](Index x, const SparseVec<S>& y, const SparseVec<S>& z) { return ha.multiply(ha.multiply(e(x), y), z); };
  const auto& rt = rp->element().terms();

  // Δ̂(h) = R^j h_(1) R^i ⊗ h_(2) R_i S⁻¹(R_j), with R = R_i ⊗ R^i.
  std::vector<SparseVec<S>> hat(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    Accumulator<S> acc(n * n, field);
    for (const auto& [pq, cd] : h.coalg().coproduct(k)) {
      const Index p = pq / n, q = pq % n;
      for (const auto& [ab, r1] : rt) {
        const Index ia = ab / n, ib = ab % n;
        for (const auto& [cdf, r2] : rt) {
          const Index jc = cdf / n, jd = cdf % n;
          auto left = mul3(jd, e(p), e(ib));
          auto right = mul3(q, e(ia), h.antipode_inverse_of(jc));
          for (const auto& [l, x] : left) {
            for (const auto& [m, y] : right) acc.add(l * n + m, cd * r1 * r2 * x * y);
          }
        }
      }
    }
    hat[static_cast<std::size_t>(k)] = acc.take();
  }
  StructCoalgebra<S> hat_co(h.space(), hat, h.coalg().counit(), field);
  detail::require(check_coalgebra(hat_co), "reflective algebra: hat coproduct");

  // ⟨h^a ↼ ℓ, h_k⟩ = ⟨h^a, ℓ_(2) h_k S⁻¹(ℓ_(1))⟩; harpoon[ℓ][a] is h^a ↼ ℓ.
  std::vector<std::vector<SparseVec<S>>> harpoon(static_cast<std::size_t>(n), std::vector<SparseVec<S>>(static_cast<std::size_t>(n)));
  for (Index l = 0; l < n; ++l) {
    std::vector<std::vector<std::pair<Index, S>>> raw(static_cast<std::size_t>(n));
    for (Index k = 0; k < n; ++k) {
      Accumulator<S> acc(n, field);
      for (const auto& [pq, c] : h.coalg().coproduct(l)) {
        for (const auto& [i, x] : mul3(pq % n, e(k), h.antipode_inverse_of(pq / n))) acc.add(i, c * x);
      }
      for (const auto& [i, x] : acc.take()) raw[static_cast<std::size_t>(i)].emplace_back(k, x);
    }
    for (Index i = 0; i < n; ++i) harpoon[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)] = std::move(raw[static_cast<std::size_t>(i)]);
  }

  // (Ĥ*)ᵒᵖ: h^a ·op h^b = Σ_k Δ̂(h_k)[b][a] h^k.
  std::vector<std::vector<std::pair<Index, S>>> op_raw(static_cast<std::size_t>(n * n));
  for (Index k = 0; k < n; ++k) {
    for (const auto& [f, c] : hat[static_cast<std::size_t>(k)]) op_raw[static_cast<std::size_t>((f % n) * n + f / n)].emplace_back(k, c);
  }
  auto op_prod = [&](Index x, Index y) -> const SparseVec<S>& { return op_raw[static_cast<std::size_t>(x * n + y)]; };

  // (a ⊗ f)(a' ⊗ f') = a a'_[0] ⊗ (f ↼ a'_[-1]) ·op f'
  const auto& aa = a->alg();
  std::vector<SparseVec<S>> table(static_cast<std::size_t>(nr * nr));
  for (Index i = 0; i < nr; ++i) {
    const Index a1 = i / n, f1 = i % n;
    for (Index j = 0; j < nr; ++j) {
      const Index a2 = j / n, f2 = j % n;
      Accumulator<S> acc(nr, field);
      for (const auto& [t, c] : a->coaction(a2)) {
        const Index hh = t / na, a3 = t % na;
        const auto& moved = harpoon[static_cast<std::size_t>(hh)][static_cast<std::size_t>(f1)];
        for (const auto& [x, cx] : aa.product(a1, a3)) {
          for (const auto& [k, ck] : moved) {
            for (const auto& [l, cl] : op_prod(k, f2)) acc.add(x * n + l, c * cx * ck * cl);
          }
        }
      }
      table[static_cast<std::size_t>(i * nr + j)] = acc.take();
    }
  }
  std::vector<std::string> labels;
  for (Index i = 0; i < na; ++i) {
    for (Index k = 0; k < n; ++k) labels.push_back(aa.space().label(i) + "⊗" + h.space().label(k) + "^*");
  }
  BasedSpace sp(labels);
  Vector<S> unit = zero_vector<S>(nr, field);
  for (Index i = 0; i < na; ++i) {
    for (Index k = 0; k < n; ++k) unit(i * n + k) = aa.unit()(i) * h.coalg().counit()(k);
  }
  StructAlgebra<S> crossed_alg(sp, std::move(table), unit, field);
  detail::require(check_algebra(crossed_alg), "reflective algebra: product");

  // δ_ref(h^m) = ⟨h^m, R^j h_k R_i⟩ R_j R^i ⊗ h^k, over H ⊗ Ĥ*.
  std::vector<Accumulator<S>> dual_acc;
  for (Index m = 0; m < n; ++m) dual_acc.emplace_back(n * n, field);
  for (Index k = 0; k < n; ++k) {
    for (const auto& [ab, r1] : rt) {
      const Index ia = ab / n, ib = ab % n;
      for (const auto& [cdf, r2] : rt) {
        const Index jc = cdf / n, jd = cdf % n;
        auto pairing = mul3(jd, e(k), e(ia));
        auto front = ha.product(jc, ib);
        for (const auto& [m, x] : pairing) {
          for (const auto& [hh, y] : front) dual_acc[static_cast<std::size_t>(m)].add(hh * n + k, r1 * r2 * x * y);
        }
      }
    }
  }
  std::vector<SparseVec<S>> dual_coaction;
  for (auto& acc : dual_acc) dual_coaction.push_back(acc.take());
  // δ_ref(a ⊗ f) = a_[-1] H_j ⊗ a_[0] ⊗ F_j where δ_ref(f) = H_j ⊗ F_j.
  std::vector<SparseVec<S>> coaction(static_cast<std::size_t>(nr));
  for (Index i = 0; i < nr; ++i) {
    const Index a1 = i / n, f1 = i % n;
    Accumulator<S> acc(n * nr, field);
    for (const auto& [t, c] : a->coaction(a1)) {
      const Index hh = t / na, a3 = t % na;
      for (const auto& [u, d] : dual_coaction[static_cast<std::size_t>(f1)]) {
        for (const auto& [x, cx] : ha.product(hh, u / n)) acc.add(x * nr + a3 * n + u % n, c * d * cx);
      }
    }
    coaction[static_cast<std::size_t>(i)] = acc.take();
  }
  auto crossed = std::make_shared<const ComoduleAlgebra<S>>(rp->host_ptr(), std::move(crossed_alg), std::move(coaction));
  detail::require(check_comodule_algebra(*crossed), "reflective algebra: coaction");

  TensorElement<S> k({h.space(), sp}, field);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < na; ++i) {
      if (!is_zero(aa.unit()(i))) k.add_flat(j * nr + i * n + j, aa.unit()(i));
    }
  }
  auto km = std::make_shared<const KMatrix<S>>(crossed, rp, std::move(k));
  detail::require(check_k_matrix(*km), "reflective algebra: K-matrix");
  return {a, std::move(hat_co), std::move(crossed), std::move(km)};
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

template <class S>
void verify_bundle(const Bundle<S>& b) {
  require(check_hopf(*b.hopf), b.name + ": Hopf algebra");
  if (b.rmatrix) require(check_r_matrix(*b.rmatrix), b.name + ": R-matrix");
  if (b.comodule) require(check_comodule_algebra(*b.comodule), b.name + ": comodule algebra");
  if (b.kmatrix) require(check_k_matrix(*b.kmatrix), b.name + ": K-matrix");
}

template <class S>
Bundle<S> with_regular_comodule(std::string name, HopfPtr<S> h, RMatrixPtr<S> r) {
  auto c = regular_comodule(h);
  auto k = std::make_shared<const KMatrix<S>>(c, r, monodromy(*r));
  return {std::move(name), h->field(), std::move(h), std::move(r), std::move(c), std::move(k)};
}

template <class S>
Bundle<S> build_example(const std::string& name, const FieldSpec& field) {
  auto parts = split(name, ':');
  const auto& kind = parts[0];
  auto arity = [&](std::size_t k) {
    if (parts.size() != k + 1) throw UnknownExample("example '" + name + "' expects " + std::to_string(k) + " argument(s)");
  };
  auto group = [&](const std::string& s) {
    try {
      return FiniteGroup::parse(s);
    } catch (const HopfError& err) {
      throw UnknownExample(err.what());
    }
  };
  if (kind == "regular") {
    arity(1);
    auto h = group_algebra<S>(group(parts[1]), field);
    return with_regular_comodule<S>(name, h, trivial_rmatrix(h));
  }
  if (kind == "dual") {
    arity(1);
    auto g = group(parts[1]);
    if (!g.is_abelian()) throw UnknownExample("dual:" + g.name() + ": functions on a nonabelian group admit no R-matrix");
    auto h = dual_group_algebra<S>(g, field);
    return with_regular_comodule<S>(name, h, trivial_rmatrix(h));
  }
  if (kind == "double") {
    arity(1);
    auto [h, r] = drinfeld_double_group<S>(group(parts[1]), field);
    return with_regular_comodule<S>(name, h, r);
  }
  if (kind == "sweedler") {
    arity(1);
    auto h = sweedler_h4<S>(field);
    S lambda = field.template make<S>(0);
    try {
      lambda = field.template parse_scalar<S>(parts[1]);
    } catch (const HopfError&) {
      throw UnknownExample("sweedler: bad parameter '" + parts[1] + "'");
    }
    return with_regular_comodule<S>(name, h, std::make_shared<const RMatrix<S>>(h, r_lambda(*h, lambda)));
  }
  if (kind == "subgroup") {
    arity(2);
    auto g = group(parts[1]);
    std::vector<int> sub;
    try {
      sub = g.subgroup(parts[2]);
    } catch (const HopfError& err) {
      throw UnknownExample(err.what());
    }
    auto h = group_algebra<S>(g, field);
    auto r = trivial_rmatrix(h);
    auto c = subgroup_comodule(h, g, sub);
    auto k = std::make_shared<const KMatrix<S>>(c, r, unit_kmatrix(*c));
    return {name, field, h, r, c, k};
  }
  if (kind == "reflective-trivial") {
    arity(1);
    auto [h, r] = drinfeld_double_group<S>(group(parts[1]), field);
    auto data = reflective_algebra(r, scalar_comodule(h));
    return {name, field, h, r, data.crossed, data.kmatrix};
  }
  if (kind == "trivial-coaction") {
    arity(1);
    auto h = group_algebra<S>(group(parts[1]), field);
    auto r = trivial_rmatrix(h);
    auto c = trivial_coaction(h, h->alg());
    auto k = std::make_shared<const KMatrix<S>>(c, r, unit_kmatrix(*c));
    return {name, field, h, r, c, k};
  }
  if (kind == "scalar") {
    // scalar:<example>: the same (H, R) with B = 𝕜 and K = 1 ⊗ 1.
    if (parts.size() < 2) throw UnknownExample("scalar: expects an inner example name");
    auto inner = build_example<S>(name.substr(kind.size() + 1), field);
    auto c = scalar_comodule(inner.hopf);
    auto k = std::make_shared<const KMatrix<S>>(c, inner.rmatrix, unit_kmatrix(*c));
    return {name, field, inner.hopf, inner.rmatrix, c, k};
  }
  throw UnknownExample("unknown example '" + name + "'");
}

}  // namespace detail

/// Registry: regular:<G>, dual:<G>, double:<G>, sweedler:<λ>, subgroup:<G>:<G'>,
/// reflective-trivial:<G>, trivial-coaction:<G>, scalar:<example>.
/// Every returned bundle has passed all applicable checkers.
template <class S>
Bundle<S> named_example(const std::string& name, const FieldSpec& field) {
  auto b = detail::build_example<S>(name, field);
  detail::verify_bundle(b);
  return b;
}

}  // namespace hopfq
