#pragma once

#include <map>

#include "hopfq/constructions.hpp"

namespace hopfq::oracle {

// Closed formulas for R_{D(G)}(𝕜), with x δ_y at index x|G| + y:
//   (xδ_y)(x'δ_y') = [y' = y⁻¹x⁻¹yxy] (y⁻¹xyx'y⁻¹x⁻¹yx) δ_y
//   δ(xδ_y) = Σ_g δ_g (y⁻¹xy) ⊗ (g⁻¹xg) δ_{g⁻¹y}
//   K = Σ_{g,h} δ_g h ⊗ g δ_h
struct Mismatches {
  int products = 0;
  int coactions = 0;
  bool kmatrix = false;
  bool none() const { return products == 0 && coactions == 0 && !kmatrix; }
};

template <class S>
SparseVec<S> from_map(const std::map<Index, S>& m) {
  SparseVec<S> v;
  for (const auto& [i, x] : m) {
    if (!is_zero(x)) v.emplace_back(i, x);
  }
  return v;
}

template <class S>
Mismatches reflective_mismatches(const FiniteGroup& g, const HopfAlgebra<S>& h, const ReflectiveAlgebraData<S>& data) {
  const int n = g.order();
  const Index N = static_cast<Index>(n) * n;
  const auto& field = h.field();
  const S one = field.template make<S>(1);
  const auto& c = *data.crossed;
  Mismatches out;
  if (c.dim() != N) {
    out.products = out.coactions = 1;
    out.kmatrix = true;
    return out;
  }
  auto w = [&](std::initializer_list<int> word) {
    int acc = g.identity();
    for (int v : word) acc = g.mul(acc, v);
    return acc;
  };
  auto inv = [&](int a) { return g.inv(a); };
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int x2 = 0; x2 < n; ++x2) {
        for (int y2 = 0; y2 < n; ++y2) {
          SparseVec<S> expect;
          if (y2 == w({inv(y), inv(x), y, x, y})) {
            expect.emplace_back(double_index(g, w({inv(y), x, y, x2, inv(y), inv(x), y, x}), y), one);
          }
          if (!(c.alg().product(double_index(g, x, y), double_index(g, x2, y2)) == expect)) ++out.products;
        }
      }
      std::map<Index, S> m;
      for (int a = 0; a < n; ++a) {
        const Index f = double_index(g, a, w({inv(y), x, y})) * N + double_index(g, w({inv(a), x, a}), w({inv(a), y}));
        m[f] = m.count(f) ? m[f] + one : one;
      }
      if (!(c.coaction(double_index(g, x, y)) == from_map(m))) ++out.coactions;
    }
  }
  std::map<Index, S> k;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) k[double_index(g, a, b) * N + double_index(g, a, b)] = one;
  }
  out.kmatrix = !(data.kmatrix->element() == TensorElement<S>({h.space(), c.space()}, from_map(k), field));
  return out;
}

}  // namespace hopfq::oracle
