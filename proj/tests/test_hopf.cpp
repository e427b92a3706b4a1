#include "doctest.h"
#include "hopfq/constructions.hpp"

using namespace hopfq;

namespace {

const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec GF101 = FieldSpec::prime(101);

template <class S>
void smoke(const HopfAlgebra<S>& h) {
  // ε∘S = ε and S(1) = 1
  Vector<S> eps = h.coalg().counit();
  CHECK(Vector<S>(h.antipode().entries().transpose() * eps) == eps);
  CHECK(h.antipode().apply(h.alg().unit()) == h.alg().unit());
}

Matrix<Rational> sign_matrix(long s) {
  Matrix<Rational> m(1, 1);
  m(0, 0) = Rational(s);
  return m;
}

}  // namespace

TEST_CASE("algebra axioms on group algebras and perturbations") {
  auto c2 = FiniteGroup::cyclic(2);
  auto h = group_algebra<Rational>(c2, QQ);
  CHECK(check_algebra(h->alg()));

  // Any unital product on span(e, g) is k[g]/(g² - a - bg), so g·g := g
  // stays associative.
  auto table = h->alg().table();
  table[3] = {{1, Rational(1)}};
  CHECK(check_algebra(StructAlgebra<Rational>(h->space(), table, h->alg().unit(), QQ)));
  // Breaking a product in S3 does fail.
  auto s3 = FiniteGroup::symmetric(3);
  auto hs = group_algebra<Rational>(s3, QQ);
  auto t3 = hs->alg().table();
  t3[static_cast<std::size_t>(1 * 6 + 1)] = {{2, Rational(1)}};
  auto v3 = check_algebra(StructAlgebra<Rational>(hs->space(), t3, hs->alg().unit(), QQ));
  CHECK_FALSE(v3);
  CHECK(v3.axiom == "associativity");
  CHECK(v3.witness.size() == 4);

  CHECK_THROWS_AS(StructAlgebra<Rational>(BasedSpace(std::vector<std::string>{}), {}, Vector<Rational>(0), QQ),
                  InvalidStructure);
}

TEST_CASE("Hopf axioms for group algebras, duals and doubles") {
  auto s3 = FiniteGroup::symmetric(3);
  auto h = group_algebra<Rational>(s3, QQ);
  CHECK(check_hopf(*h));
  smoke(*h);
  for (int g = 0; g < 6; ++g) CHECK(h->antipode()(s3.inv(g), g) == Rational(1));

  auto d = dual_group_algebra<Rational>(s3, QQ);
  CHECK(check_hopf(*d));
  smoke(*d);

  auto [dc2, r] = drinfeld_double_group<Rational>(FiniteGroup::cyclic(2), QQ);
  CHECK(check_hopf(*dc2));
  smoke(*dc2);
  auto dd = dual_hopf(*dc2);
  CHECK(check_hopf(dd));
}

TEST_CASE("functions on C2 with a shifted counit fail") {
  auto c2 = FiniteGroup::cyclic(2);
  auto d = dual_group_algebra<Rational>(c2, QQ);
  Vector<Rational> at_g(2);
  at_g << Rational(0), Rational(1);
  StructCoalgebra<Rational> co(d->space(), d->coalg().comult(), at_g, QQ);
  HopfAlgebra<Rational> bad(d->alg(), co, d->antipode());
  auto v = check_hopf(bad);
  CHECK_FALSE(v);
  CHECK(v.axiom == "counit");
}

TEST_CASE("solving for the antipode") {
  auto s3 = FiniteGroup::symmetric(3);
  auto h = group_algebra<Rational>(s3, QQ);
  auto s = solve_antipode(h->alg(), h->coalg());
  CHECK(s == h->antipode());

  auto d = dual_group_algebra<Zp>(s3, GF101);
  auto sd = solve_antipode(d->alg(), d->coalg());
  for (int g = 0; g < 6; ++g) CHECK(sd(s3.inv(g), g).residue() == 1);

  auto sw = sweedler_h4<Rational>(QQ);
  auto ss = solve_antipode(sw->alg(), sw->coalg());
  // S(x) = -gx, S(gx) = x, and S² = -id on the skew generator.
  CHECK(ss(3, 2) == Rational(-1));
  CHECK(ss(2, 3) == Rational(1));
  CHECK_FALSE(compose(ss, ss).is_identity());
  CHECK(check_hopf(*sw));
  smoke(*sw);

  // A bialgebra without antipode: the monoid {1, 0} under multiplication.
  BasedSpace sp({"1", "z"});
  std::vector<StructAlgebra<Rational>::Entry> m{{0, 0, 0, Rational(1)}, {0, 1, 1, Rational(1)}, {1, 0, 1, Rational(1)},
                                                {1, 1, 1, Rational(1)}};
  std::vector<StructCoalgebra<Rational>::Entry> c{{0, 0, 0, Rational(1)}, {1, 1, 1, Rational(1)}};
  Vector<Rational> eps(2);
  eps << Rational(1), Rational(1);
  auto a = StructAlgebra<Rational>::from_entries(sp, m, basis_vector<Rational>(2, 0, QQ), QQ);
  auto co = StructCoalgebra<Rational>::from_entries(sp, c, eps, QQ);
  CHECK(check_bialgebra(a, co));
  CHECK_THROWS_AS(solve_antipode(a, co), NoAntipode);
}

TEST_CASE("double dual recovers the structure constants") {
  for (auto* name : {"C3", "S3"}) {
    auto g = FiniteGroup::parse(name);
    auto [h, r] = drinfeld_double_group<Zp>(g, GF101);
    auto dd = dual_hopf(dual_hopf(*h));
    CHECK(dd.alg().table() == h->alg().table());
    CHECK(dd.coalg().comult() == h->coalg().comult());
    CHECK(dd.antipode().entries() == h->antipode().entries());
  }
}

TEST_CASE("modules") {
  auto s3 = FiniteGroup::symmetric(3);
  auto h = group_algebra<Rational>(s3, QQ);
  CHECK(check_module(*h, regular_module(*h)));
  CHECK(check_module(*h, trivial_module(*h)));
  CHECK(check_module(*h, adjoint_module(*h)));

  auto sign = [&](bool broken) {
    std::vector<SparseMatrix<Rational>> act;
    for (int g = 0; g < 6; ++g) {
      // Transpositions are the elements of order 2.
      long s = s3.element_order(g) == 2 ? -1 : 1;
      if (broken && s3.label(g) == "(12)") s = 1;
      act.push_back(to_sparse(sign_matrix(s)));
    }
    return HModule<Rational>(BasedSpace({"s"}), act, QQ);
  };
  CHECK(check_module(*h, sign(false)));
  auto v = check_module(*h, sign(true));
  CHECK_FALSE(v);

  auto triv = trivial_module(*h);
  auto reg = regular_module(*h);
  auto t = module_tensor(*h, triv, reg);
  for (Index i = 0; i < 6; ++i) CHECK(sparse_equal(t.action(i), reg.action(i)));
  auto td = module_dual(*h, triv);
  for (Index i = 0; i < 6; ++i) CHECK(sparse_equal(td.action(i), triv.action(i)));
  CHECK(check_module(*h, module_dual(*h, reg)));

  // (X⊗Y)⊗Z and X⊗(Y⊗Z) have the same action matrices.
  auto sg = sign(false);
  auto l = module_tensor(*h, module_tensor(*h, reg, sg), reg);
  auto r = module_tensor(*h, reg, module_tensor(*h, sg, reg));
  for (Index i = 0; i < 6; ++i) CHECK(sparse_equal(l.action(i), r.action(i)));
}

TEST_CASE("regular ⊗ regular of kC2") {
  auto c2 = FiniteGroup::cyclic(2);
  auto h = group_algebra<Rational>(c2, QQ);
  auto reg = regular_module(*h);
  auto rr = module_tensor(*h, reg, reg);
  CHECK(check_module(*h, rr));
  // g acts by g⊗g: e⊗e <-> g⊗g and e⊗g <-> g⊗e.
  Matrix<Rational> expect = zeros<Rational>(4, 4, QQ);
  expect(3, 0) = expect(0, 3) = expect(2, 1) = expect(1, 2) = Rational(1);
  CHECK(to_dense(rr.action(1), QQ) == expect);
  CHECK(sparse_equal(rr.action(0), sparse_identity<Rational>(4, QQ)));
}

TEST_CASE("evaluation is a module map and coevaluation lands in invariants") {
  auto [d, r] = drinfeld_double_group<Rational>(FiniteGroup::cyclic(2), QQ);
  auto x = regular_module(*d);
  auto xs = module_dual(*d, x);
  auto ev = evaluation(x);
  auto lhs = module_tensor(*d, xs, x);
  auto one = trivial_module(*d);
  CHECK(is_module_map(*d, lhs, one, to_sparse(ev.entries())));
  auto coev = coevaluation(x);
  CHECK(is_module_map(*d, one, module_tensor(*d, x, xs), to_sparse(coev.entries())));
}
