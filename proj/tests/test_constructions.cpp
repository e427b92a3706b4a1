#include <random>

#include "doctest.h"
#include "hopfq/constructions.hpp"
#include "reflective_oracle.hpp"

using namespace hopfq;

namespace {

const FieldSpec QQ = FieldSpec::rationals();
const FieldSpec GF101 = FieldSpec::prime(101);

template <class S>
void reflective_regression(const FiniteGroup& g, const FieldSpec& field) {
  auto [h, r] = drinfeld_double_group<S>(g, field);
  auto data = reflective_algebra(r, scalar_comodule(h));
  const auto& c = *data.crossed;
  REQUIRE(c.dim() == static_cast<Index>(g.order()) * g.order());
  auto bad = oracle::reflective_mismatches(g, *h, data);
  CHECK(bad.products == 0);
  CHECK(bad.coactions == 0);
  CHECK_FALSE(bad.kmatrix);

  auto s = h_simplicity(c);
  CHECK(s.kind == Simplicity<S>::Kind::Simple);
  CHECK(is_factorizable_comodule(*data.kmatrix));
}

}  // namespace

TEST_CASE("finite groups") {
  auto c4 = FiniteGroup::cyclic(4);
  CHECK(c4.order() == 4);
  CHECK(c4.is_abelian());
  CHECK(c4.element_order(1) == 4);
  CHECK(c4.mul(1, c4.inv(1)) == c4.identity());

  auto s3 = FiniteGroup::symmetric(3);
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.is_abelian());
  int transpositions = 0;
  for (int a = 0; a < 6; ++a) transpositions += s3.element_order(a) == 2;
  CHECK(transpositions == 3);
  CHECK(s3.subgroup("C3").size() == 3);
  CHECK(s3.subgroup("S3").size() == 6);
  CHECK(s3.subgroup("C1") == std::vector<int>{s3.identity()});
  CHECK_THROWS_AS(s3.subgroup("C4"), HopfError);
  CHECK(FiniteGroup::parse("S4").order() == 24);
  CHECK_THROWS_AS(FiniteGroup::parse("D4"), HopfError);

  // {0, 1} under addition mod 2 without 1 + 1 = 0 is not a group.
  CHECK_THROWS_AS(FiniteGroup("bad", {"0", "1"}, {{0, 1}, {1, 1}}), HopfError);
  CHECK_THROWS_AS(s3.restrict_to({s3.identity(), 1, 2}, "x"), HopfError);
}

TEST_CASE("group algebras, duals and coideal subalgebras") {
  for (auto* name : {"C1", "C2", "S3"}) {
    auto g = FiniteGroup::parse(name);
    auto h = group_algebra<Rational>(g, QQ);
    CHECK(h->dim() == g.order());
    CHECK(check_hopf(*h));
    CHECK(check_hopf(*dual_group_algebra<Rational>(g, QQ)));
  }
  auto s3 = FiniteGroup::symmetric(3);
  auto h = group_algebra<Zp>(s3, GF101);
  auto c = subgroup_comodule(h, s3, s3.subgroup("C3"));
  CHECK(c->dim() == 3);
  CHECK(check_comodule_algebra(*c));
  CHECK(check_k_matrix(KMatrix<Zp>(c, trivial_rmatrix(h), unit_kmatrix(*c))));
}

TEST_CASE("reflective algebra of D(G) over the ground field matches the closed formulas") {
  reflective_regression<Rational>(FiniteGroup::cyclic(2), QQ);
  reflective_regression<Rational>(FiniteGroup::cyclic(3), QQ);
  reflective_regression<Zp>(FiniteGroup::symmetric(3), GF101);
}

TEST_CASE("reflective algebras over nontrivial A") {
  auto h = group_algebra<Rational>(FiniteGroup::cyclic(2), QQ);
  auto r = trivial_rmatrix(h);
  auto data = reflective_algebra(r, regular_comodule(h));
  CHECK(data.crossed->dim() == 4);

  auto [d, rd] = drinfeld_double_group<Rational>(FiniteGroup::cyclic(2), QQ);
  auto dd = reflective_algebra(rd, regular_comodule(d));
  CHECK(dd.crossed->dim() == 16);
  CHECK(check_coalgebra(dd.hat_coalgebra));
}

TEST_CASE("K_ref is independent of the chosen basis") {
  // h_k ⊗ h^k = Σ (P e_k) ⊗ (P⁻ᵀ e^k) for any invertible P.
  const Index n = 4;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coin(-3, 3);
  Matrix<Rational> p;
  do {
    p = zeros<Rational>(n, n, QQ);
    for (Index a = 0; a < n; ++a) {
      for (Index b = 0; b < n; ++b) p(a, b) = Rational(coin(rng));
    }
  } while (rank(p, QQ) < n);
  MapMatrix<Rational> pm(BasedSpace::numbered("h", n), BasedSpace::numbered("h", n), p, QQ);
  Matrix<Rational> q = pm.inverse()->entries().transpose();
  Matrix<Rational> sum = zeros<Rational>(n, n, QQ);
  for (Index k = 0; k < n; ++k) sum += p.col(k) * q.col(k).transpose();
  CHECK(sum == identity<Rational>(n, QQ));

  auto [d, r] = drinfeld_double_group<Rational>(FiniteGroup::cyclic(2), QQ);
  auto data = reflective_algebra(r, scalar_comodule(d));
  // As an n×n coefficient matrix K_ref is the identity.
  Matrix<Rational> km = zeros<Rational>(n, n, QQ);
  for (const auto& [f, x] : data.kmatrix->element().terms()) km(f / n, f % n) = x;
  CHECK(km == identity<Rational>(n, QQ));
}

TEST_CASE("registry") {
  struct Case {
    const char* name;
    Index dim_h;
    Index dim_b;
  };
  for (auto [name, dh, db] :
       {Case{"regular:C2", 2, 2}, Case{"regular:S3", 6, 6}, Case{"dual:C3", 3, 3}, Case{"sweedler:0", 4, 4},
        Case{"sweedler:1", 4, 4}, Case{"double:C2", 4, 4}, Case{"double:C3", 9, 9}, Case{"subgroup:S3:C2", 6, 2},
        Case{"subgroup:S3:C3", 6, 3}, Case{"subgroup:C1:C1", 1, 1}, Case{"reflective-trivial:C2", 4, 4},
        Case{"reflective-trivial:C3", 9, 9}, Case{"trivial-coaction:C2", 2, 2}, Case{"scalar:regular:S3", 6, 1},
        Case{"scalar:sweedler:1/2", 4, 1}}) {
    CAPTURE(name);
    auto b = named_example<Rational>(name, QQ);
    CHECK(b.hopf->dim() == dh);
    CHECK(b.comodule->dim() == db);
    CHECK(b.name == name);
  }
  auto b = named_example<Zp>("double:S3", GF101);
  CHECK(b.hopf->dim() == 36);

  for (auto* bad : {"nothing", "regular", "regular:X9", "dual:S3", "subgroup:S3:C5", "sweedler:x", "double:C2:C2",
                    "scalar:double:C2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(named_example<Rational>(bad, QQ), HopfError);
  }
  CHECK_THROWS_AS(named_example<Rational>("dual:S3", QQ), UnknownExample);
  CHECK_THROWS_AS(named_example<Rational>("unknown:C2", QQ), UnknownExample);
}
