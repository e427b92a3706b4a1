#include <random>

#include "doctest.h"
#include "hopfq/echelon.hpp"
#include "hopfq/tensor.hpp"

using namespace hopfq;

namespace {

const FieldSpec QQ = FieldSpec::rationals();

Matrix<Rational> qmat(std::initializer_list<std::initializer_list<long>> rows) {
  Matrix<Rational> m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (auto r : rows) {
    Index j = 0;
    for (auto v : r) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

// Textbook Gauss-Jordan on mpq_class, kept independent of the library code.
std::vector<std::vector<mpq_class>> naive_rref(std::vector<std::vector<mpq_class>> a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    mpq_class inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

// Group algebra of C2 with basis (e, g), built by hand.
template <class S>
StructAlgebra<S> c2_algebra(const FieldSpec& f) {
  BasedSpace sp({"e", "g"});
  std::vector<typename StructAlgebra<S>::Entry> m{
      {0, 0, 0, f.make<S>(1)}, {0, 1, 1, f.make<S>(1)}, {1, 0, 1, f.make<S>(1)}, {1, 1, 0, f.make<S>(1)}};
  Vector<S> unit = basis_vector<S>(2, 0, f);
  return StructAlgebra<S>::from_entries(sp, m, unit, f);
}

}  // namespace

TEST_CASE("scalars are exact and normalized") {
  Rational a(mpz_class(6), mpz_class(-4));
  CHECK(a.to_string() == "-3/2");
  CHECK((a * a.inverse()).is_one());
  auto f = FieldSpec::parse("gf:7");
  Zp x = f.make<Zp>(3);
  CHECK((x * x.inverse()).residue() == 1);
  CHECK(f.make<Zp>(-1).residue() == 6);
  CHECK(f.make<Zp>(1, 2).residue() == 4);
  CHECK_THROWS_AS(Zp(1, 5) + Zp(1, 7), FieldMismatch);
  CHECK_THROWS(FieldSpec::parse("gf:8"));
  CHECK(FieldSpec::parse("GF(101)") == FieldSpec::prime(101));
  CHECK(QQ.parse_scalar<Rational>("-4/6").to_string() == "-2/3");
  CHECK_THROWS(f.parse_scalar<Zp>("1/7"));
}

TEST_CASE("kernel examples") {
  SUBCASE("identity has trivial kernel") {
    MapMatrix<Rational> id = MapMatrix<Rational>::identity(BasedSpace::numbered("v", 3), QQ);
    CHECK(id.kernel().empty());
  }
  SUBCASE("zero map has the whole domain as kernel") {
    auto z = MapMatrix<Rational>::zero(BasedSpace::numbered("v", 3), BasedSpace::numbered("w", 2), QQ);
    auto k = z.kernel();
    REQUIRE(k.size() == 3);
    for (Index j = 0; j < 3; ++j) CHECK(k[static_cast<std::size_t>(j)] == basis_vector<Rational>(3, j, QQ));
  }
  SUBCASE("all-ones 2x2") {
    MapMatrix<Rational> m(BasedSpace::numbered("v", 2), BasedSpace::numbered("w", 2), qmat({{1, 1}, {1, 1}}), QQ);
    auto k = m.kernel();
    REQUIRE(k.size() == 1);
    CHECK(k[0](0) == -k[0](1));
    CHECK_FALSE(k[0](0).is_zero());
  }
}

TEST_CASE("fraction-free reduction agrees with naive Gauss-Jordan") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> val(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  std::uniform_int_distribution<int> size(1, 7);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = size(rng), cols = size(rng);
    Matrix<Rational> m(rows, cols);
    std::vector<std::vector<mpq_class>> raw(static_cast<std::size_t>(rows), std::vector<mpq_class>(static_cast<std::size_t>(cols)));
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        // Sprinkle zeros and repeated rows to exercise rank deficiency.
        long v = (trial % 3 == 0 && j % 2 == 0) ? 0 : val(rng);
        mpq_class q(v, den(rng));
        q.canonicalize();
        if (trial % 4 == 1 && i > 0) q = raw[0][static_cast<std::size_t>(j)] * 2;
        raw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = q;
        m(i, j) = Rational(q);
      }
    }
    auto expect = naive_rref(raw);
    auto got = row_reduce(m, QQ);
    REQUIRE(got.rank() == static_cast<Index>(expect.size()));
    for (Index i = 0; i < got.rank(); ++i) {
      for (Index j = 0; j < cols; ++j) CHECK(got.reduced(i, j).value() == expect[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }
}

TEST_CASE("rank of a matrix equals rank of its transpose") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<long> val(-2, 2);
  auto gf = FieldSpec::prime(5);
  for (int trial = 0; trial < 40; ++trial) {
    const Index rows = 1 + trial % 6, cols = 1 + (trial * 7) % 5;
    Matrix<Rational> q(rows, cols);
    Matrix<Zp> z(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) {
        long v = val(rng);
        q(i, j) = Rational(v);
        z(i, j) = gf.make<Zp>(v);
      }
    }
    CHECK(rank(q, QQ) == rank(Matrix<Rational>(q.transpose()), QQ));
    CHECK(rank(z, gf) == rank(Matrix<Zp>(z.transpose()), gf));
    auto k = kernel_basis(z, gf);
    CHECK(all_zero<Zp>(z * k));
    CHECK(rank(z, gf) + k.cols() == cols);
  }
}

TEST_CASE("sparse echelon agrees with dense elimination") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<long> val(-3, 3);
  auto gf = FieldSpec::prime(7);
  for (int trial = 0; trial < 30; ++trial) {
    const Index rows = 2 + trial % 5, cols = 1 + trial % 6;
    Matrix<Zp> z(rows, cols);
    std::vector<SparseVec<Zp>> sparse_rows;
    for (Index i = 0; i < rows; ++i) {
      SparseVec<Zp> r;
      for (Index j = 0; j < cols; ++j) {
        z(i, j) = gf.make<Zp>((i + j) % 3 == 0 ? 0 : val(rng));
        if (!z(i, j).is_zero()) r.emplace_back(j, z(i, j));
      }
      sparse_rows.push_back(r);
    }
    auto k = sparse_kernel(sparse_rows, cols, gf);
    CHECK(k.cols() == cols - rank(z, gf));
    CHECK(all_zero<Zp>(z * k));
    Vector<Zp> b = z * basis_vector<Zp>(cols, 0, gf);
    std::vector<SparseVec<Zp>> columns;
    for (Index j = 0; j < cols; ++j) columns.push_back(sparse_of(Vector<Zp>(z.col(j))));
    auto x = solve_sparse(columns, rows, sparse_of(b), gf);
    REQUIRE(x.has_value());
    CHECK(Vector<Zp>(z * *x) == b);
  }
}

TEST_CASE("subspace coordinates detect vectors outside the span") {
  Matrix<Rational> basis = qmat({{1, 0}, {1, 1}, {0, 1}});
  SubspaceCoords<Rational> sc(basis, QQ);
  Vector<Rational> v(3);
  v << Rational(2), Rational(5), Rational(3);
  auto c = sc.coords(v);
  REQUIRE(c);
  CHECK((*c)(0) == Rational(2));
  CHECK((*c)(1) == Rational(3));
  v(2) = Rational(4);
  CHECK_FALSE(sc.coords(v));
}

TEST_CASE("based spaces reject duplicate labels and mismatched composition") {
  CHECK_THROWS_AS(BasedSpace({"a", "a"}), SpaceMismatch);
  auto a = MapMatrix<Rational>::identity(BasedSpace({"x", "y"}), QQ);
  auto b = MapMatrix<Rational>::identity(BasedSpace({"x", "z"}), QQ);
  CHECK_THROWS_AS(compose(a, b), SpaceMismatch);
  CHECK(compose(a, a).is_identity());
}

TEST_CASE("leg embedding places units in the empty slots") {
  auto a = c2_algebra<Rational>(QQ);
  SlotAlgebras<Rational> s3{&a, &a, &a};
  TensorElement<Rational> r({a.space(), a.space()}, QQ);
  std::vector<Index> eg{0, 1}, gg{1, 1};
  r.add(eg, Rational(2));
  r.add(gg, Rational(-1));
  auto r13 = leg_embed(r, {0, 2}, s3);
  CHECK(r13.size() == 2);
  std::vector<Index> e_e_g{0, 0, 1}, g_e_g{1, 0, 1};
  CHECK(r13.coeff(e_e_g) == Rational(2));
  CHECK(r13.coeff(g_e_g) == Rational(-1));
  SlotAlgebras<Rational> s2{&a, &a};
  auto u = tensor_unit(s2);
  CHECK(leg_embed(u, {0, 1}, s2) == u);
  CHECK_THROWS_AS(leg_embed(r, {2, 0}, s3), SpaceMismatch);
}

TEST_CASE("slotwise products and inverses in kC2 ⊗ kC2") {
  auto a = c2_algebra<Rational>(QQ);
  SlotAlgebras<Rational> s2{&a, &a};
  TensorElement<Rational> eg({a.space(), a.space()}, QQ);
  std::vector<Index> idx{0, 1};
  eg.add(idx, Rational(1));
  auto sq = tensor_mult(eg, eg, s2);
  CHECK(sq == tensor_unit(s2));
  CHECK(tensor_mult(tensor_unit(s2), eg, s2) == eg);
  CHECK(tensor_invert(eg, s2) == eg);
  CHECK(tensor_invert(tensor_unit(s2), s2) == tensor_unit(s2));

  // e ⊗ (e + 2g) is invertible exactly when 3 is: (e + 2g)(e - 2g) = -3e.
  std::vector<Index> ee{0, 0};
  TensorElement<Rational> t({a.space(), a.space()}, QQ);
  t.add(ee, Rational(1));
  t.add(idx, Rational(2));
  auto tinv = tensor_invert(t, s2);
  CHECK(tensor_mult(t, tinv, s2) == tensor_unit(s2));
  CHECK(tinv.coeff(idx) == Rational(2) / Rational(3));

  TensorElement<Rational> zd({a.space(), a.space()}, QQ);
  zd.add(ee, Rational(1));
  zd.add(idx, Rational(1));
  CHECK_THROWS_AS(tensor_invert(zd, s2), NotInvertible);

  for (long p : {3L, 5L}) {
    auto gf = FieldSpec::prime(p);
    auto b = c2_algebra<Zp>(gf);
    SlotAlgebras<Zp> z2{&b, &b};
    TensorElement<Zp> w({b.space(), b.space()}, gf);
    w.add(ee, gf.make<Zp>(1));
    w.add(idx, gf.make<Zp>(2));
    if (p == 3) {
      CHECK_THROWS_AS(tensor_invert(w, z2), NotInvertible);
    } else {
      auto winv = tensor_invert(w, z2);
      CHECK(tensor_mult(w, winv, z2) == tensor_unit(z2));
      CHECK(tensor_mult(winv, w, z2) == tensor_unit(z2));
    }
  }
}

TEST_CASE("leg embedding commutes with products") {
  auto a = c2_algebra<Rational>(QQ);
  SlotAlgebras<Rational> s2{&a, &a}, s3{&a, &a, &a};
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> val(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    TensorElement<Rational> x({a.space(), a.space()}, QQ), y({a.space(), a.space()}, QQ);
    for (Index f = 0; f < 4; ++f) {
      x.add_flat(f, Rational(val(rng)));
      y.add_flat(f, Rational(val(rng)));
    }
    for (std::vector<Index> slots : {std::vector<Index>{0, 1}, {0, 2}, {1, 2}}) {
      CHECK(leg_embed(tensor_mult(x, y, s2), slots, s3) ==
            tensor_mult(leg_embed(x, slots, s3), leg_embed(y, slots, s3), s3));
    }
  }
}
