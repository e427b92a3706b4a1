#include "hopfq/linalg.hpp"

#include <unordered_set>

namespace hopfq {

namespace {

std::shared_ptr<const std::vector<std::string>> empty_labels() {
  static const auto empty = std::make_shared<const std::vector<std::string>>();
  return empty;
}

}  // namespace

BasedSpace::BasedSpace() : labels_(empty_labels()) {}

BasedSpace::BasedSpace(std::vector<std::string> labels) {
  std::unordered_set<std::string> seen;
  seen.reserve(labels.size());
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw SpaceMismatch("duplicate basis label '" + l + "'");
  }
  labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

BasedSpace BasedSpace::numbered(const std::string& prefix, Index n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
  return BasedSpace(std::move(labels));
}

BasedSpace BasedSpace::dual() const {
  std::vector<std::string> labels;
  labels.reserve(labels_->size());
  for (const auto& l : *labels_) labels.push_back(l + "^*");
  return BasedSpace(std::move(labels));
}

BasedSpace tensor(const BasedSpace& a, const BasedSpace& b) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(a.dim() * b.dim()));
  for (const auto& x : a.labels()) {
    for (const auto& y : b.labels()) labels.push_back(x + "⊗" + y);
  }
  return BasedSpace(std::move(labels));
}

void require_same(const BasedSpace& a, const BasedSpace& b, const char* what) {
  if (a != b) {
    throw SpaceMismatch(std::string(what) + ": spaces of dims " + std::to_string(a.dim()) + " and " +
                        std::to_string(b.dim()) + " have different bases");
  }
}

EliminationStats& elimination_stats() {
  static EliminationStats stats;
  return stats;
}

namespace detail {

Echelon<Zp> reduce_mod_p(const Matrix<Zp>& m, std::uint32_t p) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  const auto ucols = static_cast<std::size_t>(cols);
  std::vector<std::uint32_t> a(static_cast<std::size_t>(rows) * ucols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) a[static_cast<std::size_t>(i) * ucols + static_cast<std::size_t>(j)] = m(i, j).residue_mod(p);
  }
  auto row = [&](Index i) { return a.data() + static_cast<std::size_t>(i) * ucols; };
  auto inv = [p](std::uint32_t x) { return Zp(x, p).inverse().residue(); };

  std::vector<Index> pivots;
  std::vector<std::size_t> support;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index piv = -1;
    for (Index i = r; i < rows; ++i) {
      if (row(i)[c] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) std::swap_ranges(row(piv), row(piv) + cols, row(r));
    std::uint32_t* pr = row(r);
    const std::uint64_t s = inv(pr[c]);
    support.clear();
    for (Index j = c; j < cols; ++j) {
      if (pr[j] != 0) {
        pr[j] = static_cast<std::uint32_t>(pr[j] * s % p);
        support.push_back(static_cast<std::size_t>(j));
      }
    }
    for (Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      std::uint32_t* ri = row(i);
      const std::uint32_t f = ri[c];
      if (f == 0) continue;
      const std::uint64_t nf = p - f;
      for (auto j : support) ri[j] = static_cast<std::uint32_t>((ri[j] + nf * pr[j]) % p);
    }
    pivots.push_back(c);
    ++r;
  }

  Echelon<Zp> out;
  out.reduced.resize(r, cols);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < cols; ++j) out.reduced(i, j) = Zp(row(i)[j], p);
  }
  out.pivots = std::move(pivots);
  return out;
}

// Fraction-free forward elimination on integer rows, then exact back
// substitution over Q to reach the reduced form.
Echelon<Rational> reduce_bareiss(const Matrix<Rational>& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  std::vector<std::vector<mpz_class>> a(static_cast<std::size_t>(rows), std::vector<mpz_class>(static_cast<std::size_t>(cols)));
  for (Index i = 0; i < rows; ++i) {
    mpz_class lcm(1);
    for (Index j = 0; j < cols; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).value().get_den_mpz_t());
    auto& ri = a[static_cast<std::size_t>(i)];
    for (Index j = 0; j < cols; ++j) {
      const mpq_class& q = m(i, j).value();
      ri[static_cast<std::size_t>(j)] = q.get_num() * (lcm / q.get_den());
    }
  }

  std::vector<Index> pivots;
  mpz_class prev(1);
  mpz_class t;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    const auto uc = static_cast<std::size_t>(c);
    Index piv = -1;
    for (Index i = r; i < rows; ++i) {
      if (sgn(a[static_cast<std::size_t>(i)][uc]) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(r)]);
    const auto& pr = a[static_cast<std::size_t>(r)];
    for (Index i = r + 1; i < rows; ++i) {
      auto& ri = a[static_cast<std::size_t>(i)];
      for (Index j = c + 1; j < cols; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        t = pr[uc] * ri[uj];
        mpz_submul(t.get_mpz_t(), ri[uc].get_mpz_t(), pr[uj].get_mpz_t());
        mpz_divexact(ri[uj].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      ri[uc] = 0;
    }
    prev = pr[uc];
    pivots.push_back(c);
    ++r;
  }

  Echelon<Rational> out;
  out.reduced.resize(r, cols);
  std::vector<std::vector<mpq_class>> q(static_cast<std::size_t>(r), std::vector<mpq_class>(static_cast<std::size_t>(cols)));
  for (Index i = r - 1; i >= 0; --i) {
    auto& qi = q[static_cast<std::size_t>(i)];
    const auto& ai = a[static_cast<std::size_t>(i)];
    const auto pc = static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)]);
    for (std::size_t j = pc; j < static_cast<std::size_t>(cols); ++j) {
      qi[j] = mpq_class(ai[j], ai[pc]);
      qi[j].canonicalize();
    }
  }
  for (Index i = r - 1; i >= 0; --i) {
    const auto pc = static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)]);
    const auto& qi = q[static_cast<std::size_t>(i)];
    for (Index k = 0; k < i; ++k) {
      auto& qk = q[static_cast<std::size_t>(k)];
      if (sgn(qk[pc]) == 0) continue;
      const mpq_class f = qk[pc];
      for (std::size_t j = pc; j < static_cast<std::size_t>(cols); ++j) {
        if (sgn(qi[j]) != 0) qk[j] -= f * qi[j];
      }
    }
  }
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < cols; ++j) out.reduced(i, j) = Rational(q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  out.pivots = std::move(pivots);
  return out;
}

}  // namespace detail

}  // namespace hopfq
