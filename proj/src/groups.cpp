#include "hopfq/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hopfq {

FiniteGroup::FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<std::vector<int>> cayley)
    : name_(std::move(name)), labels_(std::move(labels)), cayley_(std::move(cayley)) {
  const int n = order();
  if (n == 0) throw HopfError("group must be nonempty");
  if (static_cast<int>(cayley_.size()) != n) throw HopfError("Cayley table has wrong size");
  for (const auto& row : cayley_) {
    if (static_cast<int>(row.size()) != n) throw HopfError("Cayley table has wrong size");
    for (int v : row) {
      if (v < 0 || v >= n) throw HopfError("Cayley table entry out of range");
    }
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw HopfError("group " + name_ + " has no identity");
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw HopfError("group " + name_ + " is not associative");
      }
    }
  }
  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[static_cast<std::size_t>(a)] = b;
    }
    if (inverse_[static_cast<std::size_t>(a)] < 0) throw HopfError("element " + label(a) + " has no inverse");
  }
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw HopfError("cyclic group order must be positive");
  std::vector<std::string> labels;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a) {
    labels.push_back(a == 0 ? "e" : a == 1 ? "g" : "g^" + std::to_string(a));
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  }
  return FiniteGroup("C" + std::to_string(n), std::move(labels), std::move(t));
}

namespace {

std::string cycle_label(const std::vector<int>& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      out += std::to_string(j + 1);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

}  // namespace

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 5) throw HopfError("symmetric groups are supported for 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int m = static_cast<int>(perms.size());
  std::vector<std::string> labels;
  for (const auto& q : perms) labels.push_back(cycle_label(q));
  std::vector<std::vector<int>> t(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      // (ab)(i) = a(b(i))
      std::vector<int> c(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return FiniteGroup("S" + std::to_string(n), std::move(labels), std::move(t));
}

FiniteGroup FiniteGroup::parse(const std::string& name) {
  if (name.size() >= 2 && (name[0] == 'C' || name[0] == 'S')) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(name.substr(1), &used);
      if (used + 1 != name.size()) n = 0;
    } catch (const std::exception&) {
      n = 0;
    }
    if (n > 0 && n <= 64) return name[0] == 'C' ? cyclic(n) : symmetric(n);
  }
  throw HopfError("unknown group '" + name + "' (expected C<n> or S<n>)");
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a) {
    for (int b = 0; b < order(); ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

std::vector<int> FiniteGroup::subgroup(const std::string& sub) const {
  if (sub == name_) {
    std::vector<int> all(static_cast<std::size_t>(order()));
    std::iota(all.begin(), all.end(), 0);
    return all;
  }
  if (sub.size() >= 2 && sub[0] == 'C') {
    int k = 0;
    try {
      k = std::stoi(sub.substr(1));
    } catch (const std::exception&) {
      k = 0;
    }
    for (int a = 0; a < order() && k > 0; ++a) {
      if (element_order(a) != k) continue;
      std::set<int> s;
      for (int x = identity_;; x = mul(x, a)) {
        s.insert(x);
        if (mul(x, a) == identity_) break;
      }
      return {s.begin(), s.end()};
    }
  }
  throw HopfError("group " + name_ + " has no subgroup named '" + sub + "'");
}

FiniteGroup FiniteGroup::restrict_to(const std::vector<int>& elements, std::string sub) const {
  const int m = static_cast<int>(elements.size());
  std::vector<std::string> labels;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a) {
    labels.push_back(label(elements[static_cast<std::size_t>(a)]));
    for (int b = 0; b < m; ++b) {
      int prod = mul(elements[static_cast<std::size_t>(a)], elements[static_cast<std::size_t>(b)]);
      auto it = std::find(elements.begin(), elements.end(), prod);
      if (it == elements.end()) throw HopfError("subset is not closed under multiplication");
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = static_cast<int>(it - elements.begin());
    }
  }
  return FiniteGroup(std::move(sub), std::move(labels), std::move(t));
}

}  // namespace hopfq
