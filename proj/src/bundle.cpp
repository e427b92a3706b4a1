#include "hopfq/bundle.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hopfq {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw BundleError(where + ": " + what); }

void only_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed,
               const std::set<std::string>& required) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(where, "unknown key '" + key + "'");
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) fail(where, "missing key '" + key + "'");
  }
}

Index read_index(const json& v, Index bound, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "index must be an integer");
  const auto i = v.get<long long>();
  if (i < 0 || i >= bound) fail(where, "index " + std::to_string(i) + " out of range [0, " + std::to_string(bound) + ")");
  return static_cast<Index>(i);
}

template <class S>
S read_scalar(const json& v, const FieldSpec& field, const std::string& where) {
  try {
    if (v.is_number_integer()) return field.template make<S>(mpz_class(std::to_string(v.get<long long>())), mpz_class(1));
    if (v.is_number_unsigned()) return field.template make<S>(mpz_class(std::to_string(v.get<unsigned long long>())), mpz_class(1));
    if (v.is_string()) return field.template parse_scalar<S>(v.get<std::string>());
  } catch (const BundleError&) {
    throw;
  } catch (const HopfError& err) {
    fail(where, err.what());
  }
  fail(where, "coefficient must be an integer or a string \"p/q\"");
}

// Rows of a sparse list: arrays of `arity` indices followed by a coefficient.
template <class S, class F>
void each_row(const json& list, const std::string& where, const std::vector<Index>& bounds, const FieldSpec& field,
              F&& sink) {
  if (!list.is_array()) fail(where, "expected an array");
  for (std::size_t r = 0; r < list.size(); ++r) {
    const std::string at = where + "[" + std::to_string(r) + "]";
    const auto& row = list[r];
    if (!row.is_array() || row.size() != bounds.size() + 1) {
      fail(at, "expected " + std::to_string(bounds.size()) + " indices and a coefficient");
    }
    std::vector<Index> idx;
    for (std::size_t s = 0; s < bounds.size(); ++s) idx.push_back(read_index(row[s], bounds[s], at));
    sink(idx, read_scalar<S>(row[bounds.size()], field, at));
  }
}

template <class S>
SparseVec<S> collect(const std::map<Index, S>& m) {
  SparseVec<S> v;
  for (const auto& [i, x] : m) {
    if (!is_zero(x)) v.emplace_back(i, x);
  }
  return v;
}

BasedSpace read_space(const json& obj, Index n, const std::string& where) {
  if (!obj.contains("basis")) return BasedSpace::numbered("e", n);
  const auto& b = obj["basis"];
  if (!b.is_array() || static_cast<Index>(b.size()) != n) fail(where + ".basis", "expected " + std::to_string(n) + " labels");
  std::vector<std::string> labels;
  for (const auto& l : b) {
    if (!l.is_string()) fail(where + ".basis", "labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  return BasedSpace(std::move(labels));
}

Index read_dim(const json& obj, const std::string& where) {
  const auto& d = obj["dim"];
  if (!d.is_number_integer() || d.get<long long>() < 1) fail(where + ".dim", "dimension must be a positive integer");
  return static_cast<Index>(d.get<long long>());
}

template <class S>
Vector<S> read_vector(const json& list, Index n, const FieldSpec& field, const std::string& where) {
  Vector<S> v = zeros<S>(n, 1, field).col(0);
  each_row<S>(list, where, {n}, field, [&](const std::vector<Index>& i, const S& c) { v(i[0]) += c; });
  return v;
}

template <class S>
StructAlgebra<S> read_algebra(const json& obj, const BasedSpace& space, const FieldSpec& field, const std::string& where) {
  const Index n = space.dim();
  std::map<Index, std::map<Index, S>> acc;
  each_row<S>(obj["mult"], where + ".mult", {n, n, n}, field, [&](const std::vector<Index>& i, const S& c) {
    auto& slot = acc[i[0] * n + i[1]][i[2]];
    slot = slot + c;
  });
  std::vector<SparseVec<S>> table(static_cast<std::size_t>(n * n));
  for (const auto& [ij, m] : acc) table[static_cast<std::size_t>(ij)] = collect(m);
  return StructAlgebra<S>(space, std::move(table), read_vector<S>(obj["unit"], n, field, where + ".unit"), field);
}

template <class S>
LoadedBundle<S> read_typed(const json& doc, const FieldSpec& field, const std::string& name) {
  LoadedBundle<S> out;
  out.bundle.name = name;
  out.bundle.field = field;
  const auto& jh = doc["hopf"];
  only_keys(jh, "hopf", {"dim", "basis", "mult", "unit", "comult", "counit", "antipode"},
            {"dim", "mult", "unit", "comult", "counit"});
  const Index n = read_dim(jh, "hopf");
  auto space = read_space(jh, n, "hopf");
  try {
    auto alg = read_algebra<S>(jh, space, field, "hopf");
    std::map<Index, std::map<Index, S>> co;
    each_row<S>(jh["comult"], "hopf.comult", {n, n, n}, field, [&](const std::vector<Index>& i, const S& c) {
      auto& slot = co[i[0]][i[1] * n + i[2]];
      slot = slot + c;
    });
    std::vector<SparseVec<S>> comult(static_cast<std::size_t>(n));
    for (const auto& [i, m] : co) comult[static_cast<std::size_t>(i)] = collect(m);
    StructCoalgebra<S> coalg(space, std::move(comult), read_vector<S>(jh["counit"], n, field, "hopf.counit"), field);
    std::optional<MapMatrix<S>> antipode;
    if (jh.contains("antipode")) {
      Matrix<S> s = zeros<S>(n, n, field);
      each_row<S>(jh["antipode"], "hopf.antipode", {n, n}, field,
                  [&](const std::vector<Index>& i, const S& c) { s(i[0], i[1]) += c; });
      antipode = MapMatrix<S>(space, space, std::move(s), field);
    }
    try {
      out.bundle.hopf = std::make_shared<const HopfAlgebra<S>>(make_hopf<S>(std::move(alg), std::move(coalg), std::move(antipode)));
    } catch (const NoAntipode& err) {
      fail("hopf", std::string("no antipode given and none exists: ") + err.what());
    }
  } catch (const BundleError&) {
    throw;
  } catch (const HopfError& err) {
    fail("hopf", err.what());
  }
  const auto& h = out.bundle.hopf;

  if (doc.contains("rmatrix")) {
    out.has_rmatrix = true;
    std::map<Index, S> acc;
    each_row<S>(doc["rmatrix"], "rmatrix", {n, n}, field, [&](const std::vector<Index>& i, const S& c) {
      auto& slot = acc[i[0] * n + i[1]];
      slot = slot + c;
    });
    try {
      out.bundle.rmatrix = std::make_shared<const RMatrix<S>>(h, TensorElement<S>({space, space}, collect(acc), field));
    } catch (const NotInvertible& err) {
      out.rmatrix_error = std::string("R is not invertible: ") + err.what();
    }
  }

  if (doc.contains("comodule")) {
    const auto& jc = doc["comodule"];
    only_keys(jc, "comodule", {"dim", "basis", "mult", "unit", "coaction"}, {"dim", "mult", "unit", "coaction"});
    const Index nb = read_dim(jc, "comodule");
    auto bspace = read_space(jc, nb, "comodule");
    try {
      auto alg = read_algebra<S>(jc, bspace, field, "comodule");
      std::vector<std::map<Index, S>> acc(static_cast<std::size_t>(nb));
      each_row<S>(jc["coaction"], "comodule.coaction", {nb, n, nb}, field, [&](const std::vector<Index>& i, const S& c) {
        auto& slot = acc[static_cast<std::size_t>(i[0])][i[1] * nb + i[2]];
        slot = slot + c;
      });
      std::vector<SparseVec<S>> coaction;
      for (const auto& m : acc) coaction.push_back(collect(m));
      out.bundle.comodule = std::make_shared<const ComoduleAlgebra<S>>(h, std::move(alg), std::move(coaction));
    } catch (const BundleError&) {
      throw;
    } catch (const HopfError& err) {
      fail("comodule", err.what());
    }
  }

  if (doc.contains("kmatrix")) {
    out.has_kmatrix = true;
    if (!out.bundle.comodule) fail("kmatrix", "a K-matrix needs a comodule");
    if (!out.has_rmatrix) fail("kmatrix", "a K-matrix needs an R-matrix");
    const auto& c = out.bundle.comodule;
    const Index nb = c->dim();
    std::map<Index, S> acc;
    each_row<S>(doc["kmatrix"], "kmatrix", {n, nb}, field, [&](const std::vector<Index>& i, const S& x) {
      auto& slot = acc[i[0] * nb + i[1]];
      slot = slot + x;
    });
    if (!out.bundle.rmatrix) {
      out.kmatrix_error = "the R-matrix is unusable";
    } else {
      try {
        out.bundle.kmatrix = std::make_shared<const KMatrix<S>>(
            c, out.bundle.rmatrix, TensorElement<S>({space, c->space()}, collect(acc), field));
      } catch (const NotInvertible& err) {
        out.kmatrix_error = std::string("K is not invertible: ") + err.what();
      }
    }
  }
  return out;
}

FieldSpec read_field(const json& f) {
  if (f.is_string() && f.get<std::string>() == "Q") return FieldSpec::rationals();
  if (f.is_object() && f.size() == 1 && f.contains("GFp") && f["GFp"].is_number_integer()) {
    const auto p = f["GFp"].get<long long>();
    if (p < 2 || p >= (1LL << 31)) fail("field", "prime out of range");
    try {
      return FieldSpec::prime(static_cast<std::uint32_t>(p));
    } catch (const HopfError& err) {
      fail("field", err.what());
    }
  }
  fail("field", "expected \"Q\" or {\"GFp\": p}");
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

template <class S>
json coefficient(const S& x) {
  if constexpr (std::is_same_v<S, Rational>) {
    if (x.denominator() == 1 && x.numerator().fits_slong_p()) return x.numerator().get_si();
    return x.to_string();
  } else {
    return static_cast<long long>(x.residue());
  }
}

template <class S>
json sparse_vector(const Vector<S>& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) {
    if (!is_zero(v(i))) out.push_back({i, coefficient(v(i))});
  }
  return out;
}

template <class S>
json algebra_json(const StructAlgebra<S>& a) {
  const Index n = a.dim();
  json mult = json::array();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (const auto& [k, c] : a.product(i, j)) mult.push_back({i, j, k, coefficient(c)});
    }
  }
  return {{"dim", n}, {"basis", a.space().labels()}, {"mult", mult}, {"unit", sparse_vector(a.unit())}};
}

template <class S>
json tensor_json(const TensorElement<S>& t) {
  const Index m = t.factors()[1].dim();
  json out = json::array();
  for (const auto& [f, c] : t.terms()) out.push_back({f / m, f % m, coefficient(c)});
  return out;
}

// Objects one key per line; arrays of scalars on one line.
void pretty(const json& j, int depth, std::string& out) {
  const std::string pad(static_cast<std::size_t>(2 * depth + 2), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      out += pad + json(k).dump() + ": ";
      pretty(v, depth + 1, out);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += close + "}";
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& x) { return x.is_structured(); })) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      pretty(j[i], depth + 1, out);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += close + "]";
  } else {
    out += j.dump(-1, ' ', false);
  }
}

}  // namespace

AnyBundle parse_bundle(const std::string& text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    auto [line, col] = line_column(text, err.byte);
    std::string what = err.what();
    auto pos = what.find("parse error");
    throw BundleError(name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                      (pos == std::string::npos ? what : what.substr(pos)));
  }
  try {
    only_keys(doc, "bundle", {"field", "hopf", "rmatrix", "comodule", "kmatrix"}, {"field", "hopf"});
    auto field = read_field(doc["field"]);
    if (field.kind == FieldSpec::Kind::Q) return read_typed<Rational>(doc, field, name);
    return read_typed<Zp>(doc, field, name);
  } catch (const BundleError& err) {
    throw BundleError(name + ": " + err.what());
  }
}

AnyBundle load_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BundleError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_bundle(ss.str(), path);
}

template <class S>
std::string write_bundle(const Bundle<S>& b) {
  const auto& h = *b.hopf;
  const Index n = h.dim();
  json doc;
  if (b.field.kind == FieldSpec::Kind::Q) {
    doc["field"] = "Q";
  } else {
    doc["field"] = {{"GFp", b.field.p}};
  }
  json jh = algebra_json(h.alg());
  json comult = json::array();
  for (Index i = 0; i < n; ++i) {
    for (const auto& [jk, c] : h.coalg().coproduct(i)) comult.push_back({i, jk / n, jk % n, coefficient(c)});
  }
  jh["comult"] = comult;
  jh["counit"] = sparse_vector(h.coalg().counit());
  json s = json::array();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!is_zero(h.antipode()(i, j))) s.push_back({i, j, coefficient(h.antipode()(i, j))});
    }
  }
  jh["antipode"] = s;
  doc["hopf"] = jh;
  if (b.rmatrix) doc["rmatrix"] = tensor_json(b.rmatrix->element());
  if (b.comodule) {
    const auto& c = *b.comodule;
    const Index nb = c.dim();
    json jc = algebra_json(c.alg());
    json co = json::array();
    for (Index x = 0; x < nb; ++x) {
      for (const auto& [f, v] : c.coaction(x)) co.push_back({x, f / nb, f % nb, coefficient(v)});
    }
    jc["coaction"] = co;
    doc["comodule"] = jc;
  }
  if (b.kmatrix) doc["kmatrix"] = tensor_json(b.kmatrix->element());
  std::string out;
  pretty(doc, 0, out);
  return out + "\n";
}

template std::string write_bundle<Rational>(const Bundle<Rational>&);
template std::string write_bundle<Zp>(const Bundle<Zp>&);

}  // namespace hopfq
