#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hopfq/bundle.hpp"
#include "hopfq/report.hpp"

using namespace hopfq;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

struct Input {
  std::string path;
  std::string example;
  std::string field;
  bool json = false;
};

void add_input(CLI::App* cmd, Input& in) {
  cmd->add_option("path", in.path, "bundle file (JSON)");
  cmd->add_option("--example", in.example, "named example, e.g. double:S3");
  cmd->add_option("--field", in.field, "q or gf:<p>; applies to --example, must match a file");
  cmd->add_flag("--json", in.json, "print the report as JSON");
}

template <class S>
LoadedBundle<S> wrap(Bundle<S> b) {
  LoadedBundle<S> out;
  out.has_rmatrix = b.rmatrix != nullptr;
  out.has_kmatrix = b.kmatrix != nullptr;
  out.bundle = std::move(b);
  return out;
}

AnyBundle example_bundle(const std::string& name, const FieldSpec& field) {
  try {
    if (field.kind == FieldSpec::Kind::Q) return wrap(named_example<Rational>(name, field));
    return wrap(named_example<Zp>(name, field));
  } catch (const UnknownExample&) {
    throw;
  } catch (const HopfError& err) {
    throw UnknownExample(name + ": " + err.what());
  }
}

AnyBundle resolve(const Input& in) {
  if (in.path.empty() == in.example.empty()) throw BundleError("give exactly one of a bundle path or --example");
  std::optional<FieldSpec> field;
  if (!in.field.empty()) field = FieldSpec::parse(in.field);
  if (!in.example.empty()) return example_bundle(in.example, field.value_or(FieldSpec::rationals()));
  auto b = load_bundle(in.path);
  if (field) {
    const auto& actual = std::visit([](const auto& x) -> const FieldSpec& { return x.bundle.field; }, b);
    if (!(actual == *field)) throw FieldMismatch(in.path + " is over " + actual.name() + ", not " + field->name());
  }
  return b;
}

std::string subject(const Input& in) { return in.example.empty() ? in.path : in.example; }

void emit(const Report& r, const Input& in) { std::cout << (in.json ? r.json() : r.text()); }

template <class V>
std::string vector_text(const V& v, const BasedSpace& space) {
  std::ostringstream os;
  bool first = true;
  for (Index i = 0; i < v.size(); ++i) {
    if (is_zero(v(i))) continue;
    os << (first ? "" : " + ") << "(" << v(i) << ")" << space.label(i);
    first = false;
  }
  return first ? "0" : os.str();
}

// Adds one verdict line per requested checker; true if all pass.
template <class S>
bool run_checks(const LoadedBundle<S>& lb, bool hopf, bool rmat, bool comod, bool kmat, Report& rep) {
  const auto& b = lb.bundle;
  bool ok = true;
  auto record = [&](const std::string& key, const Verdict& v) {
    rep.add(key, v.describe());
    ok = ok && v.pass;
  };
  if (hopf) record("hopf", check_hopf(*b.hopf));
  if (rmat) {
    if (lb.rmatrix_error) {
      record("rmatrix", Verdict::fail("R-matrix invertibility", {}, *lb.rmatrix_error));
    } else {
      record("rmatrix", check_r_matrix(*b.rmatrix));
    }
  }
  if (comod) record("comodule", check_comodule_algebra(*b.comodule));
  if (kmat) {
    if (lb.kmatrix_error) {
      record("kmatrix", Verdict::fail("K-matrix invertibility", {}, *lb.kmatrix_error));
    } else {
      record("kmatrix", check_k_matrix(*b.kmatrix));
    }
  }
  return ok;
}

template <class S>
void describe(const LoadedBundle<S>& lb, Report& rep) {
  const auto& b = lb.bundle;
  rep.add("field", b.field.name());
  rep.add("dim H", static_cast<long long>(b.hopf->dim()));
  if (b.comodule) rep.add("dim B", static_cast<long long>(b.comodule->dim()));
}

struct CheckFlags {
  bool hopf = false, rmatrix = false, comodule = false, kmatrix = false, all = false;
};

int cmd_check(const Input& in, CheckFlags f) {
  auto any = resolve(in);
  return std::visit(
      [&](const auto& lb) {
        const bool none = !(f.hopf || f.rmatrix || f.comodule || f.kmatrix);
        if (f.all || none) {
          f.hopf = true;
          f.rmatrix = lb.has_rmatrix;
          f.comodule = lb.bundle.comodule != nullptr;
          f.kmatrix = lb.has_kmatrix;
        }
        if (f.rmatrix && !lb.has_rmatrix) throw BundleError("bundle has no R-matrix");
        if (f.comodule && !lb.bundle.comodule) throw BundleError("bundle has no comodule algebra");
        if (f.kmatrix && !lb.has_kmatrix) throw BundleError("bundle has no K-matrix");
        Report rep("check");
        rep.add("bundle", subject(in));
        describe(lb, rep);
        bool ok = run_checks(lb, f.hopf, f.rmatrix, f.comodule, f.kmatrix, rep);
        rep.add("result", ok ? "PASS" : "FAIL");
        emit(rep, in);
        return ok ? kOk : kFailed;
      },
      any);
}

std::string verdict_line(Index rank, Index dim, bool good, const char* yes, const char* no) {
  return "rank " + std::to_string(rank) + " / dim " + std::to_string(dim) + ": " + (good ? yes : no);
}

int cmd_factorizable(const Input& in, const std::string& level) {
  if (level != "hopf" && level != "comodule" && level != "weak") throw BundleError("--level must be hopf, comodule or weak");
  auto any = resolve(in);
  return std::visit(
      [&](const auto& lb) {
        const auto& b = lb.bundle;
        Report rep("factorizable");
        rep.add("bundle", subject(in));
        describe(lb, rep);
        rep.add("level", level);
        const bool need_k = level != "hopf";
        if (!lb.has_rmatrix) throw BundleError("bundle has no R-matrix");
        if (need_k && !lb.has_kmatrix) throw BundleError("bundle has no K-matrix");
        if (!run_checks(lb, true, true, need_k, need_k, rep)) {
          rep.add("result", "FAIL");
          emit(rep, in);
          return kFailed;
        }
        const Index n = b.hopf->dim();
        if (level == "hopf") {
          auto d = drinfeld_map(*b.rmatrix);
          const Index r = d.matrix.rank();
          rep.add("triangular", is_triangular(*b.rmatrix));
          rep.add("verdict", verdict_line(r, n, r == n, "FACTORIZABLE", "NOT factorizable"));
        } else {
          const auto& k = *b.kmatrix;
          auto e = compute_end_space(k.comodule());
          auto th = theta_comodule(k, e);
          const Index r = th.rank();
          rep.add("dim E(H,B)", static_cast<long long>(e.dim()));
          rep.add("factorizable", r == n);
          if (level == "comodule") {
            rep.add("verdict", verdict_line(r, n, r == n, "FACTORIZABLE", "NOT factorizable"));
          } else {
            auto om = omega_copairing(k, e);
            rep.add("copairing invariance", om.invariance.describe());
            auto wf = weak_factorizability(k, e, om);
            rep.add("source dim", static_cast<long long>(wf.source_dim));
            rep.add("target dim", static_cast<long long>(wf.target_dim));
            rep.add("rank", static_cast<long long>(wf.rank));
            rep.add("weakly factorizable", wf.bijective);
            rep.add("verdict", std::string("source dim ") + std::to_string(wf.source_dim) + ", target dim " +
                                   std::to_string(wf.target_dim) + ", rank " + std::to_string(wf.rank) + ": " +
                                   (wf.bijective ? "WEAKLY FACTORIZABLE" : "NOT weakly factorizable"));
          }
        }
        emit(rep, in);
        return kOk;
      },
      any);
}

int cmd_simple(const Input& in) {
  auto any = resolve(in);
  return std::visit(
      [&](const auto& lb) {
        const auto& b = lb.bundle;
        if (!b.comodule) throw BundleError("bundle has no comodule algebra");
        Report rep("simple");
        rep.add("bundle", subject(in));
        describe(lb, rep);
        if (!run_checks(lb, true, false, true, false, rep)) {
          rep.add("result", "FAIL");
          emit(rep, in);
          return kFailed;
        }
        auto s = h_simplicity(*b.comodule);
        rep.add("verdict", s.name());
        if (!s.certificate.empty()) rep.add("certificate", s.certificate);
        if (s.witness.cols() > 0) {
          rep.add("witness dim", static_cast<long long>(s.witness.cols()));
          for (Index j = 0; j < s.witness.cols(); ++j) {
            rep.add("witness " + std::to_string(j), vector_text(s.witness.col(j), b.comodule->space()));
          }
        }
        emit(rep, in);
        return kOk;
      },
      any);
}

struct ConstructArgs {
  std::string kind, group, lambda = "0", out;
};

std::string example_name(const ConstructArgs& a) {
  if (a.kind == "sweedler") return "sweedler:" + a.lambda;
  if (a.group.empty()) throw BundleError("--kind " + a.kind + " needs --group");
  if (a.kind == "double") return "double:" + a.group;
  if (a.kind == "reflective") return "reflective-trivial:" + a.group;
  if (a.kind == "group") return "regular:" + a.group;
  if (a.kind == "dual") return "dual:" + a.group;
  throw BundleError("unknown --kind '" + a.kind + "' (double, reflective, group, dual, sweedler)");
}

int cmd_construct(Input in, const ConstructArgs& a) {
  if (!in.path.empty()) throw BundleError("construct takes no bundle path");
  if (in.example.empty()) {
    if (a.kind.empty()) throw BundleError("give --kind or --example");
    in.example = example_name(a);
  } else if (!a.kind.empty()) {
    throw BundleError("give only one of --kind and --example");
  }
  auto any = resolve(in);
  return std::visit(
      [&](const auto& lb) {
        auto text = write_bundle(lb.bundle);
        if (a.out.empty()) {
          std::cout << text;
          return kOk;
        }
        std::ofstream f(a.out, std::ios::binary);
        if (!f) throw BundleError(a.out + ": cannot write");
        f << text;
        Report rep("construct");
        rep.add("bundle", in.example);
        describe(lb, rep);
        rep.add("written", a.out);
        emit(rep, in);
        return kOk;
      },
      any);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with quasitriangular Hopf algebras and their comodule algebras"};
  app.require_subcommand(1);

  Input check_in, fact_in, simple_in, construct_in;
  CheckFlags flags;
  auto* check = app.add_subcommand("check", "run axiom checkers");
  add_input(check, check_in);
  check->add_flag("--hopf", flags.hopf);
  check->add_flag("--rmatrix", flags.rmatrix);
  check->add_flag("--comodule", flags.comodule);
  check->add_flag("--kmatrix", flags.kmatrix);
  check->add_flag("--all", flags.all);

  std::string level = "comodule";
  auto* fact = app.add_subcommand("factorizable", "decide factorizability");
  add_input(fact, fact_in);
  fact->add_option("--level", level, "hopf, comodule or weak");

  auto* simple = app.add_subcommand("simple", "decide H-simplicity of the comodule algebra");
  add_input(simple, simple_in);

  ConstructArgs cargs;
  auto* construct = app.add_subcommand("construct", "write a bundle for a standard example");
  add_input(construct, construct_in);
  construct->add_option("--kind", cargs.kind, "double, reflective, group, dual or sweedler");
  construct->add_option("--group", cargs.group, "C<n> or S<n>");
  construct->add_option("--lambda", cargs.lambda, "Sweedler parameter");
  construct->add_option("--out", cargs.out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*check) return cmd_check(check_in, flags);
    if (*fact) return cmd_factorizable(fact_in, level);
    if (*simple) return cmd_simple(simple_in);
    if (*construct) return cmd_construct(construct_in, cargs);
  } catch (const HopfError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
