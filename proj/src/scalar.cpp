#include "hopfq/scalar.hpp"

#include <cctype>
#include <limits>
#include <ostream>

namespace hopfq {

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw HopfError("zero denominator");
  q_.canonicalize();
}

Rational Rational::inverse() const {
  if (is_zero()) throw HopfError("division by zero in Q");
  return Rational(mpq_class(1) / q_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw HopfError("division by zero in Q");
  q_ /= o.q_;
  return *this;
}

std::string Rational::to_string() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

namespace {

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  auto r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp != 0) {
    if ((exp & 1U) != 0) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

constexpr std::int64_t kLiteralLimit = std::int64_t{1} << 40;

void check_literal(std::int64_t v) {
  if (v > kLiteralLimit || v < -kLiteralLimit) {
    throw HopfError("unbound GF(p) literal grew too large; bind it to a field first");
  }
}

}  // namespace

Zp::Zp(long n, std::uint32_t p) : v_(0), p_(p) {
  if (p < 2) throw HopfError("GF(p) modulus must be a prime >= 2");
  v_ = reduce(n, p);
}

std::uint32_t Zp::residue() const {
  if (p_ == 0 && v_ < 0) throw HopfError("negative unbound GF(p) literal has no residue");
  return static_cast<std::uint32_t>(v_);
}

std::uint32_t Zp::residue_mod(std::uint32_t p) const {
  if (p_ != 0 && p_ != p) throw FieldMismatch("GF(" + std::to_string(p_) + ") value used in GF(" + std::to_string(p) + ")");
  return p_ != 0 ? static_cast<std::uint32_t>(v_) : reduce(v_, p);
}

std::uint32_t Zp::common(const Zp& a, const Zp& b) {
  if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_) {
    throw FieldMismatch("mixing GF(" + std::to_string(a.p_) + ") and GF(" + std::to_string(b.p_) + ")");
  }
  return a.p_ != 0 ? a.p_ : b.p_;
}

void Zp::bind(std::uint32_t p) {
  if (p_ == 0 && p != 0) {
    v_ = reduce(v_, p);
    p_ = p;
  }
}

Zp& Zp::operator+=(const Zp& o) {
  auto p = common(*this, o);
  if (p == 0) {
    v_ += o.v_;
    check_literal(v_);
    return *this;
  }
  bind(p);
  auto s = static_cast<std::uint64_t>(v_) + o.residue_mod(p);
  v_ = static_cast<std::int64_t>(s >= p ? s - p : s);
  return *this;
}

Zp& Zp::operator-=(const Zp& o) {
  auto p = common(*this, o);
  if (p == 0) {
    v_ -= o.v_;
    check_literal(v_);
    return *this;
  }
  bind(p);
  auto r = o.residue_mod(p);
  v_ = v_ >= r ? v_ - r : v_ + p - r;
  return *this;
}

Zp& Zp::operator*=(const Zp& o) {
  auto p = common(*this, o);
  if (p == 0) {
    v_ *= o.v_;
    check_literal(v_);
    return *this;
  }
  bind(p);
  v_ = static_cast<std::int64_t>(static_cast<std::uint64_t>(v_) * o.residue_mod(p) % p);
  return *this;
}

Zp operator-(const Zp& a) {
  Zp r = a;
  if (r.p_ == 0) {
    r.v_ = -r.v_;
  } else if (r.v_ != 0) {
    r.v_ = r.p_ - r.v_;
  }
  return r;
}

bool operator==(const Zp& a, const Zp& b) {
  auto p = Zp::common(a, b);
  if (p == 0) return a.v_ == b.v_;
  return a.residue_mod(p) == b.residue_mod(p);
}

Zp Zp::inverse() const {
  if (p_ == 0) {
    if (v_ == 1 || v_ == -1) return *this;
    throw HopfError("cannot invert an unbound GF(p) literal");
  }
  if (v_ == 0) throw HopfError("division by zero in GF(" + std::to_string(p_) + ")");
  Zp r;
  r.p_ = p_;
  r.v_ = pow_mod(static_cast<std::uint64_t>(v_), p_ - 2, p_);
  return r;
}

std::string Zp::to_string() const { return std::to_string(v_); }

std::ostream& operator<<(std::ostream& os, const Zp& z) { return os << z.to_string(); }

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p) || p >= (1U << 31)) {
    throw HopfError("GF(p) needs a prime p < 2^31, got " + std::to_string(p));
  }
  return {Kind::GFp, p};
}

FieldSpec FieldSpec::parse(std::string_view text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "q" || s == "qq" || s == "rationals") return rationals();
  std::string digits;
  if (s.rfind("gf:", 0) == 0) {
    digits = s.substr(3);
  } else if (s.rfind("gfp:", 0) == 0) {
    digits = s.substr(4);
  } else if (s.rfind("gf(", 0) == 0 && s.back() == ')') {
    digits = s.substr(3, s.size() - 4);
  } else {
    throw HopfError("unknown field '" + std::string(text) + "' (expected q or gf:<prime>)");
  }
  if (digits.empty() || digits.size() > 10 ||
      digits.find_first_not_of("0123456789") != std::string::npos) {
    throw HopfError("malformed prime in field '" + std::string(text) + "'");
  }
  auto value = std::stoull(digits);
  if (value > std::numeric_limits<std::uint32_t>::max()) throw HopfError("prime too large");
  return prime(static_cast<std::uint32_t>(value));
}

std::string FieldSpec::name() const {
  return kind == Kind::Q ? std::string("Q") : "GF(" + std::to_string(p) + ")";
}

template <>
Rational FieldSpec::make<Rational>(long n, long d) const {
  if (kind != Kind::Q) throw FieldMismatch("rational scalar requested for " + name());
  return Rational(mpz_class(n), mpz_class(d));
}

template <>
Rational FieldSpec::make<Rational>(const mpz_class& n, const mpz_class& d) const {
  if (kind != Kind::Q) throw FieldMismatch("rational scalar requested for " + name());
  return Rational(n, d);
}

template <>
Zp FieldSpec::make<Zp>(const mpz_class& n, const mpz_class& d) const {
  if (kind != Kind::GFp) throw FieldMismatch("GF(p) scalar requested for " + name());
  mpz_class pm(p);
  mpz_class nn = n % pm;
  mpz_class dd = d % pm;
  if (nn < 0) nn += pm;
  if (dd < 0) dd += pm;
  if (dd == 0) throw HopfError("denominator vanishes in " + name());
  Zp num(static_cast<long>(nn.get_ui()), p);
  Zp den(static_cast<long>(dd.get_ui()), p);
  return num / den;
}

template <>
Zp FieldSpec::make<Zp>(long n, long d) const {
  return make<Zp>(mpz_class(n), mpz_class(d));
}

void require_field(const Zp& z, const FieldSpec& field) {
  if (field.kind != FieldSpec::Kind::GFp) throw FieldMismatch("GF(p) value in " + field.name());
  if (z.bound() && z.modulus() != field.p) {
    throw FieldMismatch("GF(" + std::to_string(z.modulus()) + ") value in " + field.name());
  }
}

}  // namespace hopfq
