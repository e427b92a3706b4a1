#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include <Eigen/Core>

namespace hopfq {

class HopfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when values over different fields meet in one computation.
class FieldMismatch : public HopfError {
 public:
  using HopfError::HopfError;
};

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den);

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  Rational inverse() const;
  std::string to_string() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Residue modulo a prime p < 2^31.
///
/// A value built from a bare integer (as Eigen does for Zero()/Identity())
/// carries no modulus yet. It adopts the modulus of the first bound value it
/// meets; combining two bound values with different moduli throws.
class Zp {
 public:
  Zp() = default;
  Zp(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
  Zp(long n, std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  bool bound() const { return p_ != 0; }
  /// Representative in [0, p); requires a bound value or a nonnegative literal.
  std::uint32_t residue() const;
  /// Residue of this value modulo p (binding a literal if needed).
  std::uint32_t residue_mod(std::uint32_t p) const;

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  Zp inverse() const;
  std::string to_string() const;

  Zp& operator+=(const Zp& o);
  Zp& operator-=(const Zp& o);
  Zp& operator*=(const Zp& o);
  Zp& operator/=(const Zp& o) { return *this *= o.inverse(); }

  friend Zp operator+(Zp a, const Zp& b) { return a += b; }
  friend Zp operator-(Zp a, const Zp& b) { return a -= b; }
  friend Zp operator*(Zp a, const Zp& b) { return a *= b; }
  friend Zp operator/(Zp a, const Zp& b) { return a /= b; }
  friend Zp operator-(const Zp& a);
  friend bool operator==(const Zp& a, const Zp& b);
  friend bool operator!=(const Zp& a, const Zp& b) { return !(a == b); }

 private:
  static std::uint32_t common(const Zp& a, const Zp& b);
  void bind(std::uint32_t p);

  std::int64_t v_ = 0;
  std::uint32_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Zp& z);

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline bool is_zero(const Zp& z) { return z.is_zero(); }

/// The base field of a computation: the rationals or a prime field.
struct FieldSpec {
  enum class Kind { Q, GFp };
  Kind kind = Kind::Q;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint32_t p);
  /// Accepts "q", "Q", "gf:101", "GF(101)", "gfp:101".
  static FieldSpec parse(std::string_view text);

  std::uint32_t characteristic() const { return kind == Kind::Q ? 0 : p; }
  std::string name() const;

  /// Exact element n / d of this field; throws if d vanishes in the field.
  template <class S>
  S make(long n, long d = 1) const;
  template <class S>
  S make(const mpz_class& n, const mpz_class& d) const;
  /// Parses "n", "-n" or "n/d".
  template <class S>
  S parse_scalar(std::string_view text) const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

template <>
Rational FieldSpec::make<Rational>(long n, long d) const;
template <>
Zp FieldSpec::make<Zp>(long n, long d) const;
template <>
Rational FieldSpec::make<Rational>(const mpz_class& n, const mpz_class& d) const;
template <>
Zp FieldSpec::make<Zp>(const mpz_class& n, const mpz_class& d) const;

template <class S>
S FieldSpec::parse_scalar(std::string_view text) const {
  auto slash = text.find('/');
  mpz_class num, den(1);
  auto read = [](std::string_view s, mpz_class& out) {
    std::string str(s);
    if (str.empty() || out.set_str(str, 10) != 0) {
      throw HopfError("malformed coefficient '" + std::string(s) + "'");
    }
  };
  if (slash == std::string_view::npos) {
    read(text, num);
  } else {
    read(text.substr(0, slash), num);
    read(text.substr(slash + 1), den);
  }
  if (den == 0) throw HopfError("zero denominator in '" + std::string(text) + "'");
  return make<S>(num, den);
}

/// Checks that a value belongs to the given field (bound residues only).
void require_field(const Zp& z, const FieldSpec& field);
inline void require_field(const Rational&, const FieldSpec& field) {
  if (field.kind != FieldSpec::Kind::Q) throw FieldMismatch("rational value in " + field.name());
}

}  // namespace hopfq

namespace Eigen {

template <>
struct NumTraits<hopfq::Rational> : GenericNumTraits<hopfq::Rational> {
  using Real = hopfq::Rational;
  using NonInteger = hopfq::Rational;
  using Nested = hopfq::Rational;
  using Literal = hopfq::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<hopfq::Zp> : GenericNumTraits<hopfq::Zp> {
  using Real = hopfq::Zp;
  using NonInteger = hopfq::Zp;
  using Nested = hopfq::Zp;
  using Literal = hopfq::Zp;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
