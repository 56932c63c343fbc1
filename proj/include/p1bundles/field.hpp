#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace p1b {

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(msg), code(std::move(c)) {}
};

// Field descriptor: characteristic 0 (arbitrary-precision rationals) or a
// prime p (F_p). A computation runs in one fixed field; mixing is an error.
struct Field {
  std::uint64_t p = 0;

  bool is_rational() const { return p == 0; }
  bool operator==(const Field&) const = default;
};

inline Field rationals() { return Field{0}; }
Field prime_field(std::uint64_t p);

// Default modulus for Monte-Carlo genericity runs.
inline constexpr std::uint64_t kDefaultChar = 32003;

Field field_of_char(std::uint64_t p);  // 0 -> rationals, else prime_field(p)

// Exact field element. Rational values are gcd-reduced with normalized sign
// (mpq canonical form); F_p values are residues in [0, p).
class Scalar {
 public:
  Scalar() : p_(0), q_(0) {}

  static Scalar zero(const Field& f);
  static Scalar one(const Field& f);
  static Scalar of_int(long v, const Field& f);
  static Scalar of_rational(const mpq_class& v, const Field& f);
  // Parses "a" or "a/b" (decimal, optional sign); reduced mod p over F_p.
  static Scalar parse(const std::string& text, const Field& f);

  Field field() const { return Field{p_}; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar inv() const;

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // F_p residue; only valid when the field is prime.
  std::uint64_t residue() const;
  // Rational value; only valid in characteristic 0.
  const mpq_class& rational() const;

  std::string str() const;

 private:
  Scalar(std::uint64_t p, std::uint64_t r) : p_(p), r_(r), q_(0) {}
  explicit Scalar(mpq_class q) : p_(0), q_(std::move(q)) {}
  void check_same(const Scalar& o) const;

  std::uint64_t p_;
  std::uint64_t r_ = 0;  // residue, used when p_ > 0
  mpq_class q_;          // value, used when p_ == 0
};

}  // namespace p1b
