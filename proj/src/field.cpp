#include "p1bundles/field.hpp"

namespace p1b {

namespace {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a == 0) throw Error("division-by-zero", "inverse of 0 in F_p");
  // extended Euclid on (a, p)
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p),
               new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

Field prime_field(std::uint64_t p) {
  if (p >= (1ull << 31) || !is_prime_u64(p))
    throw Error("bad-field", "characteristic must be a prime < 2^31, got " +
                                 std::to_string(p));
  return Field{p};
}

Field field_of_char(std::uint64_t p) {
  return p == 0 ? rationals() : prime_field(p);
}

Scalar Scalar::zero(const Field& f) {
  return f.is_rational() ? Scalar(mpq_class(0)) : Scalar(f.p, 0);
}

Scalar Scalar::one(const Field& f) {
  return f.is_rational() ? Scalar(mpq_class(1)) : Scalar(f.p, 1 % f.p);
}

Scalar Scalar::of_int(long v, const Field& f) {
  if (f.is_rational()) return Scalar(mpq_class(v));
  std::int64_t r = v % static_cast<std::int64_t>(f.p);
  if (r < 0) r += static_cast<std::int64_t>(f.p);
  return Scalar(f.p, static_cast<std::uint64_t>(r));
}

Scalar Scalar::of_rational(const mpq_class& v, const Field& f) {
  if (f.is_rational()) {
    mpq_class c = v;
    c.canonicalize();
    return Scalar(c);
  }
  mpz_class num = v.get_num(), den = v.get_den();
  mpz_class pz(static_cast<unsigned long>(f.p));
  mpz_class n = num % pz, d = den % pz;
  if (n < 0) n += pz;
  if (d < 0) d += pz;
  std::uint64_t nn = n.get_ui(), dd = d.get_ui();
  if (dd == 0) throw Error("division-by-zero", "denominator divisible by p");
  return Scalar(f.p, mulmod(nn, invmod(dd, f.p), f.p));
}

Scalar Scalar::parse(const std::string& text, const Field& f) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos)
      return of_rational(mpq_class(mpz_class(text)), f);
    mpq_class q(mpz_class(text.substr(0, slash)),
                mpz_class(text.substr(slash + 1)));
    q.canonicalize();
    return of_rational(q, f);
  } catch (const std::invalid_argument&) {
    throw Error("parse", "bad scalar literal: " + text);
  }
}

bool Scalar::is_zero() const { return p_ ? r_ == 0 : q_ == 0; }
bool Scalar::is_one() const { return p_ ? r_ == 1 % p_ : q_ == 1; }

void Scalar::check_same(const Scalar& o) const {
  if (p_ != o.p_)
    throw Error("field-mismatch", "mixing elements of different fields");
}

Scalar Scalar::operator-() const {
  if (p_ == 0) return Scalar(mpq_class(-q_));
  return Scalar(p_, r_ == 0 ? 0 : p_ - r_);
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  if (p_ == 0) {
    mpq_class r = q_ + o.q_;
    return Scalar(std::move(r));
  }
  std::uint64_t s = r_ + o.r_;
  if (s >= p_) s -= p_;
  return Scalar(p_, s);
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  if (p_ == 0) {
    mpq_class r = q_ - o.q_;
    return Scalar(std::move(r));
  }
  return Scalar(p_, r_ >= o.r_ ? r_ - o.r_ : r_ + p_ - o.r_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  if (p_ == 0) {
    mpq_class r = q_ * o.q_;
    return Scalar(std::move(r));
  }
  return Scalar(p_, mulmod(r_, o.r_, p_));
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error("division-by-zero", "inverse of zero");
  if (p_ == 0) return Scalar(mpq_class(1) / q_);
  return Scalar(p_, invmod(r_, p_));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

bool Scalar::operator==(const Scalar& o) const {
  check_same(o);
  return p_ ? r_ == o.r_ : q_ == o.q_;
}

std::uint64_t Scalar::residue() const {
  if (p_ == 0) throw Error("field-mismatch", "residue() on a rational");
  return r_;
}

const mpq_class& Scalar::rational() const {
  if (p_ != 0) throw Error("field-mismatch", "rational() on an F_p element");
  return q_;
}

std::string Scalar::str() const {
  return p_ ? std::to_string(r_) : q_.get_str();
}

}  // namespace p1b
