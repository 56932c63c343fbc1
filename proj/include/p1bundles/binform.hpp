#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p1bundles/field.hpp"
#include "p1bundles/rng.hpp"

namespace p1b {

// Homogeneous binary form in s, t. Coefficient i is the coefficient of
// s^(deg-i) t^i (s-descending order, fixed everywhere). The zero form is a
// distinguished degree-free value and acts degree-polymorphically.
class BinForm {
 public:
  explicit BinForm(const Field& f) : field_(f) {}  // zero form
  BinForm(const Field& f, int degree, std::vector<Scalar> coeffs);

  static BinForm zero(const Field& f) { return BinForm(f); }
  // c * s^a t^b
  static BinForm monomial(const Field& f, int s_exp, int t_exp,
                          const Scalar& c);
  static BinForm monomial(const Field& f, int s_exp, int t_exp);
  static BinForm constant(const Scalar& c);
  static BinForm random(const Field& f, int degree, Rng& rng);

  const Field& field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  // Degree of a nonzero form; nullopt for the zero form.
  std::optional<int> degree() const;
  int degree_or(int fallback) const { return is_zero() ? fallback : deg_; }

  // Coefficient of s^(deg-i) t^i; zero for out-of-range i or the zero form.
  Scalar coeff(int i) const;
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  BinForm operator-() const;
  BinForm operator+(const BinForm& o) const;  // degrees must agree
  BinForm operator-(const BinForm& o) const;
  BinForm operator*(const BinForm& o) const;
  BinForm operator*(const Scalar& c) const;
  bool operator==(const BinForm& o) const;
  bool operator!=(const BinForm& o) const { return !(*this == o); }

  BinForm pow(int e) const;
  BinForm ds() const;  // formal d/ds
  BinForm dt() const;  // formal d/dt

  // Value at (s0, t0) != (0, 0).
  Scalar eval(const Scalar& s0, const Scalar& t0) const;

  // Quotient h with divisor * h == *this; throws "inexact-division".
  BinForm exact_div(const BinForm& divisor) const;
  bool divides_exactly(const BinForm& dividend) const;

  // Precomposition with (s,t) -> (a s + b t, c s + d t).
  BinForm compose(const Scalar& a, const Scalar& b, const Scalar& c,
                  const Scalar& d) const;

  // Scaled so the first nonzero coefficient is 1.
  BinForm monic() const;

  // Exponents of the exact s- and t-power factors.
  int s_multiplicity() const;
  int t_multiplicity() const;

  std::string str() const;  // human-readable, e.g. "s^2*t - 3*t^3"

 private:
  void normalize();

  Field field_;
  int deg_ = -1;
  std::vector<Scalar> coeffs_;  // empty iff zero form
};

// GCD, normalized monic; zero if both are zero.
BinForm form_gcd(const BinForm& a, const BinForm& b);

// Finds a projective root of f if one exists over the field (exhaustive for
// small p; root of a linear factor otherwise). Returns (s0, t0).
std::optional<std::pair<Scalar, Scalar>> find_projective_root(const BinForm& f);

}  // namespace p1b
