#pragma once

#include <map>
#include <string>
#include <vector>

#include "p1bundles/binform.hpp"

namespace p1b {

// Sparse multivariate polynomial in the flattened coordinates of an ambient
// (block-major coordinate indexing). Used for ideal generators: quadrics,
// incidence bilinears, monomial-embedding binomials, sampled hypersurfaces.
class MPoly {
 public:
  explicit MPoly(const Field& f, int nvars) : field_(f), nvars_(nvars) {}

  static MPoly variable(const Field& f, int nvars, int index);
  static MPoly monomial(const Field& f, int nvars,
                        const std::vector<int>& exps, const Scalar& c);

  const Field& field() const { return field_; }
  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, Scalar>& terms() const { return terms_; }

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator*(const Scalar& c) const;
  MPoly operator-() const;
  bool operator==(const MPoly& o) const;

  MPoly derivative(int var) const;

  // Scaled so the leading (lex-smallest exponent) coefficient is 1.
  MPoly normalized() const;

  // Substitute coordinate forms; forms are indexed like the variables.
  BinForm eval_forms(const std::vector<BinForm>& coords) const;

  // Per-block total degree; throws unless every term agrees (multihomogeneous).
  std::vector<int> multidegree(const std::vector<int>& block_sizes) const;

  std::string str() const;

 private:
  void add_term(const std::vector<int>& e, const Scalar& c);

  Field field_;
  int nvars_;
  std::map<std::vector<int>, Scalar> terms_;
};

}  // namespace p1b
