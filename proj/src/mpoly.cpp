#include "p1bundles/mpoly.hpp"

#include <sstream>

namespace p1b {

MPoly MPoly::variable(const Field& f, int nvars, int index) {
  std::vector<int> e(nvars, 0);
  e[index] = 1;
  return monomial(f, nvars, e, Scalar::one(f));
}

MPoly MPoly::monomial(const Field& f, int nvars, const std::vector<int>& exps,
                      const Scalar& c) {
  if (static_cast<int>(exps.size()) != nvars)
    throw Error("shape", "exponent vector length mismatch");
  MPoly p(f, nvars);
  p.add_term(exps, c);
  return p;
}

void MPoly::add_term(const std::vector<int>& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator-() const {
  MPoly r(field_, nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r(field_, nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      std::vector<int> e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  return r;
}

MPoly MPoly::operator*(const Scalar& c) const {
  MPoly r(field_, nvars_);
  if (c.is_zero()) return r;
  for (const auto& [e, cc] : terms_) r.terms_.emplace(e, cc * c);
  return r;
}

bool MPoly::operator==(const MPoly& o) const { return terms_ == o.terms_; }

MPoly MPoly::derivative(int var) const {
  MPoly r(field_, nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    std::vector<int> de = e;
    de[var] -= 1;
    r.add_term(de, c * Scalar::of_int(e[var], field_));
  }
  return r;
}

MPoly MPoly::normalized() const {
  if (terms_.empty()) return *this;
  return *this * terms_.begin()->second.inv();
}

BinForm MPoly::eval_forms(const std::vector<BinForm>& coords) const {
  if (static_cast<int>(coords.size()) != nvars_)
    throw Error("shape", "coordinate count mismatch");
  BinForm acc = BinForm::zero(field_);
  for (const auto& [e, c] : terms_) {
    BinForm term = BinForm::constant(c);
    for (int i = 0; i < nvars_ && !term.is_zero(); ++i)
      if (e[i] > 0) term = term * coords[i].pow(e[i]);
    if (term.is_zero()) continue;
    acc = acc.is_zero() ? term : acc + term;
  }
  return acc;
}

std::vector<int> MPoly::multidegree(const std::vector<int>& block_sizes) const {
  if (terms_.empty())
    throw Error("bad-arg", "multidegree of the zero polynomial");
  std::vector<int> out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::vector<int> md;
    int pos = 0;
    for (int bs : block_sizes) {
      int d = 0;
      for (int i = 0; i < bs; ++i) d += e[pos + i];
      pos += bs;
      md.push_back(d);
    }
    if (pos != nvars_) throw Error("shape", "block sizes mismatch");
    if (first) {
      out = md;
      first = false;
    } else if (md != out) {
      throw Error("bad-arg", "polynomial is not multihomogeneous");
    }
  }
  return out;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c.str();
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      out << "*x" << i;
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

}  // namespace p1b
