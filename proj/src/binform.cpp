#include "p1bundles/binform.hpp"

#include <sstream>

namespace p1b {

BinForm::BinForm(const Field& f, int degree, std::vector<Scalar> coeffs)
    : field_(f), deg_(degree), coeffs_(std::move(coeffs)) {
  if (degree < 0) throw Error("bad-form", "negative degree");
  if (static_cast<int>(coeffs_.size()) != degree + 1)
    throw Error("bad-form", "coefficient count does not match degree");
  for (const Scalar& c : coeffs_)
    if (!(c.field() == field_))
      throw Error("field-mismatch", "form coefficient in the wrong field");
  normalize();
}

void BinForm::normalize() {
  for (const Scalar& c : coeffs_)
    if (!c.is_zero()) return;
  coeffs_.clear();
  deg_ = -1;
}

BinForm BinForm::monomial(const Field& f, int s_exp, int t_exp,
                          const Scalar& c) {
  if (s_exp < 0 || t_exp < 0) throw Error("bad-form", "negative exponent");
  if (c.is_zero()) return zero(f);
  int d = s_exp + t_exp;
  std::vector<Scalar> cs(d + 1, Scalar::zero(f));
  cs[t_exp] = c;
  return BinForm(f, d, std::move(cs));
}

BinForm BinForm::monomial(const Field& f, int s_exp, int t_exp) {
  return monomial(f, s_exp, t_exp, Scalar::one(f));
}

BinForm BinForm::constant(const Scalar& c) {
  if (c.is_zero()) return zero(c.field());
  return BinForm(c.field(), 0, {c});
}

BinForm BinForm::random(const Field& f, int degree, Rng& rng) {
  if (degree < 0) return zero(f);
  std::vector<Scalar> cs;
  cs.reserve(degree + 1);
  for (int i = 0; i <= degree; ++i) cs.push_back(rng.scalar(f));
  return BinForm(f, degree, std::move(cs));
}

std::optional<int> BinForm::degree() const {
  if (is_zero()) return std::nullopt;
  return deg_;
}

Scalar BinForm::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size()))
    return Scalar::zero(field_);
  return coeffs_[i];
}

BinForm BinForm::operator-() const {
  BinForm r = *this;
  for (Scalar& c : r.coeffs_) c = -c;
  return r;
}

BinForm BinForm::operator+(const BinForm& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (deg_ != o.deg_)
    throw Error("degree-mismatch", "adding forms of degrees " +
                                       std::to_string(deg_) + " and " +
                                       std::to_string(o.deg_));
  std::vector<Scalar> cs = coeffs_;
  for (int i = 0; i <= deg_; ++i) cs[i] += o.coeffs_[i];
  return BinForm(field_, deg_, std::move(cs));
}

BinForm BinForm::operator-(const BinForm& o) const { return *this + (-o); }

BinForm BinForm::operator*(const BinForm& o) const {
  if (is_zero() || o.is_zero()) return zero(field_);
  int d = deg_ + o.deg_;
  std::vector<Scalar> cs(d + 1, Scalar::zero(field_));
  for (int i = 0; i <= deg_; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (int j = 0; j <= o.deg_; ++j) cs[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return BinForm(field_, d, std::move(cs));
}

BinForm BinForm::operator*(const Scalar& c) const {
  if (is_zero() || c.is_zero()) return zero(field_);
  std::vector<Scalar> cs = coeffs_;
  for (Scalar& x : cs) x *= c;
  return BinForm(field_, deg_, std::move(cs));
}

bool BinForm::operator==(const BinForm& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  if (deg_ != o.deg_) return false;
  for (int i = 0; i <= deg_; ++i)
    if (coeffs_[i] != o.coeffs_[i]) return false;
  return true;
}

BinForm BinForm::pow(int e) const {
  if (e < 0) throw Error("bad-form", "negative power");
  BinForm r = constant(Scalar::one(field_));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

BinForm BinForm::ds() const {
  if (is_zero() || deg_ == 0) return zero(field_);
  std::vector<Scalar> cs(deg_, Scalar::zero(field_));
  for (int i = 0; i < deg_; ++i)
    cs[i] = coeffs_[i] * Scalar::of_int(deg_ - i, field_);
  return deg_ - 1 >= 0 ? BinForm(field_, deg_ - 1, std::move(cs))
                       : zero(field_);
}

BinForm BinForm::dt() const {
  if (is_zero() || deg_ == 0) return zero(field_);
  std::vector<Scalar> cs(deg_, Scalar::zero(field_));
  for (int i = 1; i <= deg_; ++i)
    cs[i - 1] = coeffs_[i] * Scalar::of_int(i, field_);
  return BinForm(field_, deg_ - 1, std::move(cs));
}

Scalar BinForm::eval(const Scalar& s0, const Scalar& t0) const {
  if (s0.is_zero() && t0.is_zero())
    throw Error("bad-point", "evaluation at (0,0)");
  if (is_zero()) return Scalar::zero(field_);
  // Horner in whichever variable is nonzero.
  Scalar acc = Scalar::zero(field_);
  if (!s0.is_zero()) {
    // sum coeff[i] s^(d-i) t^i = s^d * sum coeff[i] (t/s)^i
    Scalar u = t0 / s0;
    for (int i = deg_; i >= 0; --i) acc = acc * u + coeffs_[i];
    Scalar sp = Scalar::one(field_);
    for (int i = 0; i < deg_; ++i) sp *= s0;
    return acc * sp;
  }
  Scalar tp = Scalar::one(field_);
  for (int i = 0; i < deg_; ++i) tp *= t0;
  return coeffs_[deg_] * tp;
}

BinForm BinForm::exact_div(const BinForm& divisor) const {
  if (divisor.is_zero()) throw Error("division-by-zero", "dividing by 0 form");
  if (is_zero()) return zero(field_);
  int qd = deg_ - *divisor.degree();
  if (qd < 0) throw Error("inexact-division", "divisor degree too large");
  int j0 = 0;
  while (divisor.coeffs_[j0].is_zero()) ++j0;
  Scalar lead = divisor.coeffs_[j0];
  // Solve divisor * h = this coefficient-by-coefficient from index j0.
  std::vector<Scalar> h(qd + 1, Scalar::zero(field_));
  for (int k = 0; k <= qd; ++k) {
    Scalar acc = coeff(k + j0);
    for (int j = j0 + 1; j <= *divisor.degree(); ++j) {
      int hi = k + j0 - j;
      if (hi >= 0) acc -= divisor.coeffs_[j] * h[hi];
    }
    h[k] = acc / lead;
  }
  BinForm q(field_, qd, std::move(h));
  if (!(divisor * q == *this))
    throw Error("inexact-division", "form is not divisible");
  return q;
}

bool BinForm::divides_exactly(const BinForm& dividend) const {
  try {
    (void)dividend.exact_div(*this);
    return true;
  } catch (const Error&) {
    return false;
  }
}

BinForm BinForm::compose(const Scalar& a, const Scalar& b, const Scalar& c,
                         const Scalar& d) const {
  if (is_zero()) return *this;
  BinForm u = monomial(field_, 1, 0, a) + monomial(field_, 0, 1, b);
  BinForm v = monomial(field_, 1, 0, c) + monomial(field_, 0, 1, d);
  BinForm acc = zero(field_);
  for (int i = 0; i <= deg_; ++i) {
    if (coeffs_[i].is_zero()) continue;
    BinForm term = u.pow(deg_ - i) * v.pow(i) * coeffs_[i];
    acc = acc.is_zero() ? term : acc + term;
  }
  return acc;
}

BinForm BinForm::monic() const {
  if (is_zero()) return *this;
  for (const Scalar& c : coeffs_)
    if (!c.is_zero()) return *this * c.inv();
  return *this;
}

int BinForm::s_multiplicity() const {
  if (is_zero()) return 0;
  for (int i = deg_; i >= 0; --i)
    if (!coeffs_[i].is_zero()) return deg_ - i;
  return 0;
}

int BinForm::t_multiplicity() const {
  if (is_zero()) return 0;
  for (int i = 0; i <= deg_; ++i)
    if (!coeffs_[i].is_zero()) return i;
  return 0;
}

std::string BinForm::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i <= deg_; ++i) {
    if (coeffs_[i].is_zero()) continue;
    std::string c = coeffs_[i].str();
    if (!first) {
      if (!c.empty() && c[0] == '-') {
        out << " - ";
        c = c.substr(1);
      } else {
        out << " + ";
      }
    }
    first = false;
    int se = deg_ - i, te = i;
    std::string mono;
    if (se > 0) mono += se == 1 ? "s" : "s^" + std::to_string(se);
    if (te > 0) {
      if (!mono.empty()) mono += "*";
      mono += te == 1 ? "t" : "t^" + std::to_string(te);
    }
    if (mono.empty()) {
      out << c;
    } else if (c == "1") {
      out << mono;
    } else {
      out << c << "*" << mono;
    }
  }
  return out.str();
}

BinForm form_gcd(const BinForm& a, const BinForm& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const Field f = a.field();
  int sm = std::min(a.s_multiplicity(), b.s_multiplicity());
  int tm = std::min(a.t_multiplicity(), b.t_multiplicity());
  // Strip s/t powers, dehomogenize at s=1 (polynomials in t with nonzero
  // constant term), run Euclid, rehomogenize.
  auto dehom = [&f](const BinForm& g) {
    int d = *g.degree();
    int lo = g.t_multiplicity(), hi = d - g.s_multiplicity();
    std::vector<Scalar> p;
    for (int i = lo; i <= hi; ++i) p.push_back(g.coeff(i));
    return p;
  };
  auto strip = [](std::vector<Scalar>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
  };
  std::vector<Scalar> u = dehom(a), v = dehom(b);
  strip(u);
  strip(v);
  while (!v.empty()) {
    // u mod v
    while (u.size() >= v.size() && !u.empty()) {
      Scalar q = u.back() / v.back();
      int off = static_cast<int>(u.size() - v.size());
      for (size_t j = 0; j < v.size(); ++j) u[off + j] -= v[j] * q;
      strip(u);
    }
    std::swap(u, v);
  }
  int ud = static_cast<int>(u.size()) - 1;
  std::vector<Scalar> cs(sm + tm + ud + 1, Scalar::zero(f));
  for (int i = 0; i <= ud; ++i) cs[tm + i] = u[i];
  return BinForm(f, sm + tm + ud, std::move(cs)).monic();
}

std::optional<std::pair<Scalar, Scalar>> find_projective_root(
    const BinForm& f) {
  if (f.is_zero()) return std::nullopt;
  const Field k = f.field();
  if (f.t_multiplicity() > 0)
    return std::make_pair(Scalar::one(k), Scalar::zero(k));
  if (f.s_multiplicity() > 0)
    return std::make_pair(Scalar::zero(k), Scalar::one(k));
  if (!k.is_rational()) {
    for (std::uint64_t x = 0; x < k.p; ++x) {
      Scalar t0 = Scalar::of_int(static_cast<long>(x), k);
      if (f.eval(Scalar::one(k), t0).is_zero())
        return std::make_pair(Scalar::one(k), t0);
    }
    return std::nullopt;
  }
  // Over Q, try rational roots of small height.
  for (long num = -40; num <= 40; ++num)
    for (long den = 1; den <= 12; ++den) {
      Scalar s0 = Scalar::of_int(den, k), t0 = Scalar::of_int(num, k);
      if (f.eval(s0, t0).is_zero()) return std::make_pair(s0, t0);
    }
  return std::nullopt;
}

}  // namespace p1b
