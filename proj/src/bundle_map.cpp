#include "p1bundles/bundle_map.hpp"

#include <algorithm>

namespace p1b {

BundleMap::BundleMap(const Field& f, SplittingType source,
                     SplittingType target,
                     std::vector<std::vector<BinForm>> entries)
    : field_(f), source_(std::move(source)), target_(std::move(target)),
      entries_(std::move(entries)) {
  const auto& a = source_.entries();
  const auto& b = target_.entries();
  if (static_cast<int>(entries_.size()) != target_.rank())
    throw Error("shape", "bundle map row count mismatch");
  for (int j = 0; j < target_.rank(); ++j) {
    if (static_cast<int>(entries_[j].size()) != source_.rank())
      throw Error("shape", "bundle map column count mismatch");
    for (int i = 0; i < source_.rank(); ++i) {
      const BinForm& e = entries_[j][i];
      if (e.is_zero()) continue;
      if (b[j] - a[i] < 0)
        throw Error("degree-mismatch",
                    "entry must vanish where target degree < source degree");
      if (*e.degree() != b[j] - a[i])
        throw Error("degree-mismatch", "bundle map entry of wrong degree");
    }
  }
}

BundleMap BundleMap::zero(const Field& f, const SplittingType& source,
                          const SplittingType& target) {
  std::vector<std::vector<BinForm>> e(
      target.rank(), std::vector<BinForm>(source.rank(), BinForm::zero(f)));
  return BundleMap(f, source, target, std::move(e));
}

BundleMap BundleMap::random(const Field& f, const SplittingType& source,
                            const SplittingType& target, Rng& rng) {
  std::vector<std::vector<BinForm>> e(
      target.rank(), std::vector<BinForm>(source.rank(), BinForm::zero(f)));
  for (int j = 0; j < target.rank(); ++j)
    for (int i = 0; i < source.rank(); ++i) {
      int d = target.entries()[j] - source.entries()[i];
      if (d >= 0) e[j][i] = BinForm::random(f, d, rng);
    }
  return BundleMap(f, source, target, std::move(e));
}

BundleMap BundleMap::transpose_dual() const {
  int r = source_.rank(), s = target_.rank();
  std::vector<std::vector<BinForm>> e(
      r, std::vector<BinForm>(s, BinForm::zero(field_)));
  // dual source index j' = s-1-j, dual target index i' = r-1-i
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < r; ++i) e[r - 1 - i][s - 1 - j] = entries_[j][i];
  return BundleMap(field_, target_.dual(), source_.dual(), std::move(e));
}

BundleMap BundleMap::compose(const BundleMap& inner) const {
  if (!(inner.target_ == source_))
    throw Error("shape", "composition shape mismatch");
  std::vector<std::vector<BinForm>> e(
      target_.rank(),
      std::vector<BinForm>(inner.source_.rank(), BinForm::zero(field_)));
  for (int j = 0; j < target_.rank(); ++j)
    for (int i = 0; i < inner.source_.rank(); ++i) {
      BinForm acc = BinForm::zero(field_);
      for (int k = 0; k < source_.rank(); ++k) {
        BinForm term = entries_[j][k] * inner.entries_[k][i];
        acc = acc.is_zero() ? term : (term.is_zero() ? acc : acc + term);
      }
      e[j][i] = acc;
    }
  return BundleMap(field_, inner.source_, target_, std::move(e));
}

Section BundleMap::apply(const Section& g) const {
  if (static_cast<int>(g.size()) != source_.rank())
    throw Error("shape", "section length mismatch");
  Section out;
  out.reserve(target_.rank());
  for (int j = 0; j < target_.rank(); ++j) {
    BinForm acc = BinForm::zero(field_);
    for (int i = 0; i < source_.rank(); ++i) {
      if (entries_[j][i].is_zero() || g[i].is_zero()) continue;
      BinForm term = entries_[j][i] * g[i];
      acc = acc.is_zero() ? term : acc + term;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

Matrix BundleMap::eval(const Scalar& s0, const Scalar& t0) const {
  Matrix m(field_, target_.rank(), source_.rank());
  for (int j = 0; j < target_.rank(); ++j)
    for (int i = 0; i < source_.rank(); ++i)
      if (!entries_[j][i].is_zero()) m.at(j, i) = entries_[j][i].eval(s0, t0);
  return m;
}

int BundleMap::generic_rank(Rng& rng) const {
  int best = 0;
  for (int tries = 0; tries < 3; ++tries) {
    Scalar s0 = rng.scalar(field_), t0 = rng.scalar(field_);
    if (s0.is_zero() && t0.is_zero()) t0 = Scalar::one(field_);
    best = std::max(best, eval(s0, t0).rank());
  }
  return best;
}

namespace {

// Visit k-subsets of [0, n) in lexicographic order.
bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

BinForm minor_det(const std::vector<std::vector<BinForm>>& m,
                  const std::vector<int>& rows, const std::vector<int>& cols,
                  const Field& f) {
  std::vector<std::vector<BinForm>> sub(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    sub[i].reserve(cols.size());
    for (int c : cols) sub[i].push_back(m[rows[i]][c]);
  }
  return form_matrix_det(sub, f);
}

BundleMap::FiberwiseCert full_rank_cert(
    const std::vector<std::vector<BinForm>>& m, int k, const Field& f) {
  BundleMap::FiberwiseCert cert;
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  if (k == 0) {
    cert.ok = true;
    cert.witness_gcd = BinForm::constant(Scalar::one(f));
    return cert;
  }
  if (k > rows || k > cols) {
    cert.ok = false;
    cert.witness_gcd = BinForm::zero(f);
    return cert;
  }
  BinForm g = BinForm::zero(f);
  std::vector<int> ri(k), ci(k);
  for (int i = 0; i < k; ++i) ri[i] = i;
  bool more_rows = true;
  while (more_rows) {
    for (int i = 0; i < k; ++i) ci[i] = i;
    bool more_cols = true;
    while (more_cols) {
      BinForm d = minor_det(m, ri, ci, f);
      g = form_gcd(g, d);
      if (!g.is_zero() && *g.degree() == 0) {
        cert.ok = true;
        cert.witness_gcd = g;
        return cert;
      }
      more_cols = next_combination(ci, cols);
    }
    more_rows = next_combination(ri, rows);
  }
  cert.ok = false;
  cert.witness_gcd = g;
  if (!g.is_zero()) cert.drop_point = find_projective_root(g);
  return cert;
}

}  // namespace

namespace {

// Evaluation-interpolation determinant for larger matrices: the det of a
// matrix of binary forms coming from graded data is homogeneous; recover it
// from scalar determinants at (1, x_j) and (y_j, 1). Needs enough points.
std::optional<BinForm> det_by_interpolation(
    const std::vector<std::vector<BinForm>>& m, const Field& f) {
  int n = static_cast<int>(m.size());
  long dmax = 0;
  for (int r = 0; r < n; ++r) {
    int row_max = 0;
    for (int c = 0; c < n; ++c) row_max = std::max(row_max, m[r][c].degree_or(0));
    dmax += row_max;
  }
  if (!f.is_rational() && f.p <= static_cast<std::uint64_t>(dmax) + 2)
    return std::nullopt;
  auto univariate = [&](bool at_s_one) -> std::optional<std::vector<Scalar>> {
    // values of det(M(1,x)) resp. det(M(y,1)) at dmax+1 points
    int npts = static_cast<int>(dmax) + 1;
    Matrix vander(f, npts, npts);
    std::vector<Scalar> vals;
    for (int j = 0; j < npts; ++j) {
      Scalar x = Scalar::of_int(j, f);
      Matrix mx(f, n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (!m[r][c].is_zero())
            mx.at(r, c) = at_s_one ? m[r][c].eval(Scalar::one(f), x)
                                   : m[r][c].eval(x, Scalar::one(f));
      vals.push_back(mx.det());
      Scalar pw = Scalar::one(f);
      for (int i = 0; i < npts; ++i) {
        vander.at(j, i) = pw;
        pw *= x;
      }
    }
    return vander.solve(vals);
  };
  auto q = univariate(true);
  if (!q) return std::nullopt;
  bool zero = true;
  for (const Scalar& c : *q)
    if (!c.is_zero()) zero = false;
  if (zero) {
    // confirm on the other chart (s-powers invisible at s=1 cannot hide a
    // nonzero det, but stay safe)
    auto r = univariate(false);
    if (!r) return std::nullopt;
    for (const Scalar& c : *r)
      if (!c.is_zero()) return std::nullopt;  // inconsistent; fall back
    return BinForm::zero(f);
  }
  auto r = univariate(false);
  if (!r) return std::nullopt;
  int deg_r = -1;
  for (int i = static_cast<int>(r->size()) - 1; i >= 0; --i)
    if (!(*r)[i].is_zero()) {
      deg_r = i;
      break;
    }
  int low_q = 0;
  while (low_q < static_cast<int>(q->size()) && (*q)[low_q].is_zero()) ++low_q;
  // det = sum_i q_i s^(D-i) t^i with D = deg_r + low_q
  int total = deg_r + low_q;
  std::vector<Scalar> coeffs(total + 1, Scalar::zero(f));
  for (int i = low_q; i < static_cast<int>(q->size()); ++i) {
    if ((*q)[i].is_zero()) continue;
    if (i > total) return std::nullopt;  // not homogeneous; fall back
    coeffs[i] = (*q)[i];
  }
  return BinForm(f, total, std::move(coeffs));
}

}  // namespace

BinForm form_matrix_det(const std::vector<std::vector<BinForm>>& m,
                        const Field& f) {
  int n = static_cast<int>(m.size());
  if (n == 0) return BinForm::constant(Scalar::one(f));
  if (n == 1) return m[0][0];
  if (n > 3) {
    if (auto d = det_by_interpolation(m, f)) return *d;
  }
  // expand along the row with the most zeros
  int best_row = 0, best_zeros = -1;
  for (int r = 0; r < n; ++r) {
    int z = 0;
    for (int c = 0; c < n; ++c)
      if (m[r][c].is_zero()) ++z;
    if (z > best_zeros) {
      best_zeros = z;
      best_row = r;
    }
  }
  BinForm acc = BinForm::zero(f);
  for (int c = 0; c < n; ++c) {
    if (m[best_row][c].is_zero()) continue;
    std::vector<std::vector<BinForm>> sub;
    sub.reserve(n - 1);
    for (int r = 0; r < n; ++r) {
      if (r == best_row) continue;
      std::vector<BinForm> row;
      row.reserve(n - 1);
      for (int cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      sub.push_back(std::move(row));
    }
    BinForm term = m[best_row][c] * form_matrix_det(sub, f);
    if ((best_row + c) % 2) term = -term;
    acc = acc.is_zero() ? term : (term.is_zero() ? acc : acc + term);
  }
  return acc;
}

BinForm maximal_minor_gcd(const std::vector<std::vector<BinForm>>& m,
                          const Field& f) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  return minor_gcd_of_size(m, std::min(rows, cols), f);
}

BinForm minor_gcd_of_size(const std::vector<std::vector<BinForm>>& m, int k,
                          const Field& f) {
  return *full_rank_cert(m, k, f).witness_gcd;
}

BundleMap::FiberwiseCert BundleMap::fiberwise_surjective() const {
  return full_rank_cert(entries_, target_.rank(), field_);
}

BundleMap::FiberwiseCert BundleMap::fiberwise_injective() const {
  return full_rank_cert(entries_, source_.rank(), field_);
}

std::vector<Scalar> section_coeffs(const SplittingType& E, const Section& g,
                                   int d, const Field& f) {
  (void)f;
  if (static_cast<int>(g.size()) != E.rank())
    throw Error("shape", "section length mismatch");
  std::vector<Scalar> out;
  for (int i = 0; i < E.rank(); ++i) {
    int deg = E.entries()[i] + d;
    if (deg < 0) {
      if (!g[i].is_zero())
        throw Error("degree-mismatch", "section component in negative degree");
      continue;
    }
    if (!g[i].is_zero() && *g[i].degree() != deg)
      throw Error("degree-mismatch", "section component of wrong degree");
    for (int k = 0; k <= deg; ++k) out.push_back(g[i].coeff(k));
  }
  return out;
}

Section section_from_coeff_layout(const SplittingType& E,
                                  const std::vector<Scalar>& coeffs, int d,
                                  const Field& f) {
  Section g;
  size_t pos = 0;
  for (int i = 0; i < E.rank(); ++i) {
    int deg = E.entries()[i] + d;
    if (deg < 0) {
      g.push_back(BinForm::zero(f));
      continue;
    }
    std::vector<Scalar> cs(coeffs.begin() + pos, coeffs.begin() + pos + deg + 1);
    pos += deg + 1;
    g.push_back(BinForm(f, deg, std::move(cs)));
  }
  if (pos != coeffs.size()) throw Error("shape", "coefficient layout mismatch");
  return g;
}

BundleMap::SectionsMatrix BundleMap::sections_matrix(int d) const {
  const auto& a = source_.entries();
  const auto& b = target_.entries();
  SectionsMatrix out{Matrix(field_, 0, 0), {}, {}};
  int cols = 0;
  for (int i = 0; i < source_.rank(); ++i) {
    out.col_offset.push_back(cols);
    cols += std::max(0, a[i] + d + 1);
  }
  out.col_offset.push_back(cols);
  int rows = 0;
  for (int j = 0; j < target_.rank(); ++j) {
    out.row_offset.push_back(rows);
    rows += std::max(0, b[j] + d + 1);
  }
  out.row_offset.push_back(rows);
  Matrix m(field_, rows, cols);
  for (int j = 0; j < target_.rank(); ++j) {
    if (b[j] + d < 0) continue;
    for (int i = 0; i < source_.rank(); ++i) {
      const BinForm& e = entries_[j][i];
      if (e.is_zero() || a[i] + d < 0) continue;
      int ed = *e.degree();
      for (int k = 0; k <= a[i] + d; ++k)
        for (int l = 0; l <= ed; ++l) {
          const Scalar& c = e.coeff(l);
          if (c.is_zero()) continue;
          m.at(out.row_offset[j] + k + l, out.col_offset[i] + k) += c;
        }
    }
  }
  out.m = std::move(m);
  return out;
}

long BundleMap::kernel_dim(int d) const {
  auto sm = sections_matrix(d);
  return sm.m.cols() - sm.m.rank();
}

Section BundleMap::section_from_coeffs(const std::vector<Scalar>& coeffs,
                                       int d) const {
  return section_from_coeff_layout(source_, coeffs, d, field_);
}

}  // namespace p1b
