#include "p1bundles/subbundle.hpp"

#include <algorithm>
#include <map>

namespace p1b {

SubbundleModel::SubbundleModel(const Field& f, SplittingType ambient,
                               std::vector<int> twists,
                               std::vector<Section> columns,
                               std::optional<BundleMap> defining)
    : field_(f), ambient_(std::move(ambient)), twists_(std::move(twists)),
      columns_(std::move(columns)), defining_(std::move(defining)) {
  if (twists_.size() != columns_.size())
    throw Error("shape", "model twist/column count mismatch");
  for (size_t i = 1; i < twists_.size(); ++i)
    if (twists_[i] > twists_[i - 1])
      throw Error("shape", "model columns must be twist-descending");
  std::vector<int> inf;
  inf.reserve(twists_.size());
  for (int d : twists_) inf.push_back(-d);
  inferred_ = SplittingType(std::move(inf));
}

BundleMap SubbundleModel::inclusion() const {
  std::vector<std::vector<BinForm>> e(
      ambient_.rank(),
      std::vector<BinForm>(generator_count(), BinForm::zero(field_)));
  for (int l = 0; l < generator_count(); ++l)
    for (int i = 0; i < ambient_.rank(); ++i) e[i][l] = columns_[l][i];
  return BundleMap(field_, inferred_, ambient_, std::move(e));
}

std::vector<Section> SubbundleModel::section_basis(int d) const {
  std::vector<Section> out;
  for (int l = 0; l < generator_count(); ++l) {
    int md = d - twists_[l];
    if (md < 0) continue;
    for (int k = 0; k <= md; ++k) {
      BinForm mono = BinForm::monomial(field_, md - k, k);
      Section s;
      s.reserve(ambient_.rank());
      for (const BinForm& g : columns_[l]) s.push_back(g * mono);
      out.push_back(std::move(s));
    }
  }
  return out;
}

Matrix SubbundleModel::section_basis_matrix(int d) const {
  auto sections = section_basis(d);
  long n = static_cast<long>(ambient_.h0(d));
  Matrix m(field_, static_cast<int>(n), static_cast<int>(sections.size()));
  for (size_t c = 0; c < sections.size(); ++c) {
    auto coeffs = section_coeffs(ambient_, sections[c], d, field_);
    for (size_t r = 0; r < coeffs.size(); ++r)
      m.at(static_cast<int>(r), static_cast<int>(c)) = coeffs[r];
  }
  return m;
}

std::vector<BinForm> SubbundleModel::express(const Section& v,
                                             int twist) const {
  if (defining_) {
    Section mv = defining_->apply(v);
    for (const BinForm& c : mv)
      if (!c.is_zero())
        throw Error("not-in-model",
                    "section is not annihilated by the defining map");
  }
  Matrix m = section_basis_matrix(twist);
  auto rhs = section_coeffs(ambient_, v, twist, field_);
  auto sol = m.solve(rhs);
  if (!sol)
    throw Error("not-in-model", "section does not lie in the modeled sheaf");
  // Reassemble per-generator coefficient forms from the layout of
  // section_basis (generator-major, s-descending monomials).
  std::vector<BinForm> u;
  size_t pos = 0;
  for (int l = 0; l < generator_count(); ++l) {
    int md = twist - twists_[l];
    if (md < 0) {
      u.push_back(BinForm::zero(field_));
      continue;
    }
    std::vector<Scalar> cs(sol->begin() + pos, sol->begin() + pos + md + 1);
    pos += md + 1;
    u.push_back(BinForm(field_, md, std::move(cs)));
  }
  return u;
}

bool SubbundleModel::check_injective() const {
  if (generator_count() == 0) return true;
  std::vector<std::vector<BinForm>> g(
      ambient_.rank(),
      std::vector<BinForm>(generator_count(), BinForm::zero(field_)));
  for (int l = 0; l < generator_count(); ++l)
    for (int i = 0; i < ambient_.rank(); ++i) g[i][l] = columns_[l][i];
  BinForm gcd = maximal_minor_gcd(g, field_);
  return !gcd.is_zero() && *gcd.degree() == 0;
}

bool SubbundleModel::check_annihilated() const {
  if (!defining_) return true;
  for (const Section& col : columns_) {
    Section image = defining_->apply(col);
    for (const BinForm& c : image)
      if (!c.is_zero()) return false;
  }
  return true;
}

SubbundleModel kernel_model(const BundleMap& m) {
  const Field f = m.field();
  const SplittingType& E = m.source();
  const SplittingType& F = m.target();
  Rng rng(0x6b65726e656cull);  // internal; only used for rank points
  int grank = m.generic_rank(rng);
  int rho = E.rank() - grank;
  if (rho == 0) return SubbundleModel(f, E, {}, {}, m);

  const auto& a = E.entries();
  int amax = a.back();
  // Search bound: model degrees satisfy
  //   d_l <= -(deg E - sigma) + (rho - 1) * max a_i
  // with sigma the sum of the grank largest target degrees.
  long sigma = 0;
  const auto& b = F.entries();
  for (int i = 0; i < grank; ++i) sigma += b[F.rank() - 1 - i];
  long dstar = -(E.degree() - sigma) + static_cast<long>(rho - 1) * amax;
  long dstart = -amax;
  if (dstar < dstart) dstar = dstart;

  std::vector<int> twists;     // ascending while scanning
  std::vector<Section> gens;

  auto span_columns = [&](int d) {
    // coefficient vectors of all monomial multiples of current generators
    std::vector<std::vector<Scalar>> cols;
    for (size_t l = 0; l < gens.size(); ++l) {
      int md = d - twists[l];
      if (md < 0) continue;
      for (int k = 0; k <= md; ++k) {
        BinForm mono = BinForm::monomial(f, md - k, k);
        Section s;
        s.reserve(E.rank());
        for (const BinForm& g : gens[l]) s.push_back(g * mono);
        cols.push_back(section_coeffs(E, s, d, f));
      }
    }
    return cols;
  };

  for (long d = dstart; d <= dstar; ++d) {
    // a free module of rank rho has exactly rho minimal generators, so the
    // scan can stop early; the window past D* still verifies
    if (static_cast<int>(gens.size()) == rho) break;
    auto sm = m.sections_matrix(static_cast<int>(d));
    auto ker = sm.m.kernel_basis();
    if (ker.empty()) continue;
    auto span = span_columns(static_cast<int>(d));
    if (span.size() == ker.size()) continue;  // free module: span is full
    // Echelonize [span | kernel basis]; pivots landing in kernel columns are
    // the new minimal generators at this twist.
    int nrows = sm.m.cols();
    Matrix probe(f, nrows, static_cast<int>(span.size() + ker.size()));
    for (size_t c = 0; c < span.size(); ++c)
      for (int r = 0; r < nrows; ++r)
        probe.at(r, static_cast<int>(c)) = span[c][r];
    for (size_t c = 0; c < ker.size(); ++c)
      for (int r = 0; r < nrows; ++r)
        probe.at(r, static_cast<int>(span.size() + c)) = ker[c][r];
    for (int pc : probe.pivot_columns()) {
      if (pc < static_cast<int>(span.size())) continue;
      gens.push_back(m.section_from_coeffs(ker[pc - span.size()],
                                           static_cast<int>(d)));
      twists.push_back(static_cast<int>(d));
    }
  }

  if (static_cast<int>(gens.size()) != rho)
    throw Error("kernel-model-unstable",
                "expected " + std::to_string(rho) + " kernel generators, found " +
                    std::to_string(gens.size()) + " by twist " +
                    std::to_string(dstar) +
                    " (non-constant-rank degeneration?)");

  // Verification window: two twists past the search bound the generated
  // submodule must account for the whole kernel.
  std::vector<int> inferred_entries;
  for (int d : twists) inferred_entries.push_back(-d);
  SplittingType inferred(inferred_entries);
  for (long d = dstar + 1; d <= dstar + 2; ++d) {
    long kd = m.kernel_dim(static_cast<int>(d));
    auto span = span_columns(static_cast<int>(d));
    if (kd != static_cast<long>(span.size()) || kd != inferred.h0(static_cast<int>(d)))
      throw Error("kernel-model-unstable",
                  "Hilbert verification failed at twist " + std::to_string(d));
  }

  // store twist-descending
  std::vector<int> tw_desc(twists.rbegin(), twists.rend());
  std::vector<Section> cols_desc(gens.rbegin(), gens.rend());
  return SubbundleModel(f, E, std::move(tw_desc), std::move(cols_desc), m);
}

CokernelModel cokernel_model(const BundleMap& m) {
  const Field f = m.field();
  SubbundleModel h = kernel_model(m.transpose_dual());
  int L = h.generator_count();
  int fr = m.target().rank();
  // Q = O(d_1) + ... + O(d_L), ascending; h's columns are twist-descending,
  // so quotient row r corresponds to h column L-1-r.
  std::vector<int> q_entries(h.twists().rbegin(), h.twists().rend());
  SplittingType q(q_entries);
  std::vector<std::vector<BinForm>> rows(
      L, std::vector<BinForm>(fr, BinForm::zero(f)));
  for (int r = 0; r < L; ++r) {
    const Section& col = h.column(L - 1 - r);
    // component for dual summand index j' corresponds to F summand fr-1-j'
    for (int jd = 0; jd < fr; ++jd) rows[r][fr - 1 - jd] = col[jd];
  }
  return CokernelModel{q, BundleMap(f, m.target(), q, std::move(rows))};
}

GenericKernelResult generic_kernel_splitting(const Field& f,
                                             const SplittingType& E,
                                             const SplittingType& F,
                                             int trials, Rng& rng) {
  if (trials < 1) throw Error("bad-arg", "trials must be >= 1");
  GenericKernelResult out;
  std::vector<BundleMap> maps;
  std::vector<int> granks;
  int grank_best = 0;
  for (int t = 0; t < trials; ++t) {
    Rng trial_rng = rng.fork(t);
    maps.push_back(BundleMap::random(f, E, F, trial_rng));
    granks.push_back(maps.back().generic_rank(trial_rng));
    grank_best = std::max(grank_best, granks.back());
  }
  bool any_possible = false;
  for (int j = 0; j < F.rank(); ++j)
    for (int i = 0; i < E.rank(); ++i)
      if (F.entries()[j] >= E.entries()[i]) any_possible = true;
  if (grank_best == 0 && any_possible && E.rank() > 0 && F.rank() > 0)
    throw Error("degenerate-samples", "all sampled maps have rank 0");
  out.generic_rank = grank_best;

  std::vector<std::map<int, long>> cache(trials);
  auto trial_h0 = [&](int t, int d) {
    auto it = cache[t].find(d);
    if (it != cache[t].end()) return it->second;
    long v = maps[t].kernel_dim(d);
    cache[t][d] = v;
    return v;
  };
  auto min_oracle = [&](int d) {
    long best = trial_h0(0, d);
    for (int t = 1; t < trials; ++t) best = std::min(best, trial_h0(t, d));
    return best;
  };
  out.splitting = infer_splitting(min_oracle, E.rank() - grank_best);
  for (int t = 0; t < trials; ++t)
    out.per_trial.push_back(infer_splitting(
        [&](int d) { return trial_h0(t, d); }, E.rank() - granks[t]));
  return out;
}

BundleMap phi_witness(const Field& f, const SplittingType& E, int b) {
  const auto& a = E.entries();
  if (E.rank() < 2) throw Error("bad-arg", "phi witness needs rank > 1");
  for (int ai : a)
    if (ai < 0 || ai > b)
      throw Error("bad-arg", "phi witness needs 0 <= a_i <= b");
  if (E.degree() < b)
    throw Error("bad-arg", "phi witness needs deg E >= b");
  int r = E.rank();
  std::vector<BinForm> row(r, BinForm::zero(f));
  if (b == 0) {
    // all a_i are 0; any unit entry is a surjection O^r -> O
    row[r - 1] = BinForm::constant(Scalar::one(f));
    return BundleMap(f, E, SplittingType({b}), {std::move(row)});
  }
  long acc = 0;
  for (int i = 0; i < r; ++i) {
    if (a[i] == 0) continue;  // zero column
    acc += a[i];
    int Ai = static_cast<int>(std::min<long>(b, acc));
    row[i] = BinForm::monomial(f, b - Ai, Ai - a[i]);
  }
  return BundleMap(f, E, SplittingType({b}), {std::move(row)});
}

}  // namespace p1b
