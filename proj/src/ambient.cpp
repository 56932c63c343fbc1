#include "p1bundles/ambient.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace p1b {

std::string DivisorClass::str() const {
  std::string s = "(";
  for (size_t i = 0; i < deg.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(deg[i]);
  }
  return s + ")";
}

int Ambient::total_coords() const {
  int n = 0;
  for (int b : block_sizes) n += b;
  return n;
}

int Ambient::projective_dim() const {
  int n = 0;
  for (int b : block_sizes) n += b - 1;
  return n;
}

mpq_class Ambient::anticanonical_dot(
    const std::vector<int>& curve_degrees) const {
  if (curve_degrees.size() != anticanonical.size())
    throw Error("shape", "anticanonical/curve block count mismatch");
  mpq_class v = 0;
  for (size_t i = 0; i < anticanonical.size(); ++i)
    v += anticanonical[i] * curve_degrees[i];
  return v;
}

bool Ambient::fano_after(const std::vector<DivisorClass>& divisors) const {
  for (size_t b = 0; b < anticanonical.size(); ++b) {
    mpq_class c = anticanonical[b];
    for (const auto& d : divisors) c -= d.deg[b];
    if (c <= 0) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  if (k == 0) {
    out.push_back({});
    return out;
  }
  if (k > n) return out;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Insert j into sorted I: sign (-1)^{#elements > j}, or 0 if j already in I.
int insert_sign(const std::vector<int>& I, int j) {
  int greater = 0;
  for (int x : I) {
    if (x == j) return 0;
    if (x > j) ++greater;
  }
  return (greater % 2) ? -1 : 1;
}

std::vector<int> with_inserted(const std::vector<int>& I, int j) {
  std::vector<int> out = I;
  out.insert(std::upper_bound(out.begin(), out.end(), j), j);
  return out;
}

std::vector<int> with_removed(const std::vector<int>& J, int j) {
  std::vector<int> out;
  for (int x : J)
    if (x != j) out.push_back(x);
  return out;
}

struct PluckerBlock {
  int k = 0;
  std::vector<std::vector<int>> sets;      // lex ordered k-subsets of [1, n]
  std::map<std::vector<int>, int> index;   // subset -> coordinate position
};

PluckerBlock plucker_block(int n, int k) {
  PluckerBlock b;
  b.k = k;
  b.sets = subsets(n, k);
  for (size_t i = 0; i < b.sets.size(); ++i)
    b.index[b.sets[i]] = static_cast<int>(i);
  return b;
}

// Grassmann-Plucker / incidence relations between a size-a factor (vars at
// offset_p) and a size-b factor (vars at offset_q), a <= b:
//   sum_l (-1)^(l-1) sign(I, j_l) p_{I + j_l} q_{J - j_l} = 0
// over |I| = a-1, |J| = b+1. a == b gives the Plucker relations themselves.
std::vector<MPoly> incidence_relations(const Field& f, int nvars, int n,
                                       const PluckerBlock& pb, int offset_p,
                                       const PluckerBlock& qb, int offset_q) {
  std::set<std::string> seen;
  std::vector<MPoly> out;
  auto key_of = [](const MPoly& p) {
    std::string k;
    for (const auto& [e, c] : p.terms()) {
      for (int x : e) k += std::to_string(x) + ",";
      k += ":" + c.str() + ";";
    }
    return k;
  };
  for (const auto& I : subsets(n, pb.k - 1)) {
    for (const auto& J : subsets(n, qb.k + 1)) {
      MPoly rel(f, nvars);
      int l = 0;
      for (int j : J) {
        ++l;
        int sgn = insert_sign(I, j);
        if (sgn == 0) continue;
        if (l % 2 == 0) sgn = -sgn;
        auto pi = with_inserted(I, j);
        auto qj = with_removed(J, j);
        std::vector<int> e(nvars, 0);
        e[offset_p + pb.index.at(pi)] += 1;
        e[offset_q + qb.index.at(qj)] += 1;
        rel = rel + MPoly::monomial(f, nvars, e, Scalar::of_int(sgn, f));
      }
      if (rel.is_zero()) continue;
      MPoly norm = rel.normalized();
      std::string key = key_of(norm);
      if (seen.insert(key).second) out.push_back(norm);
    }
  }
  return out;
}

}  // namespace

Ambient ambient_projective(const Field& f, int n) {
  if (n < 1) throw Error("bad-arg", "projective space needs n >= 1");
  Ambient x;
  x.label = "P" + std::to_string(n);
  x.kind = "projective";
  x.params = {n};
  x.block_sizes = {n + 1};
  x.dim = n;
  x.gen_degree = 0;
  x.anticanonical = {mpq_class(n + 1)};
  x.field = f;
  return x;
}

Ambient ambient_product(const Field& f, const std::vector<int>& dims) {
  if (dims.empty()) throw Error("bad-arg", "product needs at least one factor");
  Ambient x;
  x.kind = "product";
  x.params = dims;
  x.label = "P" + std::to_string(dims[0]);
  for (size_t i = 1; i < dims.size(); ++i)
    x.label += "xP" + std::to_string(dims[i]);
  x.dim = 0;
  for (int a : dims) {
    if (a < 1) throw Error("bad-arg", "factors need dimension >= 1");
    x.block_sizes.push_back(a + 1);
    x.dim += a;
    x.anticanonical.push_back(mpq_class(a + 1));
  }
  x.gen_degree = 0;
  x.field = f;
  return x;
}

Ambient ambient_flag(const Field& f, const std::vector<int>& ks, int n) {
  if (ks.empty()) throw Error("bad-arg", "flag needs at least one step");
  for (size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1 || ks[i] > n - 1)
      throw Error("bad-arg", "flag steps need 1 <= k_i <= n-1");
    if (i && ks[i] <= ks[i - 1])
      throw Error("bad-arg", "flag steps must increase");
  }
  Ambient x;
  x.kind = ks.size() == 1 ? "grassmannian" : "flag";
  x.params = ks;
  x.params.push_back(n);
  if (ks.size() == 1) {
    x.label = "G(" + std::to_string(ks[0]) + "," + std::to_string(n) + ")";
  } else {
    x.label = "F(";
    for (size_t i = 0; i < ks.size(); ++i)
      x.label += (i ? "," : "") + std::to_string(ks[i]);
    x.label += ";" + std::to_string(n) + ")";
  }
  x.field = f;
  x.gen_degree = 2;
  int r = static_cast<int>(ks.size());
  std::vector<PluckerBlock> blocks;
  int nvars = 0;
  for (int i = 0; i < r; ++i) {
    blocks.push_back(plucker_block(n, ks[i]));
    x.block_sizes.push_back(static_cast<int>(blocks.back().sets.size()));
    nvars += x.block_sizes.back();
  }
  x.dim = 0;
  for (int i = 0; i < r; ++i) {
    int knext = (i + 1 < r) ? ks[i + 1] : n;
    x.dim += ks[i] * (knext - ks[i]);
    int kprev = (i > 0) ? ks[i - 1] : 0;
    x.anticanonical.push_back(mpq_class(knext - kprev));
  }
  std::vector<int> offsets(r, 0);
  for (int i = 1; i < r; ++i)
    offsets[i] = offsets[i - 1] + x.block_sizes[i - 1];
  for (int i = 0; i < r; ++i) {
    auto rels = incidence_relations(f, nvars, n, blocks[i], offsets[i],
                                    blocks[i], offsets[i]);
    x.equations.insert(x.equations.end(), rels.begin(), rels.end());
    if (i + 1 < r) {
      auto inc = incidence_relations(f, nvars, n, blocks[i], offsets[i],
                                     blocks[i + 1], offsets[i + 1]);
      x.equations.insert(x.equations.end(), inc.begin(), inc.end());
    }
  }
  return x;
}

Ambient ambient_grassmannian(const Field& f, int k, int n) {
  return ambient_flag(f, {k}, n);
}

WpsAmbient ambient_wps(const Field& f, const std::vector<int>& weights,
                       int a) {
  if (weights.size() < 3)
    throw Error("bad-arg", "weighted projective space needs >= 3 weights");
  for (int w : weights)
    if (w < 1) throw Error("bad-arg", "weights must be positive");
  if (a < 1) throw Error("bad-arg", "embedding degree must be positive");
  int m = static_cast<int>(weights.size()) - 1;
  // enumerate weight-a exponent vectors, lex
  std::vector<std::vector<int>> exps;
  std::vector<int> cur(m + 1, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == m) {
      if (left % weights[m] == 0) {
        cur[m] = left / weights[m];
        exps.push_back(cur);
      }
      return;
    }
    for (int c = 0; c * weights[i] <= left; ++c) {
      cur[i] = c;
      rec(i + 1, left - c * weights[i]);
    }
    cur[i] = 0;
  };
  rec(0, a);
  if (exps.size() < 2)
    throw Error("bad-arg", "O(a) has too few sections to embed");
  WpsAmbient w;
  w.weights = weights;
  w.a = a;
  w.coord_exponents = exps;
  Ambient& x = w.ambient;
  x.kind = "wps";
  x.params = weights;
  x.params.push_back(a);
  x.label = "P(";
  for (size_t i = 0; i < weights.size(); ++i)
    x.label += (i ? "," : "") + std::to_string(weights[i]);
  x.label += ")|O(" + std::to_string(a) + ")";
  x.field = f;
  x.block_sizes = {static_cast<int>(exps.size())};
  x.dim = m;
  x.gen_degree = 2;
  long wsum = 0;
  for (int ww : weights) wsum += ww;
  x.anticanonical = {mpq_class(wsum, a)};
  x.anticanonical[0].canonicalize();
  // binomial relations: z_u z_v = z_u' z_v' whenever u+v = u'+v'
  int nv = static_cast<int>(exps.size());
  std::map<std::vector<int>, std::vector<std::pair<int, int>>> by_sum;
  for (int i = 0; i < nv; ++i)
    for (int j = i; j < nv; ++j) {
      std::vector<int> s(m + 1);
      for (int t = 0; t <= m; ++t) s[t] = exps[i][t] + exps[j][t];
      by_sum[s].emplace_back(i, j);
    }
  for (const auto& [s, pairs] : by_sum) {
    for (size_t t = 1; t < pairs.size(); ++t) {
      std::vector<int> e1(nv, 0), e2(nv, 0);
      e1[pairs[0].first] += 1;
      e1[pairs[0].second] += 1;
      e2[pairs[t].first] += 1;
      e2[pairs[t].second] += 1;
      MPoly rel = MPoly::monomial(f, nv, e1, Scalar::one(f)) -
                  MPoly::monomial(f, nv, e2, Scalar::one(f));
      x.equations.push_back(rel);
    }
  }
  return w;
}

Ambient cut_by(const Ambient& x, const std::vector<MPoly>& hypersurfaces,
               const std::vector<DivisorClass>& classes,
               const std::string& label) {
  if (hypersurfaces.size() != classes.size())
    throw Error("shape", "hypersurface/class count mismatch");
  Ambient y = x;
  y.kind = "cut";
  y.label = label;
  y.dim -= static_cast<int>(hypersurfaces.size());
  for (size_t i = 0; i < hypersurfaces.size(); ++i) {
    y.equations.push_back(hypersurfaces[i]);
    for (size_t b = 0; b < y.anticanonical.size(); ++b)
      y.anticanonical[b] -= classes[i].deg[b];
  }
  return y;
}

std::vector<std::vector<int>> enumerate_monomials(const Ambient& x,
                                                  const DivisorClass& d) {
  if (d.deg.size() != x.block_sizes.size())
    throw Error("shape", "divisor block count mismatch");
  std::vector<std::vector<int>> acc{{}};
  for (size_t b = 0; b < x.block_sizes.size(); ++b) {
    int nv = x.block_sizes[b], deg = d.deg[b];
    // compositions of deg into nv parts, lex
    std::vector<std::vector<int>> parts;
    std::vector<int> cur(nv, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == nv - 1) {
        cur[i] = left;
        parts.push_back(cur);
        return;
      }
      for (int c = 0; c <= left; ++c) {
        cur[i] = c;
        rec(i + 1, left - c);
      }
      cur[i] = 0;
    };
    rec(0, deg);
    std::vector<std::vector<int>> next;
    for (const auto& head : acc)
      for (const auto& tail : parts) {
        std::vector<int> e = head;
        e.insert(e.end(), tail.begin(), tail.end());
        next.push_back(std::move(e));
      }
    acc = std::move(next);
  }
  return acc;
}

FlagCurveData flag_curve(const Field& f, const std::vector<int>& ks, int n) {
  Ambient ambient = ambient_flag(f, ks, n);
  int r = static_cast<int>(ks.size());
  // basis vectors per factor, built downward from the top factor
  // v[i][j] is an n-vector of forms of degree n - k_i (0-based j)
  std::vector<std::vector<std::vector<BinForm>>> v(r);
  int kr = ks[r - 1];
  v[r - 1].assign(kr, std::vector<BinForm>(n, BinForm::zero(f)));
  for (int j = 0; j < kr; ++j)
    for (int i = 0; i <= n - kr; ++i)
      v[r - 1][j][i + j] = BinForm::monomial(f, n - kr - i, i);
  for (int fi = r - 2; fi >= 0; --fi) {
    int delta = ks[fi + 1] - ks[fi];
    BinForm sd = BinForm::monomial(f, delta, 0), td = BinForm::monomial(f, 0, delta);
    v[fi].assign(ks[fi], std::vector<BinForm>(n, BinForm::zero(f)));
    for (int j = 0; j < ks[fi]; ++j)
      for (int c = 0; c < n; ++c) {
        BinForm a = v[fi + 1][j][c] * sd;
        BinForm b = v[fi + 1][j + delta][c] * td;
        v[fi][j][c] = a.is_zero() ? b : (b.is_zero() ? a : a + b);
      }
  }
  // Plucker coordinates per factor: maximal minors in lex subset order
  std::vector<std::vector<BinForm>> blocks;
  for (int fi = 0; fi < r; ++fi) {
    std::vector<BinForm> blk;
    for (const auto& S : subsets(n, ks[fi])) {
      std::vector<std::vector<BinForm>> sub(ks[fi]);
      for (int row = 0; row < ks[fi]; ++row)
        for (int col : S) sub[row].push_back(v[fi][row][col - 1]);
      blk.push_back(form_matrix_det(sub, f));
    }
    blocks.push_back(std::move(blk));
  }
  FlagCurveData out{CurveMap(f, std::move(blocks)), std::move(ambient),
                    0, 0, false, false, SplittingType()};
  out.h_degree = 0;
  for (int fi = 0; fi < r; ++fi) {
    int knext = (fi + 1 < r) ? ks[fi + 1] : n;
    (void)knext;
    out.h_degree += ks[fi] * (n - ks[fi]);
  }
  if (out.curve.total_degree() != out.h_degree)
    throw Error("bad-curve", "flag curve block degrees are off");
  // span of the H-embedding (products of one Plucker coordinate per factor)
  {
    std::vector<std::vector<Scalar>> rows;
    std::vector<int> idx(r, 0);
    while (true) {
      BinForm prod = BinForm::constant(Scalar::one(f));
      for (int fi = 0; fi < r && !prod.is_zero(); ++fi)
        prod = prod * out.curve.blocks()[fi][idx[fi]];
      std::vector<Scalar> row(out.h_degree + 1, Scalar::zero(f));
      if (!prod.is_zero())
        for (int i = 0; i <= out.h_degree; ++i) row[i] = prod.coeff(i);
      rows.push_back(std::move(row));
      int pos = r - 1;
      while (pos >= 0) {
        if (++idx[pos] < static_cast<int>(out.curve.blocks()[pos].size()))
          break;
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    Matrix m(f, static_cast<int>(rows.size()), out.h_degree + 1);
    for (size_t rr = 0; rr < rows.size(); ++rr)
      for (int cc = 0; cc <= out.h_degree; ++cc)
        m.at(static_cast<int>(rr), cc) = rows[rr][cc];
    out.span_dim = m.rank() - 1;
    out.linearly_normal = (out.span_dim == out.h_degree);
  }
  // top-factor universal subbundle: the n x k_r matrix of basis vectors is
  // fiberwise injective, so S|_C = O(k_r - n)^(k_r)
  {
    std::vector<std::vector<BinForm>> cols(n, std::vector<BinForm>(kr, BinForm::zero(f)));
    for (int j = 0; j < kr; ++j)
      for (int c = 0; c < n; ++c) cols[c][j] = v[r - 1][j][c];
    BinForm g = maximal_minor_gcd(cols, f);
    out.universal_sub_split = !g.is_zero() && *g.degree() == 0;
    out.universal_sub = SplittingType::uniform(kr - n, kr);
  }
  return out;
}

CurveMap product_curve(const Field& f, const std::vector<int>& dims) {
  std::vector<std::vector<BinForm>> blocks;
  for (int a : dims) {
    if (a < 1) throw Error("bad-arg", "factor dimension must be >= 1");
    std::vector<BinForm> blk;
    for (int i = 0; i <= a; ++i) blk.push_back(BinForm::monomial(f, a - i, i));
    blocks.push_back(std::move(blk));
  }
  return CurveMap(f, std::move(blocks));
}

namespace {

// l-values realizable by weight-a monomials under the b-sequence.
std::vector<bool> wps_reachable(const std::vector<int>& weights, int a,
                                const std::vector<int>& b) {
  int m = static_cast<int>(weights.size()) - 1;
  long ma = static_cast<long>(m) * a;
  std::vector<bool> reach(ma + 1, false);
  std::vector<int> cur(m + 1, 0);
  std::function<void(int, int, long)> rec = [&](int i, int left, long l) {
    if (i == m) {
      if (left % weights[m] == 0) {
        long ll = l + static_cast<long>(left / weights[m]) * b[m];
        if (ll >= 0 && ll <= ma) reach[ll] = true;
      }
      return;
    }
    for (int c = 0; c * weights[i] <= left; ++c)
      rec(i + 1, left - c * weights[i], l + static_cast<long>(c) * b[i]);
  };
  rec(0, a, 0);
  return reach;
}

}  // namespace

void wps_validate_b(const std::vector<int>& weights, int a,
                    const std::vector<int>& b) {
  int m = static_cast<int>(weights.size()) - 1;
  if (static_cast<int>(b.size()) != m + 1)
    throw Error("bad-arg", "b-sequence length mismatch");
  for (int i = 0; i <= m; ++i)
    if (b[i] < 0 || b[i] > m * weights[i])
      throw Error("invalid-b-sequence",
                  "b_" + std::to_string(i) + " out of range [0, m*a_i]");
  auto reach = wps_reachable(weights, a, b);
  for (size_t l = 0; l < reach.size(); ++l)
    if (!reach[l])
      throw Error("invalid-b-sequence",
                  "l=" + std::to_string(l) + " is not expressible");
}

std::optional<std::vector<int>> wps_b_search(const std::vector<int>& weights,
                                             int a) {
  int m = static_cast<int>(weights.size()) - 1;
  std::vector<int> b(m + 1, 0);
  long budget = 4000000;
  std::function<std::optional<std::vector<int>>(int)> rec =
      [&](int i) -> std::optional<std::vector<int>> {
    if (i > m) {
      if (--budget < 0)
        throw Error("search-budget", "b-sequence search budget exhausted");
      auto reach = wps_reachable(weights, a, b);
      for (bool r : reach)
        if (!r) return std::nullopt;
      return b;
    }
    for (int v = 0; v <= m * weights[i]; ++v) {
      b[i] = v;
      if (auto found = rec(i + 1)) return found;
    }
    b[i] = 0;
    return std::nullopt;
  };
  return rec(0);
}

WpsCurveData wps_curve(const Field& f, const std::vector<int>& weights, int a,
                       const std::vector<int>& b) {
  wps_validate_b(weights, a, b);
  WpsAmbient amb = ambient_wps(f, weights, a);
  int m = static_cast<int>(weights.size()) - 1;
  long ma = static_cast<long>(m) * a;
  std::vector<BinForm> blk;
  std::set<long> distinct;
  for (const auto& e : amb.coord_exponents) {
    long l = 0;
    for (int i = 0; i <= m; ++i) l += static_cast<long>(e[i]) * b[i];
    distinct.insert(l);
    blk.push_back(BinForm::monomial(f, static_cast<int>(l),
                                    static_cast<int>(ma - l)));
  }
  WpsCurveData out{CurveMap(f, {std::move(blk)}), std::move(amb), b};
  out.degree = static_cast<int>(ma);
  out.span_dim = static_cast<int>(distinct.size()) - 1;
  out.linearly_normal = (out.span_dim == static_cast<int>(ma));
  return out;
}

std::vector<std::vector<BinForm>> jacobian_along(const Ambient& x,
                                                 const CurveMap& c) {
  auto coords = c.coordinates();
  std::vector<std::vector<BinForm>> jac;
  for (const MPoly& eq : x.equations) {
    std::vector<BinForm> row;
    for (int i = 0; i < x.total_coords(); ++i)
      row.push_back(eq.derivative(i).eval_forms(coords));
    jac.push_back(std::move(row));
  }
  return jac;
}

namespace {

// Greedy row subset achieving rank = target at random points; falls back to
// all rows. Keeps the Jacobian certificates and gradient-column models small.
std::vector<int> trim_rows(const std::vector<std::vector<BinForm>>& jac,
                           int target, const Field& f) {
  int rows = static_cast<int>(jac.size());
  std::vector<int> all(rows);
  for (int i = 0; i < rows; ++i) all[i] = i;
  if (rows == 0 || target <= 0) return {};
  Rng rng(0x7472696dull);
  for (int attempt = 0; attempt < 3; ++attempt) {
    Scalar s0 = rng.nonzero_scalar(f), t0 = rng.scalar(f);
    int cols = static_cast<int>(jac[0].size());
    std::vector<int> kept;
    Matrix acc(f, 0, 0);
    for (int r = 0; r < rows && static_cast<int>(kept.size()) < target; ++r) {
      std::vector<int> trial = kept;
      trial.push_back(r);
      Matrix m(f, static_cast<int>(trial.size()), cols);
      for (size_t rr = 0; rr < trial.size(); ++rr)
        for (int cc = 0; cc < cols; ++cc)
          if (!jac[trial[rr]][cc].is_zero())
            m.at(static_cast<int>(rr), cc) = jac[trial[rr]][cc].eval(s0, t0);
      if (m.rank() == static_cast<int>(trial.size())) kept = trial;
    }
    if (static_cast<int>(kept.size()) == target) return kept;
  }
  return all;
}

Matrix eval_rows(const std::vector<std::vector<BinForm>>& jac,
                 const std::vector<int>& rows, const Scalar& s0,
                 const Scalar& t0, const Field& f) {
  int cols = jac.empty() ? 0 : static_cast<int>(jac[0].size());
  Matrix m(f, static_cast<int>(rows.size()), cols);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < cols; ++c)
      if (!jac[rows[r]][c].is_zero())
        m.at(static_cast<int>(r), c) = jac[rows[r]][c].eval(s0, t0);
  return m;
}

}  // namespace

AlongCurveCert validate_along_curve(const Ambient& x, const CurveMap& c) {
  AlongCurveCert cert;
  cert.codim = x.codim();
  if (static_cast<int>(c.blocks().size()) != static_cast<int>(x.block_sizes.size()))
    throw Error("shape", "curve/ambient block count mismatch");
  for (size_t b = 0; b < x.block_sizes.size(); ++b)
    if (static_cast<int>(c.blocks()[b].size()) != x.block_sizes[b])
      throw Error("shape", "curve/ambient block size mismatch");
  auto coords = c.coordinates();
  cert.contained = true;
  for (const MPoly& eq : x.equations) {
    if (!eq.eval_forms(coords).is_zero()) {
      cert.contained = false;
      cert.violated_equation = eq.str();
      cert.detail = "equation does not vanish on the curve: " + eq.str();
      return cert;
    }
  }
  if (cert.codim == 0) {
    cert.smooth = true;
    return cert;
  }
  auto jac = jacobian_along(x, c);
  Rng rng(0x76616c69ull);
  std::vector<int> all_rows(jac.size());
  for (size_t i = 0; i < jac.size(); ++i) all_rows[i] = static_cast<int>(i);
  for (int tries = 0; tries < 3; ++tries) {
    Scalar s0 = rng.nonzero_scalar(x.field), t0 = rng.scalar(x.field);
    int rk = eval_rows(jac, all_rows, s0, t0, x.field).rank();
    if (rk != cert.codim) {
      cert.smooth = false;
      cert.detail = "Jacobian rank " + std::to_string(rk) + " != codim " +
                    std::to_string(cert.codim) + " at (" + s0.str() + ":" +
                    t0.str() + ")";
      return cert;
    }
  }
  // Constant-rank certificate by random compression: rank(R J S) >= codim
  // everywhere forces rank(J) >= codim everywhere (pointwise matrix
  // product). The compression keeps a margin of two rows and columns so the
  // moving column space of J only meets the compression kernels on a locus
  // a random choice misses; an unlucky compression can only lose rank, so
  // retry. Rows and columns of J carry different degrees on cut ambients,
  // so the compression entries are degree-compensating random forms.
  BinForm g = BinForm::zero(x.field);
  int k = cert.codim;
  int rows_n = static_cast<int>(jac.size());
  int cols_n = x.total_coords();
  int rc = std::min(rows_n, k + 2), sc = std::min(cols_n, k + 2);
  auto coords_all = c.coordinates();
  std::vector<int> row_deg(rows_n, 0), col_deg(cols_n, 0);
  {
    int pos = 0;
    for (size_t bl = 0; bl < x.block_sizes.size(); ++bl)
      for (int i = 0; i < x.block_sizes[bl]; ++i)
        col_deg[pos++] = -c.block_degrees()[bl];
    for (int i = 0; i < rows_n; ++i) {
      auto md = x.equations[i].multidegree(x.block_sizes);
      long dd = 0;
      for (size_t bl = 0; bl < md.size(); ++bl)
        dd += static_cast<long>(md[bl]) * c.block_degrees()[bl];
      row_deg[i] = static_cast<int>(dd);
    }
  }
  int rmax = *std::max_element(row_deg.begin(), row_deg.end());
  int cmax = *std::max_element(col_deg.begin(), col_deg.end());
  bool compress_rows = rc < rows_n, compress_cols = sc < cols_n;
  for (int attempt = 0; attempt < 4 && !cert.smooth; ++attempt) {
    // J S first (rows_n x sc), then R (J S)
    std::vector<std::vector<BinForm>> js;
    if (compress_cols) {
      std::vector<std::vector<BinForm>> S(
          cols_n, std::vector<BinForm>(sc, BinForm::zero(x.field)));
      for (int j = 0; j < cols_n; ++j)
        for (int cc = 0; cc < sc; ++cc)
          S[j][cc] = BinForm::random(x.field, cmax - col_deg[j], rng);
      js.assign(rows_n, std::vector<BinForm>(sc, BinForm::zero(x.field)));
      for (int i = 0; i < rows_n; ++i)
        for (int j = 0; j < cols_n; ++j) {
          if (jac[i][j].is_zero()) continue;
          for (int cc = 0; cc < sc; ++cc) {
            if (S[j][cc].is_zero()) continue;
            BinForm term = jac[i][j] * S[j][cc];
            js[i][cc] = js[i][cc].is_zero() ? term : js[i][cc] + term;
          }
        }
    } else {
      js = jac;
      sc = cols_n;
    }
    std::vector<std::vector<BinForm>> compressed;
    if (compress_rows) {
      std::vector<std::vector<BinForm>> R(
          rc, std::vector<BinForm>(rows_n, BinForm::zero(x.field)));
      for (int r = 0; r < rc; ++r)
        for (int i = 0; i < rows_n; ++i)
          R[r][i] = BinForm::random(x.field, rmax - row_deg[i], rng);
      compressed.assign(rc, std::vector<BinForm>(sc, BinForm::zero(x.field)));
      for (int r = 0; r < rc; ++r)
        for (int cc = 0; cc < sc; ++cc) {
          BinForm acc = BinForm::zero(x.field);
          for (int i = 0; i < rows_n; ++i) {
            if (js[i][cc].is_zero() || R[r][i].is_zero()) continue;
            BinForm term = js[i][cc] * R[r][i];
            acc = acc.is_zero() ? term : acc + term;
          }
          compressed[r][cc] = acc;
        }
    } else {
      compressed = std::move(js);
    }
    g = minor_gcd_of_size(compressed, k, x.field);
    cert.smooth = !g.is_zero() && *g.degree() == 0;
    if (!compress_rows && !compress_cols) break;  // deterministic, no retry
  }
  if (!cert.smooth) {
    cert.detail = "Jacobian rank drops";
    if (!g.is_zero())
      if (auto root = find_projective_root(g))
        cert.detail += " at (" + root->first.str() + ":" +
                       root->second.str() + ")";
  }
  return cert;
}

namespace {

struct GradientColumns {
  BundleMap w;  // + O(-delta_q) -> model splitting
};

// Columns (dF_q/dx)(f) expressed in the given model, ordered by descending
// pullback degree so the source splitting type stays ascending.
BundleMap gradient_columns(const Ambient& x, const CurveMap& c,
                           const SubbundleModel& model,
                           const std::vector<int>& eq_rows) {
  const Field f = x.field;
  auto coords = c.coordinates();
  struct Col {
    long delta;
    std::vector<BinForm> u;
  };
  std::vector<Col> cols;
  for (int q : eq_rows) {
    const MPoly& eq = x.equations[q];
    auto md = eq.multidegree(x.block_sizes);
    long delta = 0;
    for (size_t b = 0; b < md.size(); ++b)
      delta += static_cast<long>(md[b]) * c.block_degrees()[b];
    std::vector<BinForm> per_coord;
    for (int i = 0; i < x.total_coords(); ++i)
      per_coord.push_back(eq.derivative(i).eval_forms(coords));
    Section grad = section_from_coordinate_forms(c, per_coord);
    std::vector<BinForm> u;
    try {
      u = model.express(grad, static_cast<int>(delta));
    } catch (const Error& e) {
      throw Error("gradient-outside-model",
                  std::string("equation gradient lies outside the model (") +
                      e.what() + ")");
    }
    cols.push_back({delta, std::move(u)});
  }
  std::stable_sort(cols.begin(), cols.end(),
                   [](const Col& a, const Col& b) { return a.delta > b.delta; });
  std::vector<int> src;
  for (const Col& col : cols) src.push_back(static_cast<int>(-col.delta));
  int rows = model.generator_count();
  std::vector<std::vector<BinForm>> entries(
      rows, std::vector<BinForm>(cols.size(), BinForm::zero(f)));
  for (size_t qc = 0; qc < cols.size(); ++qc)
    for (int l = 0; l < rows; ++l) entries[l][qc] = cols[qc].u[l];
  return BundleMap(f, SplittingType(src), model.inferred(), std::move(entries));
}

std::vector<int> trimmed_equations(const Ambient& x, const CurveMap& c) {
  if (x.equations.empty()) return {};
  auto jac = jacobian_along(x, c);
  return trim_rows(jac, x.codim(), x.field);
}

}  // namespace

TangentData tangent_splitting(const Ambient& x, const CurveMap& c) {
  auto cert = validate_along_curve(x, c);
  if (!cert.ok())
    throw Error("not-smooth-along-curve", cert.detail.empty()
                                              ? "validation failed"
                                              : cert.detail);
  SubbundleModel model = euler_cotangent_model(c);
  BundleMap w = gradient_columns(x, c, model, trimmed_equations(x, c));
  CokernelModel cok = cokernel_model(w);
  TangentData out;
  out.omega = cok.splitting;
  out.tangent = cok.splitting.dual();
  out.kxc = out.tangent.degree();
  mpq_class expected = x.anticanonical_dot(c.block_degrees());
  if (expected != out.kxc)
    throw Error("anticanonical-mismatch",
                "deg TX|_C = " + std::to_string(out.kxc) +
                    " but the class table gives " + expected.get_str());
  if (out.tangent.rank() != x.dim)
    throw Error("rank-mismatch", "TX|_C rank != dim X");
  return out;
}

ConormalData conormal_in_ambient(const Ambient& x, const CurveMap& c) {
  if (x.dim < 2)
    throw Error("bad-arg", "conormal computation needs dim X >= 2");
  auto cert = validate_along_curve(x, c);
  if (!cert.ok())
    throw Error("not-smooth-along-curve", cert.detail.empty()
                                              ? "validation failed"
                                              : cert.detail);
  SubbundleModel model = conormal_pn_model(c);
  BundleMap w = gradient_columns(x, c, model, trimmed_equations(x, c));
  CokernelModel cok = cokernel_model(w);
  ConormalData out{std::move(model), cok.splitting, cok.splitting.dual(),
                   std::move(cok.quotient)};
  if (out.normal.rank() != x.dim - 1)
    throw Error("rank-mismatch",
                "N_{C|X} rank " + std::to_string(out.normal.rank()) +
                    " != dim X - 1 (ideal generators insufficient along C?)");
  mpq_class expected = x.anticanonical_dot(c.block_degrees()) - 2;
  if (expected != out.normal.degree())
    throw Error("rank-mismatch",
                "deg N_{C|X} != -K_X.C - 2 (got " +
                    std::to_string(out.normal.degree()) + ", expected " +
                    expected.get_str() + ")");
  return out;
}

}  // namespace p1b
