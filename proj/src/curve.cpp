#include "p1bundles/curve.hpp"

#include <algorithm>
#include <tuple>

namespace p1b {

CurveMap::CurveMap(const Field& f, std::vector<std::vector<BinForm>> blocks)
    : field_(f), blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error("bad-curve", "curve needs at least one block");
  for (const auto& blk : blocks_) {
    if (blk.empty()) throw Error("bad-curve", "empty coordinate block");
    int deg = -1;
    for (const BinForm& g : blk) {
      if (g.is_zero()) continue;
      if (deg < 0)
        deg = *g.degree();
      else if (*g.degree() != deg)
        throw Error("bad-curve", "unequal degrees within a block");
    }
    if (deg < 1)
      throw Error("bad-curve", "block must contain a form of degree >= 1");
    degrees_.push_back(deg);
  }
}

CurveMap CurveMap::rational_normal(const Field& f, int degree,
                                   int ambient_dim) {
  if (degree < 1 || ambient_dim < degree)
    throw Error("bad-curve", "rational normal curve needs 1 <= e <= n");
  std::vector<BinForm> blk;
  for (int i = 0; i <= degree; ++i)
    blk.push_back(BinForm::monomial(f, degree - i, i));
  for (int i = degree + 1; i <= ambient_dim; ++i)
    blk.push_back(BinForm::zero(f));
  return CurveMap(f, {std::move(blk)});
}

std::vector<int> CurveMap::block_dims() const {
  std::vector<int> dims;
  for (const auto& blk : blocks_)
    dims.push_back(static_cast<int>(blk.size()) - 1);
  return dims;
}

int CurveMap::total_degree() const {
  int d = 0;
  for (int e : degrees_) d += e;
  return d;
}

std::vector<BinForm> CurveMap::coordinates() const {
  std::vector<BinForm> out;
  for (const auto& blk : blocks_)
    out.insert(out.end(), blk.begin(), blk.end());
  return out;
}

CurveMap CurveMap::precompose(const Scalar& a, const Scalar& b,
                              const Scalar& c, const Scalar& d) const {
  std::vector<std::vector<BinForm>> blocks;
  for (const auto& blk : blocks_) {
    std::vector<BinForm> nb;
    for (const BinForm& g : blk) nb.push_back(g.compose(a, b, c, d));
    blocks.push_back(std::move(nb));
  }
  return CurveMap(field_, std::move(blocks));
}

CurveCertificate validate_curve(const CurveMap& c) {
  CurveCertificate cert;
  const Field f = c.field();
  cert.basepoint_free = true;
  for (int j = 0; j < c.block_count(); ++j) {
    BinForm g = BinForm::zero(f);
    for (const BinForm& coord : c.blocks()[j]) g = form_gcd(g, coord);
    if (g.is_zero() || *g.degree() > 0) {
      cert.basepoint_free = false;
      cert.detail = "block " + std::to_string(j) + " has common factor " +
                    g.str();
      if (auto root = find_projective_root(g))
        cert.detail += " vanishing at (" + root->first.str() + ":" +
                       root->second.str() + ")";
      break;
    }
  }
  // Jacobian rank 2 everywhere: gcd of all 2x2 minors of the 2 x N matrix
  // (ds f_i; dt f_i) is a nonzero constant.
  auto coords = c.coordinates();
  BinForm g = BinForm::zero(f);
  bool constant_found = false;
  for (size_t i = 0; i < coords.size() && !constant_found; ++i)
    for (size_t j = i + 1; j < coords.size() && !constant_found; ++j) {
      BinForm minor =
          coords[i].ds() * coords[j].dt() - coords[i].dt() * coords[j].ds();
      g = form_gcd(g, minor);
      if (!g.is_zero() && *g.degree() == 0) constant_found = true;
    }
  cert.immersion = constant_found;
  if (!constant_found) {
    std::string where = g.is_zero() ? "the Jacobian minors all vanish"
                                    : "Jacobian minors share factor " + g.str();
    if (!g.is_zero())
      if (auto root = find_projective_root(g))
        where += " vanishing at (" + root->first.str() + ":" +
                 root->second.str() + ")";
    if (cert.detail.empty())
      cert.detail = where;
    else
      cert.detail += "; " + where;
  }
  return cert;
}

namespace {

// + O(-e_j)^(n_j+1), ascending entries are all -e_j; keep block-major order
// (SplittingType sorts, so build entries so sorting is stable for us: we use
// the natural block-major order and rely on the map construction below using
// the same order).
SplittingType pullback_bundle(const CurveMap& c) {
  std::vector<int> e;
  for (int j = 0; j < c.block_count(); ++j)
    for (size_t i = 0; i < c.blocks()[j].size(); ++i)
      e.push_back(-c.block_degrees()[j]);
  return SplittingType(std::move(e));
}

// Column index of coordinate (block j, index i) inside the splitting above.
// SplittingType sorts ascending = by -e_j; blocks with equal degree keep
// their relative order only if we account for the sort. To keep the mapping
// simple we order columns by (-e_j, block index, coordinate index), matching
// std::sort's stable behavior on our construction order... std::sort is not
// stable; build the permutation explicitly instead.
struct ColumnLayout {
  std::vector<std::pair<int, int>> source_of;  // column -> (block, coord)
  std::vector<std::vector<int>> column_of;     // (block, coord) -> column
};

ColumnLayout column_layout(const CurveMap& c) {
  // columns sorted by ascending -e_j, ties by block then coordinate
  std::vector<std::tuple<int, int, int>> keys;
  for (int j = 0; j < c.block_count(); ++j)
    for (int i = 0; i < static_cast<int>(c.blocks()[j].size()); ++i)
      keys.emplace_back(-c.block_degrees()[j], j, i);
  std::sort(keys.begin(), keys.end());
  ColumnLayout layout;
  layout.column_of.resize(c.block_count());
  for (int j = 0; j < c.block_count(); ++j)
    layout.column_of[j].resize(c.blocks()[j].size());
  for (size_t col = 0; col < keys.size(); ++col) {
    auto [neg, j, i] = keys[col];
    layout.source_of.emplace_back(j, i);
    layout.column_of[j][i] = static_cast<int>(col);
  }
  return layout;
}

BundleMap stacked_rows_map(const CurveMap& c, bool with_derivatives) {
  const Field f = c.field();
  SplittingType E = pullback_bundle(c);
  ColumnLayout layout = column_layout(c);
  int r = c.block_count();
  int rows = r + (with_derivatives ? 2 : 0);
  // target: O^r + (O(-1)^2 if derivatives); ascending order puts the -1s
  // first, so build target entries and row mapping accordingly.
  std::vector<int> tgt_entries;
  int deriv_row_base = 0;
  if (with_derivatives) {
    tgt_entries = {-1, -1};
    deriv_row_base = 0;
  }
  for (int j = 0; j < r; ++j) tgt_entries.push_back(0);
  int euler_row_base = with_derivatives ? 2 : 0;
  SplittingType T(tgt_entries);

  std::vector<std::vector<BinForm>> m(
      rows, std::vector<BinForm>(E.rank(), BinForm::zero(f)));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < static_cast<int>(c.blocks()[j].size()); ++i) {
      int col = layout.column_of[j][i];
      const BinForm& coord = c.blocks()[j][i];
      m[euler_row_base + j][col] = coord;  // Euler row of block j
      if (with_derivatives) {
        m[deriv_row_base + 0][col] = coord.ds();
        m[deriv_row_base + 1][col] = coord.dt();
      }
    }
  return BundleMap(f, E, T, std::move(m));
}

}  // namespace

BundleMap euler_rows_map(const CurveMap& c) {
  return stacked_rows_map(c, false);
}

BundleMap conormal_rows_map(const CurveMap& c) {
  return stacked_rows_map(c, true);
}

Section section_from_coordinate_forms(const CurveMap& c,
                                      const std::vector<BinForm>& per_coord) {
  ColumnLayout layout = column_layout(c);
  if (per_coord.size() != layout.source_of.size())
    throw Error("shape", "coordinate form count mismatch");
  Section out;
  out.reserve(per_coord.size());
  size_t flat_base = 0;
  std::vector<size_t> block_base(c.block_count());
  for (int j = 0; j < c.block_count(); ++j) {
    block_base[j] = flat_base;
    flat_base += c.blocks()[j].size();
  }
  for (auto [j, i] : layout.source_of)
    out.push_back(per_coord[block_base[j] + i]);
  return out;
}

SubbundleModel euler_cotangent_model(const CurveMap& c) {
  return kernel_model(euler_rows_map(c));
}

SubbundleModel conormal_pn_model(const CurveMap& c) {
  return kernel_model(conormal_rows_map(c));
}

BinForm differential_form(const CurveMap& c, const Section& g, int d) {
  const Field f = c.field();
  ColumnLayout layout = column_layout(c);
  SplittingType E = pullback_bundle(c);
  if (static_cast<int>(g.size()) != E.rank())
    throw Error("shape", "section length mismatch");
  for (int i = 0; i < E.rank(); ++i)
    if (!g[i].is_zero() && *g[i].degree() != E.entries()[i] + d)
      throw Error("degree-mismatch",
                  "section component degree does not match twist " +
                      std::to_string(d));
  // check Euler rows, then map through the derivative rows
  BinForm u = BinForm::zero(f), v = BinForm::zero(f);
  for (int j = 0; j < c.block_count(); ++j) {
    BinForm euler = BinForm::zero(f);
    for (int i = 0; i < static_cast<int>(c.blocks()[j].size()); ++i) {
      const BinForm& coord = c.blocks()[j][i];
      const BinForm& gi = g[layout.column_of[j][i]];
      if (gi.is_zero()) continue;
      auto add = [](BinForm& acc, const BinForm& t) {
        if (t.is_zero()) return;
        acc = acc.is_zero() ? t : acc + t;
      };
      add(euler, gi * coord);
      add(u, gi * coord.ds());
      add(v, gi * coord.dt());
    }
    if (!euler.is_zero())
      throw Error("not-in-model",
                  "section violates the Euler row of block " + std::to_string(j));
  }
  if (u.is_zero() && v.is_zero()) return BinForm::zero(f);
  BinForm s = BinForm::monomial(f, 1, 0), t = BinForm::monomial(f, 0, 1);
  BinForm h = v.is_zero() ? BinForm::zero(f) : v.exact_div(s);
  BinForm h2 = u.is_zero() ? BinForm::zero(f) : (-u).exact_div(t);
  if (!(h == h2))
    throw Error("not-in-model",
                "derivative coordinates disagree; Euler rows violated");
  return h;
}

Section rnc_dx_section(const Field& f, int e, int n, int i) {
  if (i <= e || i > n) throw Error("bad-arg", "dx_i needs e < i <= n");
  Section s(n + 1, BinForm::zero(f));
  s[i] = BinForm::constant(Scalar::one(f));
  return s;
}

Section rnc_q_section(const Field& f, int e, int n, int i) {
  if (i < 0 || i > e - 2) throw Error("bad-arg", "q_i needs 0 <= i <= e-2");
  Section s(n + 1, BinForm::zero(f));
  s[i] = BinForm::monomial(f, 0, 2);                                   // t^2
  s[i + 1] = BinForm::monomial(f, 1, 1, Scalar::of_int(-2, f));        // -2st
  s[i + 2] = BinForm::monomial(f, 2, 0);                               // s^2
  return s;
}

}  // namespace p1b
