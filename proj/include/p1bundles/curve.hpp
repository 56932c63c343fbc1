#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p1bundles/subbundle.hpp"

namespace p1b {

// Parametrized rational curve in a product of projective spaces: one block
// of coordinate forms per factor, all forms in a block of a common degree
// e_j >= 1 (zero coordinates allowed).
class CurveMap {
 public:
  CurveMap(const Field& f, std::vector<std::vector<BinForm>> blocks);

  static CurveMap rational_normal(const Field& f, int degree, int ambient_dim);

  const Field& field() const { return field_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<BinForm>>& blocks() const { return blocks_; }
  const std::vector<int>& block_degrees() const { return degrees_; }
  // projective dimension of each factor (block size - 1)
  std::vector<int> block_dims() const;
  int total_degree() const;  // H-degree, sum of block degrees

  // All coordinates across blocks, flattened.
  std::vector<BinForm> coordinates() const;

  // Precompose every coordinate with (s,t) -> (a s + b t, c s + d t).
  CurveMap precompose(const Scalar& a, const Scalar& b, const Scalar& c,
                      const Scalar& d) const;

 private:
  Field field_;
  std::vector<std::vector<BinForm>> blocks_;
  std::vector<int> degrees_;
};

struct CurveCertificate {
  bool basepoint_free = false;
  bool immersion = false;
  std::string detail;  // names a common root / offending block on failure
  bool ok() const { return basepoint_free && immersion; }
};

// gcd certificates: each block has no common zero, and the 2 x N Jacobian of
// all coordinates has rank 2 everywhere (gcd of 2x2 minors constant).
CurveCertificate validate_curve(const CurveMap& c);

// Model of f^* Omega_X for X the product of projective spaces: kernel of the
// per-block Euler rows (sum_i g_{j,i} f_{j,i} = 0) on + O(-e_j)^(n_j+1).
SubbundleModel euler_cotangent_model(const CurveMap& c);

// Model of N^*_{C|X}: Euler rows plus the two derivative rows
// (sum g_l ds f_l = 0 and sum g_l dt f_l = 0), both imposed so the model is
// correct in any characteristic.
SubbundleModel conormal_pn_model(const CurveMap& c);

// The stacked defining maps themselves (target O^blocks, resp. O^blocks +
// O(-1)^2), used by the ambient machinery.
BundleMap euler_rows_map(const CurveMap& c);
BundleMap conormal_rows_map(const CurveMap& c);

// Reorders per-coordinate forms (block-major coordinate order) into the
// column layout of the pullback bundle + O(-e_j)^(n_j+1) used by the models.
Section section_from_coordinate_forms(const CurveMap& c,
                                      const std::vector<BinForm>& per_coord);

// Coordinate of sum g_l d f_l in the trivialization of Omega_P1(2) by
// s dt - t ds: returns (sum g_l dt f_l)/s = -(sum g_l ds f_l)/t, a form of
// degree d - 2. Requires g to satisfy every Euler row.
BinForm differential_form(const CurveMap& c, const Section& g, int d);

// The canonical RNC conormal basis: dx_i coordinate tuples (i > e) and the
// q_i = s^2 dx_{i+2} + t^2 dx_i - 2 s t dx_{i+1} tuples (0 <= i <= e-2),
// as sections of the conormal model at twists e and e+2.
Section rnc_dx_section(const Field& f, int e, int n, int i);
Section rnc_q_section(const Field& f, int e, int n, int i);

}  // namespace p1b
