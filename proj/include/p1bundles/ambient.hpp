#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p1bundles/curve.hpp"
#include "p1bundles/mpoly.hpp"

namespace p1b {

// Divisor class on an ambient: a nonnegative multiple of the hyperplane
// class per coordinate block.
struct DivisorClass {
  std::vector<int> deg;

  long dot(const std::vector<int>& curve_degrees) const {
    if (deg.size() != curve_degrees.size())
      throw Error("shape", "divisor/curve block count mismatch");
    long v = 0;
    for (size_t i = 0; i < deg.size(); ++i)
      v += static_cast<long>(deg[i]) * curve_degrees[i];
    return v;
  }
  std::string str() const;
};

// An embedded variety: coordinate blocks (multigrading), explicit ideal
// generators, dimension, and anticanonical class in block hyperplane units.
struct Ambient {
  std::string label;
  std::string kind;  // projective | product | grassmannian | flag | wps | cut
  std::vector<int> params;
  std::vector<int> block_sizes;  // coordinates per block
  int dim = 0;
  int gen_degree = 0;  // max ideal generator H-degree
  std::vector<MPoly> equations;
  std::vector<mpq_class> anticanonical;  // coefficient per block
  Field field;
  bool cataloged = true;

  int total_coords() const;
  int projective_dim() const;  // sum of (block_size - 1)
  int codim() const { return projective_dim() - dim; }
  mpq_class anticanonical_dot(const std::vector<int>& curve_degrees) const;
  // -K_X - sum D_i has positive coefficient on every block.
  bool fano_after(const std::vector<DivisorClass>& divisors) const;
};

Ambient ambient_projective(const Field& f, int n);
Ambient ambient_product(const Field& f, const std::vector<int>& dims);
Ambient ambient_grassmannian(const Field& f, int k, int n);
Ambient ambient_flag(const Field& f, const std::vector<int>& ks, int n);

struct WpsAmbient {
  Ambient ambient;
  // exponent vector of each embedded coordinate (weight-a monomials, lex)
  std::vector<std::vector<int>> coord_exponents;
  std::vector<int> weights;
  int a = 0;
};
WpsAmbient ambient_wps(const Field& f, const std::vector<int>& weights, int a);

// X cut down by extra hypersurfaces (complete intersection pieces): dim and
// anticanonical adjust by the divisor classes.
Ambient cut_by(const Ambient& x, const std::vector<MPoly>& hypersurfaces,
               const std::vector<DivisorClass>& classes,
               const std::string& label);

// All exponent vectors of the given multidegree, block by block, lex order.
std::vector<std::vector<int>> enumerate_monomials(const Ambient& x,
                                                  const DivisorClass& d);

// ---- cataloged curves ----

struct FlagCurveData {
  CurveMap curve;
  Ambient ambient;
  int h_degree = 0;
  int span_dim = 0;             // projective span of the H-embedding image
  bool linearly_normal = false; // span_dim == h_degree
  bool universal_sub_split = false;  // S|_C = O(k_r - n)^(k_r) certificate
  SplittingType universal_sub;
};
// The explicit very free rational normal curve on F(k_1...k_r; n) built by
// the downward basis recursion; Plucker coordinates per factor.
FlagCurveData flag_curve(const Field& f, const std::vector<int>& ks, int n);

// Rational normal curve of degree a_j in each factor of P^{a_1} x ... .
CurveMap product_curve(const Field& f, const std::vector<int>& dims);

// Smallest (lex) b-sequence making the weight-a monomials hit every power
// s^l t^(ma-l); nullopt when none exists.
std::optional<std::vector<int>> wps_b_search(const std::vector<int>& weights,
                                             int a);
// Throws "invalid-b-sequence" naming the smallest inexpressible l.
void wps_validate_b(const std::vector<int>& weights, int a,
                    const std::vector<int>& b);

struct WpsCurveData {
  CurveMap curve;  // in the embedded ambient's coordinates
  WpsAmbient ambient;
  std::vector<int> b;
  int degree = 0;      // m * a
  int span_dim = 0;
  bool linearly_normal = false;
};
WpsCurveData wps_curve(const Field& f, const std::vector<int>& weights, int a,
                       const std::vector<int>& b);

// ---- along-curve computations ----

struct AlongCurveCert {
  bool contained = false;
  std::string violated_equation;  // on containment failure
  bool smooth = false;            // constant Jacobian rank = codim along C
  int codim = 0;
  std::string detail;
  bool ok() const { return contained && smooth; }
};
AlongCurveCert validate_along_curve(const Ambient& x, const CurveMap& c);

// Jacobian of the equations pulled back along the curve: rows = equations,
// cols = flattened coordinates.
std::vector<std::vector<BinForm>> jacobian_along(const Ambient& x,
                                                 const CurveMap& c);

struct TangentData {
  SplittingType tangent;  // TX|_C
  SplittingType omega;    // Omega_X|_C
  long kxc = 0;           // -K_X . C = deg TX|_C, cross-checked vs the table
};
TangentData tangent_splitting(const Ambient& x, const CurveMap& c);

struct ConormalData {
  SubbundleModel ambient_conormal;  // N^*_{C|P} model (P the coordinate product)
  SplittingType nstar;              // N^*_{C|X} as a split bundle Q
  SplittingType normal;             // N_{C|X} = dual of nstar
  BundleMap quotient;               // conormal model -> Q, fiberwise surjective
};
ConormalData conormal_in_ambient(const Ambient& x, const CurveMap& c);

}  // namespace p1b
