#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "p1bundles/ambient.hpp"

namespace p1b {

struct IdealSections {
  std::vector<MPoly> basis;  // forms of multidegree D vanishing on C
  long monomial_count = 0;
  long expected_dim = 0;  // count - (D.C + 1)
  bool restriction_surjective = false;
};
// Exact basis of H^0(I_C(D)) at the ambient-form level.
IdealSections ideal_sections(const Ambient& x, const CurveMap& c,
                             const DivisorClass& d);

struct NstarMap {
  std::vector<MPoly> ideal_basis;
  Matrix images;  // columns: images in H^0(N*_{C|X}(delta)) coordinates
  long delta = 0;
  long target_dim = 0;
  long rank = 0;
  bool surjective = false;
  long corank = 0;
};
// The map H^0(I_C(D)) -> H^0(N*_{C|X}(D.C)) through gradients and the
// conormal quotient; every gradient tuple is certified against the model's
// defining rows before use.
NstarMap nstar_map(const Ambient& x, const CurveMap& c, const DivisorClass& d,
                   const ConormalData& cd);

struct RathmannResult {
  bool surjective = false;
  long source_dim = 0;
  long target_dim = 0;
  long rank = 0;
  long preimages_verified = 0;  // closed-form preimage identities checked
};
// Multiplication H^0(I_C(2H)) (x) H^0(O_C(b)) -> H^0(N*_{C|P^n}(2e+b)) for
// the canonical degree-e rational normal curve; also verifies the explicit
// quadric-pair preimages of the basis sections s^k t^l q_i and s^k t^l dx_i.
RathmannResult rathmann_check(const Field& f, int e, int n, int b);

// The Hankel quadric x_i x_j - x_{i+1} x_{j-1} (formal for any indices with
// 0 <= i < i+1 <= e, 0 <= j-1 < j <= e; identically zero when j = i+1).
MPoly rnc_quadric(const Field& f, int n, int i, int j);

struct SurjectionData {
  BundleMap q;  // N_{C|X} -> + O(D_i . C), fiberwise surjective
  std::vector<DivisorClass> degrees;
};

struct ConstructResult {
  std::vector<MPoly> hypersurfaces;
  Ambient y;
  SplittingType normal_in_y;
  SplittingType kernel_of_q;
  bool splittings_match = false;
  AlongCurveCert smoothness;
};
// Lifts a fiberwise-surjective q through the N*-surjectivity maps to
// hypersurfaces containing C, cuts X by them, certifies smoothness of the
// intersection along C, and compares N_{C|Y} with ker q.
ConstructResult construct_from_surjection(const Ambient& x, const CurveMap& c,
                                          const SurjectionData& qd);

struct GenericCiResult {
  SplittingType splitting;  // h^0-minimal observed N_{C|Y}
  SplittingType predicted;  // generic kernel of N_{C|X} -> + O(D_i.C)
  bool agree = false;
  int smooth_samples = 0;
  std::vector<SplittingType> per_trial;
};
GenericCiResult generic_ci_splitting(const Ambient& x, const CurveMap& c,
                                     const std::vector<DivisorClass>& degrees,
                                     int trials, Rng& rng);

struct GateData {
  long kxc = 0;        // -K_X . C from the tangent splitting
  long dc = 0;         // sum D_i . C
  int m = 0;           // dim X
  int c = 0;           // codimension cut
  long threshold = 0;  // m - c + 1
  bool pass = false;
};

struct Certificate {
  std::string ambient_label;
  std::string curve_kind;
  std::vector<int> curve_params;
  std::vector<DivisorClass> degrees;
  GateData gate;
  SplittingType splitting;
  bool smooth_along_c = false;
  bool ample = false;
  bool balanced = false;
  bool very_free = false;
  bool fano = false;             // -K_X - sum D_i positive on every block
  bool degree_hypothesis = false;  // every d_i >= max(gen degree, 3) per block
  bool cataloged = true;
  std::uint64_t field_char = 0;
  int trials = 0;
  std::uint64_t seed = 0;
};

// Full numerical gate + Monte-Carlo splitting certificate. very_free is
// gate AND ample AND smooth.
Certificate src_certificate(const Ambient& x, const CurveMap& c,
                            const std::string& curve_kind,
                            const std::vector<int>& curve_params,
                            const std::vector<DivisorClass>& degrees,
                            int trials, std::uint64_t seed);

}  // namespace p1b
