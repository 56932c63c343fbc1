#pragma once

#include <optional>
#include <vector>

#include "p1bundles/bundle_map.hpp"

namespace p1b {

// Identification of a subsheaf K of a split bundle E with an explicit split
// bundle: column l of the generator matrix G is a section tuple of E(d_l),
// and K = O(-d_1) + ... + O(-d_L). Columns are stored with twists descending
// so that column l corresponds to entry l of inferred() (ascending).
class SubbundleModel {
 public:
  SubbundleModel(const Field& f, SplittingType ambient,
                 std::vector<int> twists, std::vector<Section> columns,
                 std::optional<BundleMap> defining);

  const Field& field() const { return field_; }
  const SplittingType& ambient() const { return ambient_; }
  const SplittingType& inferred() const { return inferred_; }
  const std::vector<int>& twists() const { return twists_; }
  int generator_count() const { return static_cast<int>(columns_.size()); }
  const Section& column(int l) const { return columns_[l]; }
  const std::optional<BundleMap>& defining_map() const { return defining_; }

  // Generator matrix as a bundle map K -> E (fiberwise injective).
  BundleMap inclusion() const;

  // Basis of H^0(K(d)): every monomial multiple of every generator.
  std::vector<Section> section_basis(int d) const;
  // Same sections, as coefficient vectors in E(d)'s monomial layout.
  Matrix section_basis_matrix(int d) const;

  // Coefficients u (one form per generator, deg u_l = twist_of(v) - d_l) with
  // G u = v. Throws "not-in-model" when v is not a section of K.
  std::vector<BinForm> express(const Section& v, int twist) const;

  // Certificates: G is fiberwise injective and M G = 0 for the defining map.
  bool check_injective() const;
  bool check_annihilated() const;

 private:
  Field field_;
  SplittingType ambient_;
  std::vector<int> twists_;        // descending
  std::vector<Section> columns_;   // aligned with twists_
  SplittingType inferred_;         // entries -twists_, ascending
  std::optional<BundleMap> defining_;
};

// Minimal free-module generators of ker(M) scanned twist by twist. Throws
// "kernel-model-unstable" if the generator count or the Hilbert verification
// window past the search bound fails (non-constant-rank degeneration).
SubbundleModel kernel_model(const BundleMap& m);

struct CokernelModel {
  SplittingType splitting;  // coker(M) as a bundle
  BundleMap quotient;       // F -> Q, fiberwise surjective, kills im(M)
};

// Quotient of the target by the saturation of the image, computed through
// the kernel model of the transposed dual.
CokernelModel cokernel_model(const BundleMap& m);

struct GenericKernelResult {
  SplittingType splitting;                // twist-wise h^0-minimal profile
  std::vector<SplittingType> per_trial;   // observed per-trial splittings
  int generic_rank = 0;                   // of the sampled maps (max)
};

// Monte-Carlo generic kernel splitting of maps E -> F; by semicontinuity the
// reported type h^0-dominates the true generic type and equals it with high
// probability over a large field.
GenericKernelResult generic_kernel_splitting(const Field& f,
                                             const SplittingType& E,
                                             const SplittingType& F,
                                             int trials, Rng& rng);

// The explicit fiberwise-surjective witness E -> O(b) with globally
// generated kernel (requires 0 <= a_i <= b, sum a_i >= b, rank > 1).
BundleMap phi_witness(const Field& f, const SplittingType& E, int b);

}  // namespace p1b
