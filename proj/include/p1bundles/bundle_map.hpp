#pragma once

#include <optional>
#include <vector>

#include "p1bundles/binform.hpp"
#include "p1bundles/matrix.hpp"
#include "p1bundles/rng.hpp"
#include "p1bundles/splitting.hpp"

namespace p1b {

// A tuple of forms (g_1, ..., g_r) representing a section of E(d): component
// i has degree a_i + d (or is zero).
using Section = std::vector<BinForm>;

// Morphism of split bundles on P^1 as a matrix of binary forms. Entry (j, i)
// maps O(a_i) -> O(b_j) and must have degree b_j - a_i; it is forced to zero
// when b_j < a_i.
class BundleMap {
 public:
  BundleMap(const Field& f, SplittingType source, SplittingType target,
            std::vector<std::vector<BinForm>> entries);

  static BundleMap zero(const Field& f, const SplittingType& source,
                        const SplittingType& target);
  // Uniformly random entries of the required degrees.
  static BundleMap random(const Field& f, const SplittingType& source,
                          const SplittingType& target, Rng& rng);

  const Field& field() const { return field_; }
  const SplittingType& source() const { return source_; }
  const SplittingType& target() const { return target_; }
  const BinForm& entry(int row, int col) const { return entries_[row][col]; }

  // The dual map F^v -> E^v (transpose with both orders reversed so the
  // splitting types stay ascending).
  BundleMap transpose_dual() const;

  BundleMap compose(const BundleMap& inner) const;  // this after inner

  // Image of a section of E(d); component degrees b_j + d.
  Section apply(const Section& g) const;

  Matrix eval(const Scalar& s0, const Scalar& t0) const;

  // Rank at random points, 3 tries (each evaluation certifies a lower bound
  // through its nonsingular submatrix).
  int generic_rank(Rng& rng) const;

  // gcd-of-maximal-minors certificates for constant full row/column rank.
  struct FiberwiseCert {
    bool ok = false;
    std::optional<BinForm> witness_gcd;  // the offending gcd when not ok
    std::optional<std::pair<Scalar, Scalar>> drop_point;
  };
  FiberwiseCert fiberwise_surjective() const;
  FiberwiseCert fiberwise_injective() const;

  // The induced map H^0(E(d)) -> H^0(F(d)) in the per-summand monomial bases
  // s^(a_i+d), s^(a_i+d-1) t, ..., t^(a_i+d).
  struct SectionsMatrix {
    Matrix m;
    // column/row offset of each source/target summand (empty summands get
    // repeated offsets); the final element is the total count.
    std::vector<int> col_offset, row_offset;
  };
  SectionsMatrix sections_matrix(int d) const;

  // dim ker of the sections matrix at twist d (= h^0 of the kernel sheaf).
  long kernel_dim(int d) const;

  // Decode a sections-matrix coefficient column back into a section tuple.
  Section section_from_coeffs(const std::vector<Scalar>& coeffs, int d) const;

 private:
  Field field_;
  SplittingType source_, target_;
  std::vector<std::vector<BinForm>> entries_;
};

// Coefficient vector of a section of E(d) in the monomial layout used by
// sections_matrix (summand-major, s-descending).
std::vector<Scalar> section_coeffs(const SplittingType& E, const Section& g,
                                   int d, const Field& f);
Section section_from_coeff_layout(const SplittingType& E,
                                  const std::vector<Scalar>& coeffs, int d,
                                  const Field& f);

// det of a square matrix of forms (cofactor expansion with zero pruning).
BinForm form_matrix_det(const std::vector<std::vector<BinForm>>& m,
                        const Field& f);

// gcd of all k x k minors of a form matrix, with early stop once the gcd is
// a nonzero constant. k = min(rows, cols).
BinForm maximal_minor_gcd(const std::vector<std::vector<BinForm>>& m,
                          const Field& f);
// Same with an explicit minor size.
BinForm minor_gcd_of_size(const std::vector<std::vector<BinForm>>& m, int k,
                          const Field& f);

}  // namespace p1b
