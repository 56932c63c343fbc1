#pragma once

#include <functional>
#include <string>
#include <vector>

namespace p1b {

// Splitting type of a vector bundle on P^1: the multiset (a_1 <= ... <= a_r)
// with V = O(a_1) + ... + O(a_r), stored ascending.
class SplittingType {
 public:
  SplittingType() = default;
  explicit SplittingType(std::vector<int> entries);

  static SplittingType uniform(int value, int count);

  const std::vector<int>& entries() const { return entries_; }
  int rank() const { return static_cast<int>(entries_.size()); }
  long degree() const;

  // h^0(V(d)) = sum max(0, a_i + d + 1)
  long h0(int d) const;

  SplittingType dual() const;          // negate and reverse
  SplittingType twist(int d) const;    // add d to every entry
  SplittingType concat(const SplittingType& o) const;

  bool ample() const;              // all a_i >= 1
  bool globally_generated() const; // all a_i >= 0
  bool balanced() const;           // max - min <= 1

  bool operator==(const SplittingType&) const = default;

  // True when this type's h^0 profile is <= other's at every twist.
  bool h0_dominated_by(const SplittingType& other) const;

  std::string str() const;  // e.g. "[−2,0,1]" rendered ascii "[-2,0,1]"
  std::string oh_sum() const;  // "O(-2) + O + O(1)"

 private:
  std::vector<int> entries_;
};

// Recovers the unique splitting type of the given rank from an exact
// h^0-of-twists oracle, by scanning first differences upward from a twist
// with h^0 = 0. Throws "oracle-inconsistent" if no splitting type fits.
SplittingType infer_splitting(const std::function<long(int)>& h0_oracle,
                              int rank);

}  // namespace p1b
