#pragma once

#include <cstdint>

#include "p1bundles/field.hpp"

namespace p1b {

// Deterministic splitmix64 stream. Everything randomized in the library is
// driven by one of these, so a run is reproducible from its seed on any
// platform (std::uniform_int_distribution is not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // Uniform field element; over Q, a small integer in [-50, 50].
  Scalar scalar(const Field& f) {
    if (f.is_rational())
      return Scalar::of_int(static_cast<long>(below(101)) - 50, f);
    return Scalar::of_int(static_cast<long>(below(f.p)), f);
  }

  Scalar nonzero_scalar(const Field& f) {
    Scalar v = scalar(f);
    while (v.is_zero()) v = scalar(f);
    return v;
  }

  // Independent substream; used for per-trial determinism.
  Rng fork(std::uint64_t label) const {
    Rng r(state_ ^ (0x632be59bd9b4e019ull * (label + 1)));
    r.next();
    return r;
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace p1b
