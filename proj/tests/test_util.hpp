#pragma once

#include <cstdint>
#include <vector>

#include "p1bundles/binform.hpp"

// Small self-contained mod-p row reduction, independent of the library's
// matrix code; used as the brute-force oracle in several tests.
inline int oracle_rank_mod_p(std::vector<std::vector<std::uint64_t>> m,
                             std::uint64_t p) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  auto inv = [p](std::uint64_t a) {
    // Fermat
    std::uint64_t r = 1, e = p - 2, b = a % p;
    while (e) {
      if (e & 1) r = (unsigned __int128)r * b % p;
      b = (unsigned __int128)b * b % p;
      e >>= 1;
    }
    return r;
  };
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t pr = row;
    while (pr < rows && m[pr][col] % p == 0) ++pr;
    if (pr == rows) continue;
    std::swap(m[pr], m[row]);
    std::uint64_t iv = inv(m[row][col] % p);
    for (size_t c = col; c < cols; ++c)
      m[row][c] = (unsigned __int128)m[row][c] % p * iv % p;
    for (size_t r = 0; r < rows; ++r) {
      if (r == row) continue;
      std::uint64_t f = m[r][col] % p;
      if (!f) continue;
      for (size_t c = col; c < cols; ++c)
        m[r][c] = (m[r][c] + p * p - (unsigned __int128)f * m[row][c] % p) % p;
    }
    ++row;
  }
  return static_cast<int>(row);
}

inline p1b::BinForm mono(const p1b::Field& f, int se, int te, long c = 1) {
  return p1b::BinForm::monomial(f, se, te, p1b::Scalar::of_int(c, f));
}
