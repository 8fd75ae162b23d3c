#pragma once

// Test-only reference computations, independent of the library's
// elimination code paths.

#include "kzero/exactalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace kzero::oracle {

/// Determinant by cofactor expansion.
inline Integer determinant(const IntMatrix& M) {
  const Index n = M.rows();
  if (n == 0) return 1;
  if (n == 1) return M(0, 0);
  Integer det = 0;
  for (Index j = 0; j < n; ++j) {
    if (M(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = M(r, c);
    det += ((j % 2 == 0) ? 1 : -1) * M(0, j) * determinant(minor);
  }
  return det;
}

inline void for_each_subset(Index n, Index k, const std::function<void(const std::vector<Index>&)>& fn) {
  std::vector<Index> idx(static_cast<std::size_t>(k));
  std::function<void(Index, Index)> rec = [&](Index start, Index depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (Index i = start; i < n; ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

/// Determinantal divisors: D_k = gcd of all k×k minors. Invariant factors
/// are D_k / D_{k−1} for k ≤ rank.
inline std::vector<Integer> invariant_factors_by_minors(const IntMatrix& A) {
  const Index m = A.rows(), n = A.cols();
  std::vector<Integer> out;
  Integer prev = 1;
  for (Index k = 1; k <= std::min(m, n); ++k) {
    Integer g = 0;
    for_each_subset(m, k, [&](const std::vector<Index>& rows) {
      for_each_subset(n, k, [&](const std::vector<Index>& cols) {
        IntMatrix sub(k, k);
        for (Index i = 0; i < k; ++i)
          for (Index j = 0; j < k; ++j) sub(i, j) = A(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        g = gcd(g, abs(determinant(sub)));
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  while (static_cast<Index>(out.size()) < std::min(m, n)) out.push_back(0);
  return out;
}

}  // namespace kzero::oracle
