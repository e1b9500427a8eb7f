// Index bookkeeping for the invariant coordinates.
//
// Pair-indexed quantities (rho, nu, sigma) are stored in lexicographic order
// (0,1),(0,2),...,(n-2,n-1) over 0-based body indices.  The delta coordinates
// are the antisymmetrised cross products C_{ij,kl} = q_ij.v_kl - v_ij.q_kl
// for a fixed basis of index quadruples per n.
#pragma once

#include <array>
#include <vector>

#include "lpnb/errors.hpp"

namespace lpnb {

inline int pair_count(int n) { return n * (n - 1) / 2; }
inline int delta_count(int n) { return (n - 1) * (n - 2) / 2; }

/// Reduced phase-space dimension (2n-1)(n-1): three pair blocks plus delta.
inline int reduced_dim(int n) { return (2 * n - 1) * (n - 1); }

/// Lexicographic index of the unordered pair {i,j}, i != j.
inline int pair_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n || i == j)
    throw DimensionError("pair_index: invalid pair");
  // pairs (0,1)..(0,n-1) come first, then (1,2)..
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Inverse of pair_index.
inline std::array<int, 2> pair_from_index(int n, int p) {
  for (int i = 0; i < n - 1; ++i) {
    int row = n - 1 - i;
    if (p < row) return {i, i + 1 + p};
    p -= row;
  }
  throw DimensionError("pair_from_index: index out of range");
}

/// Index quadruple (i,j,k,l) labelling the invariant C_{ij,kl}.
struct DeltaPair {
  int i, j, k, l;
};

/// Basis of delta invariants.
///
/// n=3 uses C_{12,23} (0-based C_{01,12}), which coincides with the
/// three-body convention q_23.v_31 - v_23.q_31; n=4 uses the closed-form
/// table basis; n>=5 uses C_{1j,jk} over 2<=j<k<=n.  Linear independence for
/// the generated bases is checked where the forms are materialised
/// (see algebra.hpp).
inline std::vector<DeltaPair> delta_basis(int n) {
  std::vector<DeltaPair> basis;
  if (n < 2) throw DimensionError("delta_basis: need n >= 2");
  if (n == 2) return basis;
  if (n == 4) {
    // 1-based (C_{12,43}, C_{23,41}, C_{24,31})
    basis.push_back({0, 1, 3, 2});
    basis.push_back({1, 2, 3, 0});
    basis.push_back({1, 3, 2, 0});
    return basis;
  }
  for (int j = 1; j < n - 1; ++j)
    for (int k = j + 1; k < n; ++k)
      basis.push_back({0, j, j, k});
  return basis;
}

} // namespace lpnb
