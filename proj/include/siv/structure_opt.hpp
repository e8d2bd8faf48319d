#pragma once

#include <vector>

#include "siv/sparsity.hpp"

namespace siv {

// Entrywise-maximal closed symmetric pattern R with bool_mul(T, closure(R)) <= T.
// Step 1 forbids (j,k) whenever some row has T_ik = 0 and T_ij = 1; step 2
// symmetrizes by AND with the transpose.
SparsityPattern optimize_R(const SparsityPattern& T);

// True iff R is symmetric, >= I, and T * closure(R) <= T.
bool is_feasible_R(const SparsityPattern& T, const SparsityPattern& R);

// Brute-force oracle: every closed symmetric R >= I on n indices is the clique
// pattern of a set partition, so enumerate all partitions (restricted growth
// strings, lexicographic) and keep the feasible ones.  Guarded by n_limit
// because the count is the Bell number.
std::vector<SparsityPattern> enumerate_feasible_R(const SparsityPattern& T, int n_limit = 8);

struct OptimalityReport {
  bool matches_oracle = false;
  int r_star = 0;       // component count of optimize_R(T)
  int r_min_oracle = 0; // minimum component count over the enumerated feasible set
};

// Checks optimize_R(T) against the enumeration oracle: membership, entrywise
// maximality over the feasible set, and minimal component count.
OptimalityReport verify_optimality(const SparsityPattern& T, int n_limit = 8);

}  // namespace siv
