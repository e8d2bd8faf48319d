#include "siv/structure_opt.hpp"

#include <stdexcept>

namespace siv {

SparsityPattern optimize_R(const SparsityPattern& T) {
  const Index m = T.rows();
  const Index n = T.cols();
  SparsityPattern R = SparsityPattern::ones(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      for (Index i = 0; i < m; ++i) {
        if (!T(i, k) && T(i, j)) {
          R.set(j, k, false);
          break;
        }
      }
    }
  }
  // Symmetrize: keep (j,k) only when (k,j) survived as well.
  SparsityPattern sym(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k) sym.set(j, k, R(j, k) && R(k, j));
  return sym;
}

bool is_feasible_R(const SparsityPattern& T, const SparsityPattern& R) {
  if (!R.is_square() || R.rows() != T.cols())
    throw std::invalid_argument("is_feasible_R: R must be square with side T.cols");
  if (!R.is_symmetric() || !R.has_unit_diagonal()) return false;
  return leq(bool_mul(T, closure(R)), T);
}

namespace {

SparsityPattern pattern_from_partition(const std::vector<int>& block_of) {
  const Index n = static_cast<Index>(block_of.size());
  SparsityPattern R(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (block_of[i] == block_of[j]) R.set(i, j, true);
  return R;
}

}  // namespace

std::vector<SparsityPattern> enumerate_feasible_R(const SparsityPattern& T, int n_limit) {
  const Index n = T.cols();
  if (n > n_limit)
    throw std::invalid_argument("enumerate_feasible_R: pattern too wide for exhaustive enumeration");

  std::vector<SparsityPattern> feasible;
  // Restricted growth strings: a[0]=0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(n, 0);
  std::vector<int> cap(n, 0);  // cap[i] = max allowed value at position i
  while (true) {
    SparsityPattern R = pattern_from_partition(a);
    if (is_feasible_R(T, R)) feasible.push_back(std::move(R));

    Index i = n - 1;
    while (i > 0 && a[i] == cap[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    cap[i] = std::max(cap[i - 1], a[i]);
    for (Index j = i + 1; j < n; ++j) {
      a[j] = 0;
      cap[j] = cap[i];
    }
  }
  return feasible;
}

OptimalityReport verify_optimality(const SparsityPattern& T, int n_limit) {
  const SparsityPattern r_star = optimize_R(T);
  const std::vector<SparsityPattern> feasible = enumerate_feasible_R(T, n_limit);

  OptimalityReport rep;
  rep.r_star = static_cast<int>(connected_components(r_star).r);

  bool member = false;
  bool dominates = true;
  int r_min = static_cast<int>(T.cols());
  for (const SparsityPattern& R : feasible) {
    if (R == r_star) member = true;
    if (!leq(R, r_star)) dominates = false;
    r_min = std::min(r_min, static_cast<int>(connected_components(R).r));
  }
  rep.r_min_oracle = r_min;
  rep.matches_oracle = member && dominates && rep.r_star == r_min;
  return rep;
}

}  // namespace siv
