#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace siv {

using Index = Eigen::Index;

/// Binary m-by-n matrix encoding which entries of a real matrix are allowed
/// to be nonzero. All algebra on patterns is exact boolean algebra over
/// {0,1}; no numeric cancellation is possible.
class SparsityPattern {
 public:
  SparsityPattern() = default;
  SparsityPattern(Index rows, Index cols);  // all-zero

  static SparsityPattern identity(Index n);
  static SparsityPattern ones(Index rows, Index cols);
  /// Validates that every entry is 0 or 1.
  static SparsityPattern from_bits(const std::vector<std::vector<int>>& bits);
  /// Parses rows of '0'/'1' characters separated by newlines.
  static SparsityPattern from_text(std::string_view text);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index size() const { return rows_ * cols_; }

  bool operator()(Index i, Index j) const { return bits_[i * cols_ + j] != 0; }
  void set(Index i, Index j, bool value) { bits_[i * cols_ + j] = value ? 1 : 0; }

  bool operator==(const SparsityPattern& other) const = default;

  /// Number of ones.
  Index count() const;
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool has_unit_diagonal() const;
  bool all_zero() const { return count() == 0; }
  bool all_ones() const { return count() == size(); }

  SparsityPattern transposed() const;

  std::string to_text() const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Relative threshold for recovering exact zeros from floating-point data:
/// base * (1 + max|entry|).
double relative_tolerance(const Eigen::MatrixXd& M, double base);

/// Pattern of M: bit (i,j) = 1 iff |M(i,j)| > tol.
SparsityPattern structure_of(const Eigen::MatrixXd& M, double tol);
/// Default tol = 1e-9 * (1 + max|entry|).
SparsityPattern structure_of(const Eigen::MatrixXd& M);

/// Boolean matrix product: (i,k) = 1 iff some j has X(i,j) = Z(j,k) = 1.
SparsityPattern bool_mul(const SparsityPattern& X, const SparsityPattern& Z);
/// Entrywise OR.
SparsityPattern bool_add(const SparsityPattern& X, const SparsityPattern& Xhat);

/// Entrywise order: X <= Xhat iff X(i,j) <= Xhat(i,j) for all i,j.
bool leq(const SparsityPattern& X, const SparsityPattern& Xhat);
/// Strict order: leq and at least one strictly smaller entry.
bool lt(const SparsityPattern& X, const SparsityPattern& Xhat);
/// First (row-major) index with X(i,j) > Xhat(i,j), or nullopt when X <= Xhat.
std::optional<std::pair<Index, Index>> leq_violation(const SparsityPattern& X,
                                                     const SparsityPattern& Xhat);

/// Boolean power R^(n-1) of a symmetric R >= I, computed by repeated boolean
/// squaring. Its graph is the transitive closure of G(R): a disjoint union of
/// cliques matching the connected components.
SparsityPattern closure(const SparsityPattern& R);

/// Partition of {0..n-1} into the connected components of G(R). Component ids
/// are assigned contiguously in order of smallest member index.
struct Partition {
  Index n = 0;
  std::vector<int> component_of;  // index -> component id in [0, r)
  std::vector<Index> sizes;       // size of each component
  int r = 0;                      // component count
};

Partition connected_components(const SparsityPattern& R);

/// Permutation grouping indices by connected component. Applying it to
/// closure(R) yields an exactly block-diagonal all-ones pattern with the
/// stated block sizes; blocks ordered by smallest member index.
struct BlockPermutation {
  std::vector<Index> order;        // position k holds original index order[k]
  std::vector<Index> block_sizes;  // v_1..v_r
};

BlockPermutation block_diag_permutation(const SparsityPattern& R);

}  // namespace siv
