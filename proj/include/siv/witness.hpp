#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Core>

#include "siv/sparsity.hpp"

namespace siv {

/// Update magnitudes are drawn uniformly from [alpha_min, alpha_max] with a
/// random sign, so they are bounded away from zero. nonzero_tol is the base
/// of the relative threshold separating structural zeros from round-off in
/// numerically computed inverses and products.
struct WitnessConfig {
  std::uint64_t seed = 0;
  double alpha_min = 0.5;
  double alpha_max = 1.5;
  double nonzero_tol = 1e-8;
  int max_retries = 32;

  void validate() const;
};

/// Raised when an update sequence fails to reach the target pattern within
/// the sweep bound after max_retries reseedings. Practically unreachable for
/// n <= 32 since the forbidden update sets have measure zero.
class WitnessDegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DenseInverseWitness {
  Eigen::MatrixXd X;      // invertible, supported inside R
  Eigen::MatrixXd X_inv;  // pattern exactly closure(R)
  int sweeps = 0;         // outer passes over the off-diagonal support
  int updates = 0;        // rank-1 updates applied in total
};

/// Builds an invertible X in Sparse(R) whose inverse attains the maximal
/// pattern closure(R). Starts from the identity and adds alpha * e_i e_j^T
/// for each off-diagonal support entry, maintaining the inverse through
/// rank-1 Sherman-Morrison updates and rejecting the measure-zero alphas
/// that would cancel an existing inverse entry. Sweeps repeat until the
/// inverse pattern equals closure(R).
DenseInverseWitness construct_dense_inverse(const SparsityPattern& R, const WitnessConfig& cfg = {});

/// Builds Z in Sparse(T) with Struct(Z W) = bool_mul(T, Struct(W)): wherever
/// the boolean product allows a nonzero, some summand is made to survive by
/// an alpha-perturbation that avoids cancelling entries already present.
Eigen::MatrixXd construct_full_product(const SparsityPattern& T, const Eigen::MatrixXd& W,
                                       const WitnessConfig& cfg = {});

/// Random matrix supported exactly inside X; entry magnitudes lie in
/// [alpha_min, alpha_max] so structure_of recovers X at any reasonable tol.
Eigen::MatrixXd random_member(const SparsityPattern& X, const WitnessConfig& cfg = {});
Eigen::MatrixXd random_member(const SparsityPattern& X, std::mt19937_64& rng, const WitnessConfig& cfg);

}  // namespace siv
