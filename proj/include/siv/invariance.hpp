#pragma once

#include <optional>
#include <utility>

#include <Eigen/Core>

#include "siv/sparsity.hpp"
#include "siv/witness.hpp"

namespace siv {

enum class InvarianceReason { holds, T_exceeds_S, product_exceeds_S };

// Verdict for the question: does Y in Sparse(T), X invertible in Sparse(R)
// force Y X^{-1} into Sparse(S)?  Equivalent to T <= S plus T*closure(R) <= S.
struct InvarianceVerdict {
  bool holds = false;
  InvarianceReason reason = InvarianceReason::holds;
  std::optional<std::pair<Index, Index>> violating_index;
};

InvarianceVerdict check(const SparsityPattern& S, const SparsityPattern& T,
                        const SparsityPattern& R);

// Concrete witness pair for a failing triple: X invertible in Sparse(R) and
// Y in Sparse(T) with structure_of(Y X^{-1}) not below S.  Throws
// std::invalid_argument when the triple actually satisfies invariance.
struct CounterexamplePair {
  Eigen::MatrixXd X;
  Eigen::MatrixXd Y;
};

CounterexamplePair counterexample(const SparsityPattern& S, const SparsityPattern& T,
                                  const SparsityPattern& R, const WitnessConfig& cfg = {});

// Randomized necessary check: samples `trials` pairs (X, Y) with the stated
// supports (X resampled until well conditioned) and returns true iff every
// Y X^{-1} stays inside Sparse(S) up to the config tolerance.
bool numeric_probe(const SparsityPattern& S, const SparsityPattern& T,
                   const SparsityPattern& R, int trials, const WitnessConfig& cfg = {});

}  // namespace siv
