#include "siv/invariance.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace siv {

namespace {

void require_triple_shapes(const SparsityPattern& S, const SparsityPattern& T,
                           const SparsityPattern& R) {
  if (T.rows() != S.rows() || T.cols() != S.cols())
    throw std::invalid_argument("invariance: T and S must have the same shape");
  if (!R.is_square() || R.rows() != T.cols())
    throw std::invalid_argument("invariance: R must be square with side T.cols");
  if (!R.is_symmetric() || !R.has_unit_diagonal())
    throw std::invalid_argument("invariance: R must be symmetric with unit diagonal");
}

}  // namespace

InvarianceVerdict check(const SparsityPattern& S, const SparsityPattern& T,
                        const SparsityPattern& R) {
  require_triple_shapes(S, T, R);
  InvarianceVerdict v;
  if (auto bad = leq_violation(T, S)) {
    v.holds = false;
    v.reason = InvarianceReason::T_exceeds_S;
    v.violating_index = *bad;
    return v;
  }
  if (auto bad = leq_violation(bool_mul(T, closure(R)), S)) {
    v.holds = false;
    v.reason = InvarianceReason::product_exceeds_S;
    v.violating_index = *bad;
    return v;
  }
  v.holds = true;
  v.reason = InvarianceReason::holds;
  return v;
}

CounterexamplePair counterexample(const SparsityPattern& S, const SparsityPattern& T,
                                  const SparsityPattern& R, const WitnessConfig& cfg) {
  const InvarianceVerdict v = check(S, T, R);
  if (v.holds)
    throw std::invalid_argument("counterexample: triple satisfies invariance, nothing to construct");

  // Follows the constructive direction: make X^{-1} attain the full closure
  // pattern, then make Y X^{-1} attain all of T*closure(R).  The entry that
  // violates T*closure(R) <= S is then nonzero outside S.
  DenseInverseWitness w = construct_dense_inverse(R, cfg);
  CounterexamplePair out;
  out.Y = construct_full_product(T, w.X_inv, cfg);
  out.X = std::move(w.X);
  return out;
}

bool numeric_probe(const SparsityPattern& S, const SparsityPattern& T,
                   const SparsityPattern& R, int trials, const WitnessConfig& cfg) {
  require_triple_shapes(S, T, R);
  if (trials < 1) throw std::invalid_argument("numeric_probe: trials must be >= 1");
  cfg.validate();

  std::mt19937_64 rng(cfg.seed);
  for (int t = 0; t < trials; ++t) {
    Eigen::MatrixXd Xinv;
    bool invertible = false;
    for (int r = 0; r < cfg.max_retries && !invertible; ++r) {
      const Eigen::MatrixXd X = random_member(R, rng, cfg);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(X);
      // Skip poorly conditioned draws so round-off cannot masquerade as
      // structural fill-in.
      lu.setThreshold(1e-6);
      if (lu.isInvertible()) {
        Xinv = lu.inverse();
        invertible = true;
      }
    }
    if (!invertible)
      throw WitnessDegeneracyError("numeric_probe: no invertible member of Sparse(R) found");

    const Eigen::MatrixXd Y = random_member(T, rng, cfg);
    const Eigen::MatrixXd K = Y * Xinv;
    if (!leq(structure_of(K, relative_tolerance(K, cfg.nonzero_tol)), S)) return false;
  }
  return true;
}

}  // namespace siv
