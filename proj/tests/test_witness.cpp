#include "siv/witness.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "siv/sparsity.hpp"

using siv::Index;
using siv::SparsityPattern;

namespace {

SparsityPattern random_symmetric_unit_diag(Index n, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution bit(density);
  SparsityPattern p = SparsityPattern::identity(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const bool b = bit(rng);
      p.set(i, j, b);
      p.set(j, i, b);
    }
  return p;
}

}  // namespace

TEST_CASE("dense inverse witness attains the closure pattern") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const SparsityPattern R = random_symmetric_unit_diag(n, 0.35, rng);
    siv::WitnessConfig cfg;
    cfg.seed = rng();

    const siv::DenseInverseWitness w = siv::construct_dense_inverse(R, cfg);
    const SparsityPattern target = siv::closure(R);

    CHECK(siv::leq(siv::structure_of(w.X), R));
    CHECK(siv::structure_of(w.X_inv, siv::relative_tolerance(w.X_inv, cfg.nonzero_tol)) == target);

    // The recorded inverse is the real inverse.
    const double err = (w.X * w.X_inv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    CHECK(err < 1e-8);

    // One update per off-diagonal support entry per sweep, and the sweep
    // count stays within (|R| - n)(n - 1) updates in total.
    const Index offdiag = R.count() - n;
    CHECK(w.updates <= offdiag * std::max<Index>(n - 1, 1));
    CHECK(w.sweeps <= std::max<Index>(n - 1, 1));
  }
}

TEST_CASE("random members of Sparse(R) never exceed the closure pattern") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const Index n = 2 + static_cast<Index>(rng() % 7);
    const SparsityPattern R = random_symmetric_unit_diag(n, 0.3, rng);
    siv::WitnessConfig cfg;
    cfg.seed = rng();
    const Eigen::MatrixXd X = siv::random_member(R, cfg);
    CHECK(siv::leq(siv::structure_of(X), R));

    Eigen::FullPivLU<Eigen::MatrixXd> lu(X);
    if (!lu.isInvertible()) continue;  // measure-zero, but skip if hit
    const Eigen::MatrixXd Xinv = lu.inverse();
    CHECK(siv::leq(siv::structure_of(Xinv, siv::relative_tolerance(Xinv, 1e-7)), siv::closure(R)));
  }
}

TEST_CASE("full product witness fills the whole boolean product") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const Index m = 1 + static_cast<Index>(rng() % 5);
    const Index n = 1 + static_cast<Index>(rng() % 5);
    const Index k = 1 + static_cast<Index>(rng() % 5);

    std::bernoulli_distribution bit(0.4);
    SparsityPattern T(m, k);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < k; ++j) T.set(i, j, bit(rng));

    siv::WitnessConfig cfg;
    cfg.seed = rng();
    SparsityPattern WS(k, n);
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < n; ++j) WS.set(i, j, bit(rng));
    const Eigen::MatrixXd W = siv::random_member(WS, cfg);

    const Eigen::MatrixXd Z = siv::construct_full_product(T, W, cfg);
    CHECK(siv::leq(siv::structure_of(Z), T));
    const Eigen::MatrixXd P = Z * W;
    CHECK(siv::structure_of(P, siv::relative_tolerance(P, cfg.nonzero_tol)) ==
          siv::bool_mul(T, siv::structure_of(W)));
  }
}

TEST_CASE("witness configuration is validated") {
  siv::WitnessConfig cfg;
  cfg.alpha_min = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.alpha_max = 0.1;  // below alpha_min
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.max_retries = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
