#include "siv/invariance.hpp"

#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "siv/bench.hpp"
#include "siv/sparsity.hpp"

using siv::Index;
using siv::SparsityPattern;

namespace {

SparsityPattern random_pattern(Index rows, Index cols, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution bit(density);
  SparsityPattern p(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) p.set(i, j, bit(rng));
  return p;
}

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

TEST_CASE("invariance check on hand-worked triples") {
  const siv::Example1 ex = siv::example1();
  const siv::InvarianceVerdict ok = siv::check(ex.S, ex.T, ex.R);
  CHECK(ok.holds);
  CHECK(ok.reason == siv::InvarianceReason::holds);
  CHECK_FALSE(ok.violating_index.has_value());

  SUBCASE("T outside S is caught first") {
    SparsityPattern T = ex.T;
    T.set(2, 0, true);  // S(2,0) = 0
    const siv::InvarianceVerdict v = siv::check(ex.S, T, ex.R);
    CHECK_FALSE(v.holds);
    CHECK(v.reason == siv::InvarianceReason::T_exceeds_S);
    REQUIRE(v.violating_index.has_value());
    CHECK(*v.violating_index == std::pair<Index, Index>{2, 0});
  }

  SUBCASE("a product entry outside S is caught with its index") {
    const SparsityPattern R = SparsityPattern::ones(3, 3);
    const siv::InvarianceVerdict v = siv::check(ex.S, ex.T, R);
    CHECK_FALSE(v.holds);
    CHECK(v.reason == siv::InvarianceReason::product_exceeds_S);
    REQUIRE(v.violating_index.has_value());
    const auto [i, j] = *v.violating_index;
    CHECK_FALSE(ex.S(i, j));
    CHECK(siv::bool_mul(ex.T, siv::closure(R))(i, j));
  }

  SUBCASE("dimension contracts") {
    CHECK_THROWS_AS(siv::check(SparsityPattern::ones(2, 2), ex.T, ex.R), std::invalid_argument);
    CHECK_THROWS_AS(siv::check(ex.S, ex.T, SparsityPattern::ones(2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(siv::check(ex.S, ex.T, SparsityPattern::from_text("110\n010\n001\n")),
                    std::invalid_argument);  // asymmetric R
  }
}

TEST_CASE("verdicts agree with numeric evidence on random triples") {
  std::mt19937_64 rng(37);
  int holds_seen = 0;
  int violated_seen = 0;

  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 6);
    const Index m = 1 + static_cast<Index>(rng() % 4);
    const SparsityPattern T = random_pattern(m, n, 0.35, rng);
    const SparsityPattern R = random_symmetric_unit_diag(n, 0.3, rng);
    const SparsityPattern S = siv::bool_add(T, random_pattern(m, n, 0.2, rng));

    siv::WitnessConfig cfg;
    cfg.seed = rng();
    const siv::InvarianceVerdict v = siv::check(S, T, R);

    if (v.holds) {
      ++holds_seen;
      CHECK(siv::numeric_probe(S, T, R, 20, cfg));
    } else {
      ++violated_seen;
      if (v.reason == siv::InvarianceReason::product_exceeds_S) {
        const siv::CounterexamplePair pair = siv::counterexample(S, T, R, cfg);
        CHECK(siv::leq(siv::structure_of(pair.Y), T));
        CHECK(siv::leq(siv::structure_of(pair.X), R));

        const Eigen::MatrixXd K = pair.Y * pair.X.inverse();
        REQUIRE(v.violating_index.has_value());
        const auto [i, j] = *v.violating_index;
        CHECK_FALSE(S(i, j));
        CHECK(std::abs(K(i, j)) > 1e-6);
      }
    }
  }

  // The density choices keep both branches exercised.
  CHECK(holds_seen > 20);
  CHECK(violated_seen > 20);
}

TEST_CASE("counterexample refuses satisfied triples and covers both violation kinds") {
  const siv::Example1 ex = siv::example1();
  CHECK_THROWS_AS(siv::counterexample(ex.S, ex.T, ex.R), std::invalid_argument);

  // T exceeding S directly: the constructed pair still lands a nonzero at
  // the violating index because Y X^{-1} attains all of T * closure(R).
  SparsityPattern T = ex.T;
  T.set(2, 0, true);
  const siv::InvarianceVerdict v = siv::check(ex.S, T, ex.R);
  REQUIRE_FALSE(v.holds);
  CHECK(v.reason == siv::InvarianceReason::T_exceeds_S);

  const siv::CounterexamplePair pair = siv::counterexample(ex.S, T, ex.R);
  const Eigen::MatrixXd K = pair.Y * pair.X.inverse();
  const auto [i, j] = *v.violating_index;
  CHECK(std::abs(K(i, j)) > 1e-6);
}
