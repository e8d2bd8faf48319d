#include "siv/sparsity.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

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

// Reference boolean power by naive repeated multiplication.
SparsityPattern naive_power(const SparsityPattern& R, Index e) {
  SparsityPattern acc = SparsityPattern::identity(R.rows());
  for (Index k = 0; k < e; ++k) acc = siv::bool_mul(acc, R);
  return acc;
}

}  // namespace

TEST_CASE("pattern construction and text round trip") {
  const SparsityPattern p = SparsityPattern::from_text("110\n111\n001\n");
  CHECK(p.rows() == 3);
  CHECK(p.cols() == 3);
  CHECK(p.count() == 6);
  CHECK(p(0, 0));
  CHECK_FALSE(p(0, 2));
  CHECK(p.to_text() == "110\n111\n001\n");
  CHECK(SparsityPattern::from_text(p.to_text()) == p);

  CHECK(SparsityPattern::identity(4).count() == 4);
  CHECK(SparsityPattern::ones(2, 5).count() == 10);
  CHECK(SparsityPattern(3, 2).all_zero());
  CHECK(SparsityPattern::ones(2, 2).all_ones());

  SUBCASE("whitespace is tolerated, other characters are not") {
    CHECK(SparsityPattern::from_text(" 1 0\r\n0 1\n") == SparsityPattern::identity(2));
    CHECK_THROWS_AS(SparsityPattern::from_text("10\n2x\n"), std::invalid_argument);
    CHECK_THROWS_AS(SparsityPattern::from_text("\n\n"), std::invalid_argument);
  }

  SUBCASE("from_bits validates shape and values") {
    CHECK_THROWS_AS(SparsityPattern::from_bits({{1, 0}, {1}}), std::invalid_argument);
    CHECK_THROWS_AS(SparsityPattern::from_bits({{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(SparsityPattern::from_bits({}), std::invalid_argument);
  }
}

TEST_CASE("pattern predicates") {
  const SparsityPattern sym = SparsityPattern::from_text("11\n11\n");
  CHECK(sym.is_symmetric());
  CHECK(sym.has_unit_diagonal());

  const SparsityPattern asym = SparsityPattern::from_text("11\n01\n");
  CHECK_FALSE(asym.is_symmetric());
  CHECK(asym.has_unit_diagonal());
  CHECK(asym.transposed() == SparsityPattern::from_text("10\n11\n"));

  const SparsityPattern rect = SparsityPattern::ones(2, 3);
  CHECK_FALSE(rect.is_square());
  CHECK_FALSE(rect.is_symmetric());
  CHECK(rect.transposed().rows() == 3);
}

TEST_CASE("structure_of recovers a pattern at a relative threshold") {
  Eigen::MatrixXd M(2, 3);
  M << 5.0, 0.0, -1e-12, 0.0, 2.0, 1e-3;
  const SparsityPattern s = siv::structure_of(M);
  CHECK(s == SparsityPattern::from_text("100\n011\n"));
  CHECK(siv::structure_of(M, 1e-2) == SparsityPattern::from_text("100\n010\n"));
  CHECK(siv::relative_tolerance(M, 1e-9) == doctest::Approx(6e-9));
}

TEST_CASE("boolean product matches a nonnegative numeric oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Index m = 1 + static_cast<Index>(rng() % 5);
    const Index n = 1 + static_cast<Index>(rng() % 5);
    const Index k = 1 + static_cast<Index>(rng() % 5);
    const SparsityPattern X = random_pattern(m, k, 0.4, rng);
    const SparsityPattern Z = random_pattern(k, n, 0.4, rng);

    // Indicators are nonnegative, so no cancellation: the numeric product is
    // positive exactly where the boolean product has a one.
    Eigen::MatrixXd Xr = Eigen::MatrixXd::Zero(m, k);
    Eigen::MatrixXd Zr = Eigen::MatrixXd::Zero(k, n);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < k; ++j) Xr(i, j) = X(i, j) ? 1.0 : 0.0;
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < n; ++j) Zr(i, j) = Z(i, j) ? 1.0 : 0.0;
    CHECK(siv::bool_mul(X, Z) == siv::structure_of(Xr * Zr, 0.5));
  }
  CHECK_THROWS_AS(siv::bool_mul(SparsityPattern::ones(2, 3), SparsityPattern::ones(2, 3)),
                  std::invalid_argument);
}

TEST_CASE("boolean sum is entrywise OR") {
  const SparsityPattern a = SparsityPattern::from_text("10\n01\n");
  const SparsityPattern b = SparsityPattern::from_text("11\n00\n");
  CHECK(siv::bool_add(a, b) == SparsityPattern::from_text("11\n01\n"));
  CHECK_THROWS_AS(siv::bool_add(a, SparsityPattern::ones(1, 2)), std::invalid_argument);
}

TEST_CASE("entrywise order and first violation") {
  const SparsityPattern small = SparsityPattern::from_text("10\n01\n");
  const SparsityPattern big = SparsityPattern::from_text("11\n01\n");
  CHECK(siv::leq(small, big));
  CHECK(siv::lt(small, big));
  CHECK_FALSE(siv::lt(small, small));
  CHECK(siv::leq(small, small));
  CHECK_FALSE(siv::leq(big, small));

  const auto v = siv::leq_violation(big, small);
  REQUIRE(v.has_value());
  CHECK(v->first == 0);
  CHECK(v->second == 1);
  CHECK_FALSE(siv::leq_violation(small, big).has_value());
}

TEST_CASE("closure equals the naive boolean power R^(n-1)") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const SparsityPattern R = random_symmetric_unit_diag(n, 0.3, rng);
    const SparsityPattern c = siv::closure(R);
    CHECK(c == naive_power(R, std::max<Index>(n - 1, 1)));
    CHECK(c.is_symmetric());
    CHECK(c.has_unit_diagonal());
    CHECK(siv::leq(R, c));
    CHECK(siv::closure(c) == c);  // idempotent
    CHECK(siv::bool_mul(c, c) == c);  // transitively closed
  }

  SUBCASE("input contract") {
    CHECK_THROWS_AS(siv::closure(SparsityPattern::from_text("11\n01\n")), std::invalid_argument);
    CHECK_THROWS_AS(siv::closure(SparsityPattern::from_text("01\n10\n")), std::invalid_argument);
    CHECK_THROWS_AS(siv::closure(SparsityPattern::ones(2, 3)), std::invalid_argument);
  }
}

TEST_CASE("connected components on a known graph") {
  // 0-1 linked, 2 alone, 3-4 linked through 5.
  SparsityPattern R = SparsityPattern::identity(6);
  auto link = [&R](Index i, Index j) {
    R.set(i, j, true);
    R.set(j, i, true);
  };
  link(0, 1);
  link(3, 5);
  link(5, 4);

  const siv::Partition part = siv::connected_components(R);
  CHECK(part.n == 6);
  CHECK(part.r == 3);
  CHECK(part.component_of == std::vector<int>{0, 0, 1, 2, 2, 2});
  CHECK(part.sizes == std::vector<Index>{2, 1, 3});

  // The closure of R is the clique pattern of the partition.
  const SparsityPattern c = siv::closure(R);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j)
      CHECK(c(i, j) == (part.component_of[i] == part.component_of[j]));
}

TEST_CASE("block permutation sorts the closure into dense diagonal blocks") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 8);
    const SparsityPattern R = random_symmetric_unit_diag(n, 0.25, rng);
    const siv::BlockPermutation perm = siv::block_diag_permutation(R);

    std::vector<Index> sorted = perm.order;
    std::sort(sorted.begin(), sorted.end());
    for (Index i = 0; i < n; ++i) CHECK(sorted[i] == i);  // a bijection

    Index total = 0;
    for (Index s : perm.block_sizes) total += s;
    CHECK(total == n);

    const SparsityPattern c = siv::closure(R);
    SparsityPattern permuted(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) permuted.set(i, j, c(perm.order[i], perm.order[j]));

    Index offset = 0;
    SparsityPattern expect(n, n);
    for (Index s : perm.block_sizes) {
      for (Index i = 0; i < s; ++i)
        for (Index j = 0; j < s; ++j) expect.set(offset + i, offset + j, true);
      offset += s;
    }
    CHECK(permuted == expect);
  }
}
