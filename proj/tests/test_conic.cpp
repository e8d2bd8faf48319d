#include "siv/conic.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "siv/bench.hpp"
#include "siv/sparsity.hpp"

using siv::Index;
using siv::SparsityPattern;

namespace {

// One-variable LMI  u * I - I >= 0  on a single block: feasible iff u >= 1.
siv::ConicProblem lower_bounded_scalar(Index dim, double cost) {
  siv::ConicProblem p;
  p.block_sizes = {dim};
  p.cost.resize(1);
  p.cost << cost;
  p.var_mats.resize(1);
  for (Index i = 0; i < dim; ++i) {
    p.var_mats[0].push_back({0, i, i, 1.0});
    p.const_mat.push_back({0, i, i, -1.0});
  }
  return p;
}

}  // namespace

TEST_CASE("restriction assembly masks exactly the allowed entries") {
  const siv::Example1 ex = siv::example1();
  const double eps = siv::default_eps(ex.sys);
  const SparsityPattern closed = siv::closure(ex.R);
  const siv::ConicProblem p = siv::build_restriction(ex.sys, ex.T, closed, eps);

  CHECK(p.n == 3);
  CHECK(p.m == 3);
  CHECK(p.eps == eps);
  REQUIRE(p.block_sizes.size() == 3);
  CHECK(p.block_sizes[0] == 6);  // [[Z, Y], [Y', X]]
  CHECK(p.block_sizes[1] == 3);  // X - eps I
  CHECK(p.block_sizes[2] == 3);  // Lyapunov inequality

  // Variables: upper triangle of X inside closure(R) (4), all of T (6),
  // upper triangle of Z (6).
  CHECK(p.num_vars() == 16);
  CHECK(p.has_semantics());
  Index x_vars = 0, y_vars = 0, z_vars = 0;
  for (const siv::VarRef& v : p.vars) {
    switch (v.kind) {
      case siv::VarKind::X: ++x_vars; CHECK(closed(v.i, v.j)); CHECK(v.i <= v.j); break;
      case siv::VarKind::Y: ++y_vars; CHECK(ex.T(v.i, v.j)); break;
      case siv::VarKind::Z: ++z_vars; CHECK(v.i <= v.j); break;
    }
  }
  CHECK(x_vars == 4);
  CHECK(y_vars == 6);
  CHECK(z_vars == 6);

  // Objective: Tr(CXC' + DYC' + CY'D' + DZD') with C = [I; 0], D = [0; I]
  // charges the diagonals of X and Z and none of Y.
  for (Index k = 0; k < p.num_vars(); ++k) {
    const siv::VarRef& v = p.vars[k];
    const double expect = (v.kind != siv::VarKind::Y && v.i == v.j) ? 1.0 : 0.0;
    CHECK(p.cost[k] == doctest::Approx(expect));
  }

  SUBCASE("unpack scatters a flat vector through the masks") {
    Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(p.num_vars(), 1.0, 16.0);
    Eigen::MatrixXd X, Y, Z;
    p.unpack(u, X, Y, Z);
    CHECK(X.isApprox(X.transpose()));
    CHECK(Z.isApprox(Z.transpose()));
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) {
        if (!closed(i, j)) CHECK(X(i, j) == 0.0);
        if (!ex.T(i, j)) CHECK(Y(i, j) == 0.0);
      }

    // evaluate() agrees with assembling F0 + sum u_k F_k by hand.
    const auto blocks = p.evaluate(u);
    REQUIRE(blocks.size() == 3);
    Eigen::MatrixXd top(6, 6);
    top << Z, Y, Y.transpose(), X;
    CHECK(blocks[0].isApprox(top, 1e-12));
    CHECK(blocks[1].isApprox(X - eps * Eigen::MatrixXd::Identity(3, 3), 1e-12));
    const Eigen::MatrixXd lyap =
        -(ex.sys.A * X + X * ex.sys.A.transpose() + ex.sys.B * Y +
          Y.transpose() * ex.sys.B.transpose() + ex.sys.H * ex.sys.H.transpose()) -
        eps * Eigen::MatrixXd::Identity(3, 3);
    CHECK(blocks[2].isApprox(lyap, 1e-12));
  }

  SUBCASE("closure is a precondition") {
    // A path 0-1-2 is symmetric but not transitively closed.
    CHECK_THROWS_AS(siv::build_restriction(ex.sys, ex.T, SparsityPattern::from_text("110\n111\n011\n"),
                                           eps),
                    std::invalid_argument);
    CHECK_THROWS_AS(siv::build_restriction(ex.sys, ex.T, closed, 0.0), std::invalid_argument);
  }
}

TEST_CASE("default margin scales with the data") {
  siv::Example1 ex = siv::example1();
  const double base = siv::default_eps(ex.sys);
  CHECK(base > 0.0);
  ex.sys.A *= 1000.0;
  CHECK(siv::default_eps(ex.sys) > base);
}

TEST_CASE("interior point backend solves simple cones exactly") {
  SUBCASE("minimize u subject to u >= 1") {
    const siv::SdpSolution s = siv::solve(lower_bounded_scalar(3, 1.0));
    REQUIRE(s.status == siv::SdpStatus::optimal);
    CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(s.u[0] == doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("maximize u subject to an upper bound") {
    // -u * I + 2I >= 0 caps u at 2; cost -1 pushes it there.
    siv::ConicProblem p;
    p.block_sizes = {2};
    p.cost.resize(1);
    p.cost << -1.0;
    p.var_mats.resize(1);
    p.var_mats[0] = {{0, 0, 0, -1.0}, {0, 1, 1, -1.0}};
    p.const_mat = {{0, 0, 0, 2.0}, {0, 1, 1, 2.0}};
    const siv::SdpSolution s = siv::solve(p);
    REQUIRE(s.status == siv::SdpStatus::optimal);
    CHECK(s.u[0] == doctest::Approx(2.0).epsilon(1e-6));
  }

  SUBCASE("two blocks with opposing bounds") {
    // u >= 1 on one block, 3 - u >= 0 on the other; minimize -u -> u = 3.
    siv::ConicProblem p;
    p.block_sizes = {1, 1};
    p.cost.resize(1);
    p.cost << -1.0;
    p.var_mats.resize(1);
    p.var_mats[0] = {{0, 0, 0, 1.0}, {1, 0, 0, -1.0}};
    p.const_mat = {{0, 0, 0, -1.0}, {1, 0, 0, 3.0}};
    const siv::SdpSolution s = siv::solve(p);
    REQUIRE(s.status == siv::SdpStatus::optimal);
    CHECK(s.u[0] == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(s.objective == doctest::Approx(-3.0).epsilon(1e-6));
  }
}

TEST_CASE("infeasible cones come back with a verified witness") {
  // u * [[1,0],[0,0]] + [[0,0],[0,-1]] >= 0 forces the (2,2) entry negative.
  siv::ConicProblem p;
  p.block_sizes = {2};
  p.cost.resize(1);
  p.cost << 0.0;
  p.var_mats.resize(1);
  p.var_mats[0] = {{0, 0, 0, 1.0}};
  p.const_mat = {{0, 1, 1, -1.0}};

  const siv::SdpSolution s = siv::solve(p);
  REQUIRE(s.status == siv::SdpStatus::infeasible);
  REQUIRE(s.certificate.has_value());
  const siv::InfeasibilityCertificate& cert = *s.certificate;
  CHECK(cert.f0_inner < -1e-4);
  CHECK(cert.max_var_inner < 1e-7);
  CHECK(cert.min_eig > -1e-9);
  CHECK(cert.trace == doctest::Approx(1.0));

  // Re-derive the inner products from the returned witness matrices; the
  // recorded numbers must be reproducible, not solver folklore.
  REQUIRE(cert.witness.size() == 1);
  const Eigen::MatrixXd& V = cert.witness[0];
  double f0 = 0.0;
  for (const siv::MatrixEntry& e : p.const_mat)
    f0 += (e.row == e.col ? 1.0 : 2.0) * e.value * V(e.row, e.col);
  CHECK(f0 == doctest::Approx(cert.f0_inner));
}

TEST_CASE("presolve reports unbounded and degenerate problems") {
  SUBCASE("variable absent from the cone with nonzero cost") {
    siv::ConicProblem p = lower_bounded_scalar(1, 1.0);
    p.cost.resize(2);
    p.cost << 1.0, -1.0;
    p.var_mats.push_back({});
    const siv::SdpSolution s = siv::solve(p);
    CHECK(s.status == siv::SdpStatus::unbounded);
  }

  SUBCASE("variable absent from the cone with zero cost pins to zero") {
    siv::ConicProblem p = lower_bounded_scalar(1, 1.0);
    p.cost.resize(2);
    p.cost << 1.0, 0.0;
    p.var_mats.push_back({});
    const siv::SdpSolution s = siv::solve(p);
    REQUIRE(s.status == siv::SdpStatus::optimal);
    CHECK(s.u[1] == 0.0);
  }

  SUBCASE("malformed problems are rejected") {
    siv::ConicProblem p = lower_bounded_scalar(2, 1.0);
    p.var_mats[0][0].row = 5;  // out of block range
    CHECK_THROWS_AS(siv::solve(p), std::invalid_argument);

    siv::ConicProblem q = lower_bounded_scalar(2, 1.0);
    q.var_mats[0][0].block = 3;
    CHECK_THROWS_AS(siv::solve(q), std::invalid_argument);
  }
}

TEST_CASE("solver options bound the iteration count") {
  siv::SolverOptions opts;
  opts.max_iter = 1;
  const siv::SdpSolution s = siv::solve(lower_bounded_scalar(2, 1.0), opts);
  CHECK(s.status != siv::SdpStatus::optimal);
  CHECK(s.diagnostics.iterations <= 1);
}
