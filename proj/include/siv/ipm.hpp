#pragma once

#include <limits>
#include <vector>

#include <Eigen/Core>

#include "siv/conic.hpp"

namespace siv {

// Raw interior-point interface used by the default backend and its tests.
// Solves   minimize cost . u   subject to   F0 + sum_k u_k F_k >= 0
// (blockwise PSD) with an infeasible-start predictor-corrector method.

enum class IpmStatus {
  optimal,         // all residuals below tol
  feasible_point,  // early exit: objective certified below stop_below_objective
  max_iterations,
  stalled,         // no progress over many iterations
  diverged,        // iterates blew up (candidate unboundedness or infeasibility)
  numerical_error
};

struct IpmOptions {
  int max_iter = 100;
  double tol = 1e-7;
  double step_fraction = 0.98;
  // Feasibility-phase hook: return as soon as the objective is below this
  // and the LMI residual is small (caller re-verifies the returned point).
  double stop_below_objective = -std::numeric_limits<double>::infinity();
  bool verbose = false;
};

struct IpmResult {
  IpmStatus status = IpmStatus::numerical_error;
  Eigen::VectorXd u;
  double objective = 0.0;  // cost . u at the returned iterate
  // Certificate carriers in the internal standard form: `primal` is the
  // matrix variable dual to the LMI (Farkas witness when infeasible),
  // `slack` approximates F(u).
  std::vector<Eigen::MatrixXd> primal;
  std::vector<Eigen::MatrixXd> slack;
  int iterations = 0;
  double rel_gap = 0.0;
  double primal_inf = 0.0;
  double dual_inf = 0.0;
};

IpmResult ipm_solve(const std::vector<Index>& block_sizes, const Eigen::VectorXd& cost,
                    const std::vector<std::vector<MatrixEntry>>& F,
                    const std::vector<MatrixEntry>& F0, const IpmOptions& opts = {});

}  // namespace siv
