#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "siv/linear_system.hpp"
#include "siv/sparsity.hpp"

namespace siv {

// One upper-triangle coefficient of a symmetric block; row <= col, the
// mirrored entry is implied.
struct MatrixEntry {
  int block = 0;
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

enum class VarKind : std::uint8_t { X, Y, Z };

// Which entry of the decision triple a flat solver variable stands for.
// X and Z are symmetric, so their refs are canonicalized to i <= j.
struct VarRef {
  VarKind kind = VarKind::X;
  Index i = 0;
  Index j = 0;
};

// Linear matrix inequality form of the restricted synthesis problem:
//
//   minimize    cost . u
//   subject to  F(u) = F0 + sum_k u_k F_k  >=  0   (blockwise PSD)
//
// where u collects the free entries of X (masked by the closed Lyapunov
// pattern), Y (masked by T) and the full symmetric Z.  Masked entries are
// never variables, so they are exactly zero by construction.
struct ConicProblem {
  Index n = 0;  // states
  Index m = 0;  // inputs
  double eps = 0.0;
  SparsityPattern x_mask;  // closed pattern bounding X
  SparsityPattern y_mask;  // pattern bounding Y

  std::vector<Index> block_sizes;
  std::vector<VarRef> vars;
  Eigen::VectorXd cost;
  std::vector<std::vector<MatrixEntry>> var_mats;  // F_k, one list per variable
  std::vector<MatrixEntry> const_mat;              // F0

  Index num_vars() const { return cost.size(); }

  // True when every variable carries an (X, Y, Z) interpretation.  Problems
  // imported from the exchange format are plain LMIs without one.
  bool has_semantics() const { return static_cast<Index>(vars.size()) == num_vars(); }

  // Rebuilds (X, Y, Z) from a flat solution vector.
  void unpack(const Eigen::VectorXd& u, Eigen::MatrixXd& X, Eigen::MatrixXd& Y,
              Eigen::MatrixXd& Z) const;

  // Evaluates F(u) as dense symmetric blocks.
  std::vector<Eigen::MatrixXd> evaluate(const Eigen::VectorXd& u) const;
};

// Margin realizing the strict inequalities: scales with the data so that
// "eps away from singular" means the same across problems.
double default_eps(const LinearSystem& sys);

// Assembles the convex restriction: objective Tr(CXC' + DYC' + CY'D' + DZD'),
// Schur block [[Z, Y],[Y', X]] >= 0, X >= eps I, and the Lyapunov inequality
// -(AX + XA' + BY + Y'B' + HH') >= eps I.  R_closed must equal its closure.
ConicProblem build_restriction(const LinearSystem& sys, const SparsityPattern& T,
                               const SparsityPattern& R_closed, double eps);

enum class SdpStatus { optimal, infeasible, unbounded, inaccurate, solver_error };

std::string to_string(SdpStatus status);

// Farkas-type witness that no u satisfies F(u) >= 0: a PSD matrix V with
// <F_k, V> = 0 for all k, trace 1, and <F0, V> < 0.  The inner products and
// eigenvalue recorded here are re-measured, not taken from solver internals.
struct InfeasibilityCertificate {
  std::vector<Eigen::MatrixXd> witness;
  double f0_inner = 0.0;       // <F0, V>, certifies when clearly negative
  double max_var_inner = 0.0;  // max_k |<F_k, V>|
  double min_eig = 0.0;        // smallest eigenvalue over blocks of V
  double trace = 0.0;
};

struct SolverDiagnostics {
  int iterations = 0;
  double rel_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  std::string message;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::solver_error;
  Eigen::MatrixXd X, Y, Z;     // present iff status is optimal or inaccurate
  Eigen::VectorXd u;           // flat variable vector matching ConicProblem::vars
  double objective = 0.0;
  std::optional<InfeasibilityCertificate> certificate;
  SolverDiagnostics diagnostics;
};

struct SolverOptions {
  int max_iter = 100;
  double tol = 1e-7;                  // relative gap and feasibility target
  double certificate_tol = 1e-7;      // acceptance threshold for infeasibility witnesses
  bool verbose = false;
};

// Pluggable solver seam: load conic data, solve, report status with
// solution or certificate.  The default backend is the embedded
// interior-point method; the SDPA export path is the escape hatch.
class ConicBackend {
 public:
  virtual ~ConicBackend() = default;
  virtual std::string name() const = 0;
  virtual SdpSolution solve(const ConicProblem& p, const SolverOptions& opts) = 0;
};

std::unique_ptr<ConicBackend> make_default_backend();

// Solves with the given backend (default embedded one).  `infeasible` is
// only ever reported together with a verified certificate; unverifiable
// failures degrade to `inaccurate` or `solver_error`.
SdpSolution solve(const ConicProblem& p, const SolverOptions& opts = {},
                  ConicBackend* backend = nullptr);

}  // namespace siv
