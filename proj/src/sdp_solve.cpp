#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "siv/conic.hpp"
#include "siv/ipm.hpp"

namespace siv {

namespace {

double entries_norm(const std::vector<MatrixEntry>& ents) {
  double s = 0.0;
  for (const MatrixEntry& e : ents) s += e.value * e.value * (e.row == e.col ? 1.0 : 2.0);
  return std::sqrt(s);
}

double entries_inner(const std::vector<MatrixEntry>& ents, const std::vector<Eigen::MatrixXd>& V) {
  double s = 0.0;
  for (const MatrixEntry& e : ents)
    s += e.value * V[e.block](e.row, e.col) * (e.row == e.col ? 1.0 : 2.0);
  return s;
}

double blocks_min_eig(const std::vector<Eigen::MatrixXd>& V) {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& M : V) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    e = std::min(e, es.eigenvalues().minCoeff());
  }
  return e;
}

class EmbeddedIpmBackend final : public ConicBackend {
 public:
  std::string name() const override { return "embedded-ipm"; }
  SdpSolution solve(const ConicProblem& p, const SolverOptions& opts) override;
};

SdpSolution EmbeddedIpmBackend::solve(const ConicProblem& p, const SolverOptions& opts) {
  const Index pvars = p.num_vars();
  SdpSolution sol;

  // Presolve: a variable with no coefficient anywhere moves through no
  // constraint, so a nonzero cost on it makes the problem unbounded and a
  // zero cost lets us pin it to zero.
  std::vector<Index> keep;
  keep.reserve(pvars);
  for (Index k = 0; k < pvars; ++k) {
    if (p.var_mats[k].empty()) {
      if (p.cost[k] != 0.0) {
        sol.status = SdpStatus::unbounded;
        sol.objective = -std::numeric_limits<double>::infinity();
        std::ostringstream msg;
        msg << "variable " << k << " has zero constraint coefficients but nonzero cost";
        sol.diagnostics.message = msg.str();
        return sol;
      }
    } else {
      keep.push_back(k);
    }
  }

  Eigen::VectorXd cost(keep.size());
  std::vector<std::vector<MatrixEntry>> F(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    cost[static_cast<Index>(i)] = p.cost[keep[i]];
    F[i] = p.var_mats[keep[i]];
  }
  auto expand = [&](const Eigen::VectorXd& u_red) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(pvars);
    for (std::size_t i = 0; i < keep.size(); ++i) full[keep[i]] = u_red[static_cast<Index>(i)];
    return full;
  };
  auto fill_diagnostics = [](SdpSolution& s, const IpmResult& r, const std::string& msg) {
    s.diagnostics.iterations = r.iterations;
    s.diagnostics.rel_gap = r.rel_gap;
    s.diagnostics.primal_infeasibility = r.primal_inf;
    s.diagnostics.dual_infeasibility = r.dual_inf;
    s.diagnostics.message = msg;
  };

  IpmOptions iopts;
  iopts.max_iter = opts.max_iter;
  iopts.tol = opts.tol;
  iopts.verbose = opts.verbose;

  const IpmResult main = ipm_solve(p.block_sizes, cost, F, p.const_mat, iopts);

  if (main.status == IpmStatus::optimal) {
    sol.status = SdpStatus::optimal;
    sol.u = expand(main.u);
    if (p.has_semantics()) p.unpack(sol.u, sol.X, sol.Y, sol.Z);
    sol.objective = p.cost.dot(sol.u);
    fill_diagnostics(sol, main, "converged");
    return sol;
  }

  const double normF0 = entries_norm(p.const_mat);
  if (main.status == IpmStatus::diverged && main.dual_inf <= 1e-6 &&
      main.objective < -1e10 * (1.0 + normF0)) {
    sol.status = SdpStatus::unbounded;
    sol.objective = -std::numeric_limits<double>::infinity();
    fill_diagnostics(sol, main, "objective diverged along a feasible direction");
    return sol;
  }

  // Feasibility phase: minimize t with F(u) + t I >= 0.  Its internal primal
  // variable doubles as a Farkas witness when the optimum stays positive.
  Eigen::VectorXd cost1(cost.size() + 1);
  cost1.head(cost.size()) = Eigen::VectorXd::Zero(cost.size());
  cost1[cost.size()] = 1.0;
  std::vector<std::vector<MatrixEntry>> F1 = F;
  std::vector<MatrixEntry> shift;
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b)
    for (Index i = 0; i < p.block_sizes[b]; ++i)
      shift.push_back({static_cast<int>(b), i, i, 1.0});
  F1.push_back(std::move(shift));

  const double feas_margin = std::max(1e3 * opts.tol, 1e-7) * (1.0 + normF0);
  IpmOptions iopts1 = iopts;
  iopts1.stop_below_objective = -feas_margin;

  const IpmResult ph1 = ipm_solve(p.block_sizes, cost1, F1, p.const_mat, iopts1);

  const bool strictly_feasible =
      ph1.status == IpmStatus::feasible_point ||
      (ph1.status == IpmStatus::optimal && ph1.objective < -0.5 * feas_margin);
  if (strictly_feasible) {
    // The restriction is solvable; the main run just failed to converge.
    sol.status = SdpStatus::inaccurate;
    sol.u = expand(main.u);
    if (p.has_semantics()) p.unpack(sol.u, sol.X, sol.Y, sol.Z);
    sol.objective = p.cost.dot(sol.u);
    fill_diagnostics(sol, main, "feasible problem but the solve did not reach tolerance");
    return sol;
  }

  if (ph1.status == IpmStatus::optimal && ph1.objective > 0.0) {
    // Re-measure the candidate witness against the problem data.
    std::vector<Eigen::MatrixXd> V = ph1.primal;
    double tr = 0.0;
    for (const auto& M : V) tr += M.trace();
    if (tr > 0.0) {
      for (auto& M : V) M /= tr;
      InfeasibilityCertificate cert;
      cert.witness = V;
      cert.trace = 1.0;
      cert.f0_inner = entries_inner(p.const_mat, V);
      cert.min_eig = blocks_min_eig(V);
      cert.max_var_inner = 0.0;
      for (Index k = 0; k < pvars; ++k) {
        const double ip = entries_inner(p.var_mats[k], V) / (1.0 + entries_norm(p.var_mats[k]));
        cert.max_var_inner = std::max(cert.max_var_inner, std::abs(ip));
      }
      const double ctol = opts.certificate_tol;
      if (cert.min_eig >= -ctol && cert.max_var_inner <= ctol &&
          cert.f0_inner <= -ctol * (1.0 + normF0)) {
        sol.status = SdpStatus::infeasible;
        sol.objective = std::numeric_limits<double>::quiet_NaN();
        sol.certificate = std::move(cert);
        fill_diagnostics(sol, ph1, "verified infeasibility witness");
        return sol;
      }
    }
  }

  if (main.status == IpmStatus::numerical_error && ph1.status == IpmStatus::numerical_error) {
    sol.status = SdpStatus::solver_error;
    fill_diagnostics(sol, main, "numerical breakdown in both solve phases");
    return sol;
  }

  sol.status = SdpStatus::inaccurate;
  sol.u = expand(main.u);
  if (p.has_semantics()) p.unpack(sol.u, sol.X, sol.Y, sol.Z);
  sol.objective = p.cost.dot(sol.u);
  fill_diagnostics(sol, main, "no certificate in either direction; returning best iterate");
  return sol;
}

}  // namespace

std::unique_ptr<ConicBackend> make_default_backend() {
  return std::make_unique<EmbeddedIpmBackend>();
}

SdpSolution solve(const ConicProblem& p, const SolverOptions& opts, ConicBackend* backend) {
  if (backend != nullptr) return backend->solve(p, opts);
  const auto def = make_default_backend();
  return def->solve(p, opts);
}

}  // namespace siv
