#include "siv/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace siv {

namespace {

using Blocks = std::vector<Eigen::MatrixXd>;

Blocks zero_blocks(const std::vector<Index>& dims) {
  Blocks out;
  out.reserve(dims.size());
  for (Index d : dims) out.emplace_back(Eigen::MatrixXd::Zero(d, d));
  return out;
}

double inner(const Blocks& P, const Blocks& Q) {
  double s = 0.0;
  for (std::size_t b = 0; b < P.size(); ++b) s += P[b].cwiseProduct(Q[b]).sum();
  return s;
}

double fnorm(const Blocks& P) {
  double s = 0.0;
  for (const auto& M : P) s += M.squaredNorm();
  return std::sqrt(s);
}

double min_eig(const Blocks& P) {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& M : P) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    e = std::min(e, es.eigenvalues().minCoeff());
  }
  return e;
}

// Internal standard form: min <C,X> s.t. <A_k,X> = b_k, X >= 0, whose dual
// max b.y s.t. C - sum y_k A_k >= 0 is the user LMI problem with y = u,
// A_k = -F_k, C = F0, b = -cost.
struct StandardForm {
  std::vector<Index> dims;
  Index p = 0;
  Index total_dim = 0;
  Eigen::VectorXd b;
  Blocks C;
  std::vector<std::vector<MatrixEntry>> A;  // negated F entries per variable
  std::vector<double> normA;
  double normC = 0.0;
  double normb = 0.0;
  // Schur-build index: variables touching each block with their entries.
  struct PerBlock {
    std::vector<Index> vars;
    std::vector<std::vector<MatrixEntry>> entries;
  };
  std::vector<PerBlock> by_block;
};

StandardForm make_standard_form(const std::vector<Index>& block_sizes, const Eigen::VectorXd& cost,
                                const std::vector<std::vector<MatrixEntry>>& F,
                                const std::vector<MatrixEntry>& F0) {
  StandardForm sf;
  sf.dims = block_sizes;
  sf.p = cost.size();
  for (Index d : block_sizes) {
    if (d <= 0) throw std::invalid_argument("ipm_solve: block sizes must be positive");
    sf.total_dim += d;
  }
  if (static_cast<Index>(F.size()) != sf.p)
    throw std::invalid_argument("ipm_solve: one coefficient list per variable required");

  auto check_entry = [&](const MatrixEntry& e) {
    if (e.block < 0 || e.block >= static_cast<int>(block_sizes.size()) || e.row < 0 ||
        e.col < e.row || e.col >= block_sizes[e.block])
      throw std::invalid_argument("ipm_solve: entry outside its block's upper triangle");
  };

  sf.b = -cost;
  sf.normb = sf.b.norm();
  sf.C = zero_blocks(sf.dims);
  for (const MatrixEntry& e : F0) {
    check_entry(e);
    sf.C[e.block](e.row, e.col) += e.value;
    if (e.row != e.col) sf.C[e.block](e.col, e.row) += e.value;
  }
  sf.normC = fnorm(sf.C);

  sf.A.resize(F.size());
  sf.normA.resize(F.size());
  sf.by_block.resize(block_sizes.size());
  for (Index k = 0; k < sf.p; ++k) {
    double nrm = 0.0;
    sf.A[k].reserve(F[k].size());
    for (const MatrixEntry& e : F[k]) {
      check_entry(e);
      MatrixEntry neg = e;
      neg.value = -e.value;
      sf.A[k].push_back(neg);
      nrm += e.value * e.value * (e.row == e.col ? 1.0 : 2.0);
      auto& pb = sf.by_block[e.block];
      if (pb.vars.empty() || pb.vars.back() != k) {
        pb.vars.push_back(k);
        pb.entries.emplace_back();
      }
      pb.entries.back().push_back(neg);
    }
    sf.normA[k] = std::sqrt(nrm);
  }
  return sf;
}

// <A_k, X> for every k.  Off-diagonal entries read both mirror positions so
// the result is exact even when X is not symmetric (products like X Rd Sinv
// are passed through here).
Eigen::VectorXd a_apply(const StandardForm& sf, const Blocks& X) {
  Eigen::VectorXd out(sf.p);
  for (Index k = 0; k < sf.p; ++k) {
    double s = 0.0;
    for (const MatrixEntry& e : sf.A[k]) {
      const auto& Xb = X[e.block];
      s += e.value * (e.row == e.col ? Xb(e.row, e.col)
                                     : Xb(e.row, e.col) + Xb(e.col, e.row));
    }
    out[k] = s;
  }
  return out;
}

// out += sum_k y_k A_k
void at_accumulate(const StandardForm& sf, const Eigen::VectorXd& y, Blocks& out) {
  for (Index k = 0; k < sf.p; ++k) {
    const double yk = y[k];
    if (yk == 0.0) continue;
    for (const MatrixEntry& e : sf.A[k]) {
      out[e.block](e.row, e.col) += yk * e.value;
      if (e.row != e.col) out[e.block](e.col, e.row) += yk * e.value;
    }
  }
}

// Largest step a >= 0 with M + a dM >= 0, for symmetric positive definite M.
// Near convergence M can be numerically semidefinite; the eigenvalue-floored
// fallback keeps the ratio test defined instead of freezing the iterate.
double max_step(const Eigen::MatrixXd& M, const Eigen::MatrixXd& dM) {
  Eigen::MatrixXd W;
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() == Eigen::Success) {
    const auto& L = llt.matrixL();
    W = L.solve(dM);
    W = L.solve(W.transpose()).transpose();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double floor = std::max(ev.cwiseAbs().maxCoeff(), 1e-300) * 1e-14;
    Eigen::VectorXd isqrt = ev.cwiseMax(floor).cwiseSqrt().cwiseInverse();
    W = isqrt.asDiagonal() * es.eigenvectors().transpose() * dM * es.eigenvectors() *
        isqrt.asDiagonal();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (W + W.transpose()),
                                                    Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

double block_max_step(const Blocks& M, const Blocks& dM) {
  double a = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < M.size(); ++b) a = std::min(a, max_step(M[b], dM[b]));
  return a;
}

bool blocks_finite(const Blocks& P) {
  for (const auto& M : P)
    if (!M.allFinite()) return false;
  return true;
}

}  // namespace

IpmResult ipm_solve(const std::vector<Index>& block_sizes, const Eigen::VectorXd& cost,
                    const std::vector<std::vector<MatrixEntry>>& F,
                    const std::vector<MatrixEntry>& F0, const IpmOptions& opts) {
  const StandardForm sf = make_standard_form(block_sizes, cost, F, F0);
  IpmResult res;

  if (sf.p == 0) {
    // Pure feasibility of the constant matrix; nothing to optimize.
    res.u.resize(0);
    res.slack = sf.C;
    res.primal = zero_blocks(sf.dims);
    res.status = min_eig(sf.C) >= 0.0 ? IpmStatus::optimal : IpmStatus::diverged;
    return res;
  }

  // Infeasible start scaled to the data.
  const double N = static_cast<double>(sf.total_dim);
  double bscale = 0.0;
  for (Index k = 0; k < sf.p; ++k)
    bscale = std::max(bscale, std::abs(sf.b[k]) / (1.0 + sf.normA[k]));
  const double xi = std::max({10.0, std::sqrt(N), N * bscale});
  double eta = std::max({10.0, std::sqrt(N), sf.normC});
  for (double na : sf.normA) eta = std::max(eta, na);

  Blocks X = zero_blocks(sf.dims);
  Blocks S = zero_blocks(sf.dims);
  for (std::size_t b = 0; b < sf.dims.size(); ++b) {
    X[b].diagonal().setConstant(xi);
    S[b].diagonal().setConstant(eta);
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(sf.p);

  double best_merit = std::numeric_limits<double>::infinity();
  int since_best = 0;
  res.status = IpmStatus::max_iterations;

  // Best iterate seen, restored on stall so endgame round-off can only
  // improve the answer, never destroy it.
  struct Snapshot {
    double merit = std::numeric_limits<double>::infinity();
    double gap = 0.0, pinf = 0.0, dinf = 0.0;
    Blocks X, S;
    Eigen::VectorXd y;
  } best;

  Blocks Sinv = zero_blocks(sf.dims);
  Blocks Rd = zero_blocks(sf.dims);
  Eigen::MatrixXd M(sf.p, sf.p);

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    // Residuals and convergence measures.
    const Eigen::VectorXd ax = a_apply(sf, X);
    const Eigen::VectorXd rp = sf.b - ax;
    for (std::size_t b = 0; b < sf.dims.size(); ++b) Rd[b] = sf.C[b] - S[b];
    at_accumulate(sf, -y, Rd);

    const double mu = inner(X, S) / N;
    const double cx = inner(sf.C, X);
    const double by = sf.b.dot(y);
    const double pinf = rp.norm() / (1.0 + sf.normb);
    const double dinf = fnorm(Rd) / (1.0 + sf.normC);
    const double gap = std::abs(cx - by) / (1.0 + std::abs(cx) + std::abs(by));

    res.iterations = iter;
    res.rel_gap = gap;
    res.primal_inf = pinf;
    res.dual_inf = dinf;

    if (opts.verbose)
      std::fprintf(stderr, "ipm %3d  mu=%9.2e  gap=%9.2e  pinf=%9.2e  dinf=%9.2e  obj=%+.9e\n",
                   iter, mu, gap, pinf, dinf, -by);

    if (!std::isfinite(mu) || !blocks_finite(X) || !blocks_finite(S) || !y.allFinite()) {
      res.status = IpmStatus::numerical_error;
      break;
    }
    if (pinf <= opts.tol && dinf <= opts.tol && gap <= opts.tol) {
      res.status = IpmStatus::optimal;
      break;
    }
    // Early exit for feasibility-phase callers: the dual objective already
    // proves the user objective can go below the requested bar.
    if (-by < opts.stop_below_objective && dinf <= 1e-6) {
      res.status = IpmStatus::feasible_point;
      break;
    }
    const double xnorm = fnorm(X);
    if (by > 1e12 * (1.0 + sf.normb) || xnorm > 1e13) {
      res.status = IpmStatus::diverged;
      break;
    }
    const double merit = std::max({pinf, dinf, gap});
    if (merit < best.merit) {
      best.merit = merit;
      best.gap = gap;
      best.pinf = pinf;
      best.dinf = dinf;
      best.X = X;
      best.S = S;
      best.y = y;
    }
    if (merit < 0.9 * best_merit) {
      best_merit = merit;
      since_best = 0;
    } else if (++since_best > 20) {
      res.status = IpmStatus::stalled;
      break;
    }

    // Factor the slack blocks.
    bool factor_ok = true;
    for (std::size_t b = 0; b < sf.dims.size(); ++b) {
      Eigen::LLT<Eigen::MatrixXd> llt(S[b]);
      if (llt.info() != Eigen::Success) {
        factor_ok = false;
        break;
      }
      Sinv[b] = llt.solve(Eigen::MatrixXd::Identity(sf.dims[b], sf.dims[b]));
    }
    if (!factor_ok) {
      res.status = IpmStatus::numerical_error;
      break;
    }

    // Schur complement M_ij = tr(A_i X A_j Sinv), assembled blockwise from
    // rank-1 pieces of the sparse A_j.
    M.setZero();
    for (std::size_t b = 0; b < sf.dims.size(); ++b) {
      const auto& pb = sf.by_block[b];
      const Index nb = sf.dims[b];
      Eigen::MatrixXd V(nb, nb);
      for (std::size_t jj = 0; jj < pb.vars.size(); ++jj) {
        const Index j = pb.vars[jj];
        V.setZero();
        for (const MatrixEntry& e : pb.entries[jj]) {
          V.noalias() += e.value * (X[b].col(e.row) * Sinv[b].row(e.col));
          if (e.row != e.col) V.noalias() += e.value * (X[b].col(e.col) * Sinv[b].row(e.row));
        }
        for (std::size_t ii = 0; ii <= jj; ++ii) {
          const Index i = pb.vars[ii];
          double s = 0.0;
          for (const MatrixEntry& e : pb.entries[ii]) {
            s += e.value * (e.row == e.col ? V(e.row, e.col) : V(e.row, e.col) + V(e.col, e.row));
          }
          M(i, j) += s;
        }
      }
    }
    for (Index j = 0; j < sf.p; ++j)
      for (Index i = 0; i < j; ++i) M(j, i) = M(i, j);

    const Eigen::MatrixXd M0 = M;
    Eigen::LLT<Eigen::MatrixXd> Mllt(M);
    if (Mllt.info() != Eigen::Success) {
      // Ridge rescue; the Schur complement is PD in exact arithmetic but can
      // lose definiteness to round-off near convergence.
      const double ridge = 1e-13 * std::max(1.0, M.diagonal().maxCoeff());
      for (int t = 0; t < 3 && Mllt.info() != Eigen::Success; ++t) {
        M.diagonal().array() += ridge * std::pow(100.0, t);
        Mllt.compute(M);
      }
      if (Mllt.info() != Eigen::Success) {
        res.status = IpmStatus::numerical_error;
        break;
      }
    }
    // Two rounds of iterative refinement against the unridged matrix claw
    // back the digits the ill-conditioned endgame factorization loses.
    auto schur_solve = [&](const Eigen::VectorXd& r) {
      Eigen::VectorXd v = Mllt.solve(r);
      for (int t = 0; t < 2; ++t) v += Mllt.solve(r - M0 * v);
      return v;
    };

    // Shared piece X Rd Sinv and its constraint image.
    Blocks XRdSinv(sf.dims.size());
    for (std::size_t b = 0; b < sf.dims.size(); ++b)
      XRdSinv[b] = X[b] * Rd[b] * Sinv[b];
    const Eigen::VectorXd a_xrds = a_apply(sf, XRdSinv);

    // Predictor: complementarity target 0.
    const Eigen::VectorXd dy_a = schur_solve(sf.b + a_xrds);
    Blocks dS_a = Rd;
    at_accumulate(sf, -dy_a, dS_a);
    Blocks dX_a(sf.dims.size());
    for (std::size_t b = 0; b < sf.dims.size(); ++b) {
      Eigen::MatrixXd t = -X[b] - X[b] * dS_a[b] * Sinv[b];
      dX_a[b] = 0.5 * (t + t.transpose());
    }
    const double ap_a = std::min(1.0, opts.step_fraction * block_max_step(X, dX_a));
    const double ad_a = std::min(1.0, opts.step_fraction * block_max_step(S, dS_a));

    double mu_aff = 0.0;
    for (std::size_t b = 0; b < sf.dims.size(); ++b)
      mu_aff += ((X[b] + ap_a * dX_a[b]).cwiseProduct(S[b] + ad_a * dS_a[b])).sum();
    mu_aff = std::max(mu_aff / N, 0.0);
    const double sigma = std::min(1.0, std::pow(mu_aff / mu, 3.0));

    // Corrector with Mehrotra's second-order term.
    Eigen::VectorXd rhs = sf.b + a_xrds;
    Blocks Gc(sf.dims.size());
    for (std::size_t b = 0; b < sf.dims.size(); ++b) {
      Gc[b] = sigma * mu * Sinv[b] - dX_a[b] * (dS_a[b] * Sinv[b]);
      // -A(Gc) joins the rhs; the -X part of Rc Sinv is already inside
      // sf.b + a_xrds (it cancels against rp + A(X)).
    }
    rhs -= a_apply(sf, Gc);

    const Eigen::VectorXd dy = schur_solve(rhs);
    Blocks dS = Rd;
    at_accumulate(sf, -dy, dS);
    Blocks dX(sf.dims.size());
    for (std::size_t b = 0; b < sf.dims.size(); ++b) {
      Eigen::MatrixXd t = Gc[b] - X[b] - X[b] * dS[b] * Sinv[b];
      dX[b] = 0.5 * (t + t.transpose());
    }

    const double ap = std::min(1.0, opts.step_fraction * block_max_step(X, dX));
    const double ad = std::min(1.0, opts.step_fraction * block_max_step(S, dS));
    if (opts.verbose)
      std::fprintf(stderr,
                   "      ap_a=%8.2e ad_a=%8.2e sigma=%8.2e ap=%8.2e ad=%8.2e xmin=%9.2e "
                   "smin=%9.2e\n",
                   ap_a, ad_a, sigma, ap, ad, min_eig(X), min_eig(S));
    if (ap <= 1e-13 && ad <= 1e-13) {
      res.status = IpmStatus::stalled;
      break;
    }
    for (std::size_t b = 0; b < sf.dims.size(); ++b) {
      X[b] += ap * dX[b];
      S[b] += ad * dS[b];
    }
    y += ad * dy;
  }

  // Stalled or out of iterations: report the best point instead of whatever
  // the final noisy steps left behind.
  if ((res.status == IpmStatus::stalled || res.status == IpmStatus::max_iterations) &&
      best.y.size() == y.size() && best.merit < std::max({res.primal_inf, res.dual_inf,
                                                          res.rel_gap})) {
    X = best.X;
    S = best.S;
    y = best.y;
    res.rel_gap = best.gap;
    res.primal_inf = best.pinf;
    res.dual_inf = best.dinf;
    if (best.merit <= opts.tol) res.status = IpmStatus::optimal;
  }

  res.u = y;
  res.objective = -sf.b.dot(y);
  res.primal = std::move(X);
  res.slack = std::move(S);
  return res;
}

}  // namespace siv
