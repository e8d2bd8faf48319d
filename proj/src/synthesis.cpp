#include "siv/synthesis.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "siv/invariance.hpp"

namespace siv {

HurwitzReport is_hurwitz(const Eigen::MatrixXd& M, double margin) {
  if (M.rows() != M.cols()) throw std::invalid_argument("is_hurwitz: matrix must be square");
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, /*computeEigenvectors=*/false);
  HurwitzReport rep;
  rep.spectral_abscissa = es.eigenvalues().real().maxCoeff();
  rep.hurwitz = rep.spectral_abscissa < -margin;
  return rep;
}

double h2_norm(const LinearSystem& sys, const Eigen::MatrixXd& K) {
  sys.validate();
  if (K.rows() != sys.m() || K.cols() != sys.n())
    throw std::invalid_argument("h2_norm: K must be m x n");
  const Eigen::MatrixXd Acl = sys.A + sys.B * K;
  if (!is_hurwitz(Acl).hurwitz)
    throw std::invalid_argument("h2_norm: closed loop is not Hurwitz, norm undefined");

  // Controllability Gramian: Acl W + W Acl' + H H' = 0, vectorized as
  // (I (x) Acl + Acl (x) I) vec(W) = -vec(HH').
  const Index n = sys.n();
  Eigen::MatrixXd Mk = Eigen::MatrixXd::Zero(n * n, n * n);
  for (Index j = 0; j < n; ++j) Mk.block(j * n, j * n, n, n) = Acl;  // I (x) Acl
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      Mk.block(i * n, j * n, n, n).diagonal().array() += Acl(i, j);  // Acl (x) I
  const Eigen::MatrixXd HHt = sys.H * sys.H.transpose();
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(HHt.data(), n * n);
  const Eigen::VectorXd w = Mk.partialPivLu().solve(rhs);
  Eigen::MatrixXd W = Eigen::Map<const Eigen::MatrixXd>(w.data(), n, n);
  W = 0.5 * (W + W.transpose());

  const Eigen::MatrixXd Ccl = sys.C + sys.D * K;
  const double val = (Ccl * W * Ccl.transpose()).trace();
  return std::sqrt(std::max(val, 0.0));
}

SeparabilityCertificate separability_certificate(const Eigen::MatrixXd& P,
                                                 const SparsityPattern& R, double tol) {
  if (P.rows() != P.cols() || P.rows() != R.rows())
    throw std::invalid_argument("separability_certificate: P must be square, sized like R");
  if (!(tol >= 0.0)) throw std::invalid_argument("separability_certificate: tol must be >= 0");
  if ((P - P.transpose()).cwiseAbs().maxCoeff() > tol * (1.0 + P.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("separability_certificate: P is not symmetric within tol");
  const SparsityPattern closed = closure(R);
  const double abs_tol = tol * (1.0 + P.cwiseAbs().maxCoeff());
  if (!leq(structure_of(P, abs_tol), closed))
    throw std::invalid_argument("separability_certificate: P has support outside closure(R)");

  const BlockPermutation perm = block_diag_permutation(R);
  SeparabilityCertificate cert;
  cert.permutation = perm.order;
  cert.block_sizes = perm.block_sizes;
  cert.r = static_cast<int>(perm.block_sizes.size());

  Index offset = 0;
  for (Index v : perm.block_sizes) {
    Eigen::MatrixXd block(v, v);
    for (Index a = 0; a < v; ++a)
      for (Index b = 0; b < v; ++b) block(a, b) = P(perm.order[offset + a], perm.order[offset + b]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
    const double mineig = es.eigenvalues().minCoeff();
    if (!(mineig > 0.0))
      throw std::invalid_argument("separability_certificate: a diagonal block is not positive definite");
    cert.block_min_eigs.push_back(mineig);
    offset += v;
  }
  return cert;
}

SynthesisResult synthesize(const LinearSystem& sys, const SparsityPattern& S,
                           const SparsityPattern& T, const SparsityPattern& R,
                           const SynthesisOptions& opts) {
  sys.validate();
  if (opts.eps < 0.0) throw std::invalid_argument("synthesize: eps must be >= 0");
  const InvarianceVerdict verdict = check(S, T, R);
  if (!verdict.holds)
    throw std::invalid_argument(
        "synthesize: (S, T, R) violates sparsity invariance; the restriction would not "
        "enforce the controller pattern");

  const double eps = opts.eps > 0.0 ? opts.eps : default_eps(sys);
  const SparsityPattern R_closed = closure(R);
  const ConicProblem problem = build_restriction(sys, T, R_closed, eps);
  const SdpSolution sdp = solve(problem, opts.solver);

  SynthesisResult res;
  res.status = sdp.status;
  res.diagnostics = sdp.diagnostics;
  res.infeasibility = sdp.certificate;
  res.objective = sdp.objective;
  if (sdp.status != SdpStatus::optimal && sdp.status != SdpStatus::inaccurate) return res;

  res.X = sdp.X;
  res.Y = sdp.Y;
  res.Z = sdp.Z;

  // K = Y X^{-1}; X >= eps I makes the Cholesky solve safe.
  Eigen::LLT<Eigen::MatrixXd> xllt(res.X);
  if (xllt.info() != Eigen::Success) {
    res.status = SdpStatus::inaccurate;
    res.diagnostics.message = "returned X is not positive definite";
    return res;
  }
  const Eigen::MatrixXd K_raw = xllt.solve(res.Y.transpose()).transpose();
  res.P = xllt.solve(Eigen::MatrixXd::Identity(sys.n(), sys.n()));

  // Project onto Sparse(S); in exact arithmetic the projection removes
  // nothing, so the discarded mass measures solver noise.
  const double kmax = K_raw.cwiseAbs().maxCoeff();
  double violation = 0.0;
  res.K = K_raw;
  for (Index i = 0; i < K_raw.rows(); ++i) {
    for (Index j = 0; j < K_raw.cols(); ++j) {
      if (!S(i, j)) {
        violation = std::max(violation, std::abs(K_raw(i, j)));
        res.K(i, j) = 0.0;
      }
    }
  }
  res.residuals.k_sparsity_max_violation = kmax > 0.0 ? violation / kmax : violation;

  const Eigen::MatrixXd Acl = sys.A + sys.B * res.K;
  const HurwitzReport hw = is_hurwitz(Acl);
  res.residuals.spectral_abscissa = hw.spectral_abscissa;

  const Eigen::MatrixXd decay =
      -(Acl.transpose() * res.P + res.P * Acl +
        res.P * sys.H * sys.H.transpose() * res.P);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (decay + decay.transpose()),
                                                    Eigen::EigenvaluesOnly);
  res.residuals.lyap_lmi_mineig = es.eigenvalues().minCoeff();

  if (!hw.hurwitz) {
    res.status = SdpStatus::inaccurate;
    res.diagnostics.message = "projected controller failed the stability check";
    return res;
  }
  res.h2 = h2_norm(sys, res.K);

  try {
    res.certificate = separability_certificate(res.P, R_closed, 1e-6);
  } catch (const std::invalid_argument& err) {
    res.status = SdpStatus::inaccurate;
    res.diagnostics.message = err.what();
  }
  return res;
}

}  // namespace siv
