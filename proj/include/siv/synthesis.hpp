#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "siv/conic.hpp"
#include "siv/linear_system.hpp"
#include "siv/sparsity.hpp"

namespace siv {

struct HurwitzReport {
  bool hurwitz = false;
  double spectral_abscissa = 0.0;  // max real part over eigenvalues
};

// True iff every eigenvalue has real part < -margin; the abscissa is always
// reported so callers can apply their own margin.
HurwitzReport is_hurwitz(const Eigen::MatrixXd& M, double margin = 0.0);

// Closed-loop H2 norm sqrt(Tr((C+DK) W (C+DK)')) with W the controllability
// Gramian of (A+BK, H), solved densely by Kronecker vectorization.  Throws
// std::invalid_argument when A+BK is not Hurwitz (the norm is undefined).
double h2_norm(const LinearSystem& sys, const Eigen::MatrixXd& K);

// Proof that x'Px splits into r independent quadratic forms: a permutation
// grouping the components of G(R), the resulting diagonal block sizes, and
// each block's smallest eigenvalue (all positive for a valid certificate).
struct SeparabilityCertificate {
  std::vector<Index> permutation;
  std::vector<Index> block_sizes;
  int r = 0;
  std::vector<double> block_min_eigs;
};

// Validates that P is symmetric, supported inside closure(R) within tol, and
// positive definite blockwise; throws std::invalid_argument otherwise.
SeparabilityCertificate separability_certificate(const Eigen::MatrixXd& P,
                                                 const SparsityPattern& R, double tol);

struct SynthesisResiduals {
  // Smallest eigenvalue of -((A+BK)'P + P(A+BK) + P H H' P); positive means
  // the decay inequality holds strictly at the recovered controller.
  double lyap_lmi_mineig = 0.0;
  // Largest |K| entry outside S before projection, relative to max|K|.
  double k_sparsity_max_violation = 0.0;
  double spectral_abscissa = 0.0;
};

struct SynthesisResult {
  SdpStatus status = SdpStatus::solver_error;
  Eigen::MatrixXd K;  // projected controller, exactly inside Sparse(S)
  Eigen::MatrixXd P;  // Lyapunov matrix X^{-1}
  Eigen::MatrixXd X, Y, Z;
  double objective = 0.0;  // SDP value (squared-norm bound)
  double h2 = 0.0;         // achieved closed-loop norm at the projected K
  std::optional<SeparabilityCertificate> certificate;
  std::optional<InfeasibilityCertificate> infeasibility;
  SynthesisResiduals residuals;
  SolverDiagnostics diagnostics;
};

struct SynthesisOptions {
  SolverOptions solver;
  double eps = 0.0;  // strictness margin; 0 requests default_eps(sys)
};

// End-to-end synthesis: verifies that (S, T, R) satisfies sparsity
// invariance (throws otherwise), solves the restriction over closure(R),
// recovers K = Y X^{-1}, projects it onto Sparse(S), and certifies
// stability, the decay inequality, and Lyapunov separability.
SynthesisResult synthesize(const LinearSystem& sys, const SparsityPattern& S,
                           const SparsityPattern& T, const SparsityPattern& R,
                           const SynthesisOptions& opts = {});

}  // namespace siv
