#include "siv/conic.hpp"

#include <stdexcept>

namespace siv {

void ConicProblem::unpack(const Eigen::VectorXd& u, Eigen::MatrixXd& X, Eigen::MatrixXd& Y,
                          Eigen::MatrixXd& Z) const {
  if (u.size() != num_vars()) throw std::invalid_argument("unpack: wrong vector length");
  X = Eigen::MatrixXd::Zero(n, n);
  Y = Eigen::MatrixXd::Zero(m, n);
  Z = Eigen::MatrixXd::Zero(m, m);
  for (Index k = 0; k < num_vars(); ++k) {
    const VarRef& v = vars[k];
    switch (v.kind) {
      case VarKind::X:
        X(v.i, v.j) = u[k];
        X(v.j, v.i) = u[k];
        break;
      case VarKind::Y:
        Y(v.i, v.j) = u[k];
        break;
      case VarKind::Z:
        Z(v.i, v.j) = u[k];
        Z(v.j, v.i) = u[k];
        break;
    }
  }
}

std::vector<Eigen::MatrixXd> ConicProblem::evaluate(const Eigen::VectorXd& u) const {
  if (u.size() != num_vars()) throw std::invalid_argument("evaluate: wrong vector length");
  std::vector<Eigen::MatrixXd> blocks;
  blocks.reserve(block_sizes.size());
  for (Index s : block_sizes) blocks.emplace_back(Eigen::MatrixXd::Zero(s, s));

  auto add = [&](const MatrixEntry& e, double scale) {
    blocks[e.block](e.row, e.col) += scale * e.value;
    if (e.row != e.col) blocks[e.block](e.col, e.row) += scale * e.value;
  };
  for (const MatrixEntry& e : const_mat) add(e, 1.0);
  for (Index k = 0; k < num_vars(); ++k)
    for (const MatrixEntry& e : var_mats[k]) add(e, u[k]);
  return blocks;
}

std::string to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::infeasible: return "infeasible";
    case SdpStatus::unbounded: return "unbounded";
    case SdpStatus::inaccurate: return "inaccurate";
    case SdpStatus::solver_error: return "solver_error";
  }
  return "solver_error";
}

double default_eps(const LinearSystem& sys) {
  const double a = sys.A.cwiseAbs().maxCoeff();
  const Eigen::MatrixXd HHt = sys.H * sys.H.transpose();
  const double h = HHt.cwiseAbs().maxCoeff();
  return 1e-6 * std::max({1.0, a, h});
}

namespace {

// Appends the upper triangle of the symmetric matrix M to `out`, skipping
// exact zeros so constraint data stays sparse.
void emit_symmetric(std::vector<MatrixEntry>& out, int block, const Eigen::MatrixXd& M) {
  for (Index r = 0; r < M.rows(); ++r)
    for (Index c = r; c < M.cols(); ++c)
      if (M(r, c) != 0.0) out.push_back({block, r, c, M(r, c)});
}

}  // namespace

ConicProblem build_restriction(const LinearSystem& sys, const SparsityPattern& T,
                               const SparsityPattern& R_closed, double eps) {
  sys.validate();
  const Index n = sys.n();
  const Index m = sys.m();
  if (T.rows() != m || T.cols() != n)
    throw std::invalid_argument("build_restriction: T must be m x n");
  if (!R_closed.is_square() || R_closed.rows() != n)
    throw std::invalid_argument("build_restriction: R_closed must be n x n");
  if (!R_closed.is_symmetric() || !R_closed.has_unit_diagonal() || closure(R_closed) != R_closed)
    throw std::invalid_argument("build_restriction: R_closed must be a closed symmetric pattern");
  if (!(eps > 0.0)) throw std::invalid_argument("build_restriction: eps must be positive");

  ConicProblem p;
  p.n = n;
  p.m = m;
  p.eps = eps;
  p.x_mask = R_closed;
  p.y_mask = T;
  p.block_sizes = {m + n, n, n};

  const Eigen::MatrixXd CtC = sys.C.transpose() * sys.C;
  const Eigen::MatrixXd DtC = sys.D.transpose() * sys.C;
  const Eigen::MatrixXd DtD = sys.D.transpose() * sys.D;

  std::vector<double> cost;
  Eigen::MatrixXd lyap = Eigen::MatrixXd::Zero(n, n);  // scratch for block-2 coefficients

  // X variables: free upper-triangle entries of the Lyapunov certificate.
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      if (!R_closed(i, j)) continue;
      p.vars.push_back({VarKind::X, i, j});
      cost.push_back(i == j ? CtC(i, i) : 2.0 * CtC(i, j));
      std::vector<MatrixEntry> F;
      F.push_back({0, m + i, m + j, 1.0});
      F.push_back({1, i, j, 1.0});
      lyap.setZero();
      lyap.col(j) += sys.A.col(i);
      if (i != j) lyap.col(i) += sys.A.col(j);
      const Eigen::MatrixXd M = -(lyap + lyap.transpose());
      emit_symmetric(F, 2, M);
      p.var_mats.push_back(std::move(F));
    }
  }
  // Y variables: controller factor, masked by T.
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (!T(i, j)) continue;
      p.vars.push_back({VarKind::Y, i, j});
      cost.push_back(2.0 * DtC(i, j));
      std::vector<MatrixEntry> F;
      F.push_back({0, i, m + j, 1.0});
      lyap.setZero();
      lyap.col(j) = sys.B.col(i);
      const Eigen::MatrixXd M = -(lyap + lyap.transpose());
      emit_symmetric(F, 2, M);
      p.var_mats.push_back(std::move(F));
    }
  }
  // Z variables: full symmetric slack bounding Y X^{-1} Y'.
  for (Index i = 0; i < m; ++i) {
    for (Index j = i; j < m; ++j) {
      p.vars.push_back({VarKind::Z, i, j});
      cost.push_back(i == j ? DtD(i, i) : 2.0 * DtD(i, j));
      p.var_mats.push_back({{0, i, j, 1.0}});
    }
  }
  p.cost = Eigen::Map<const Eigen::VectorXd>(cost.data(), static_cast<Index>(cost.size()));

  // F0: the X floor and the constant part of the Lyapunov inequality.
  for (Index i = 0; i < n; ++i) p.const_mat.push_back({1, i, i, -eps});
  Eigen::MatrixXd lyap0 = -(sys.H * sys.H.transpose());
  lyap0.diagonal().array() -= eps;
  emit_symmetric(p.const_mat, 2, lyap0);
  return p;
}

}  // namespace siv
