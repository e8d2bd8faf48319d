#include "siv/witness.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace siv {

namespace {

double draw_alpha(std::mt19937_64& rng, const WitnessConfig& cfg) {
  std::uniform_real_distribution<double> mag(cfg.alpha_min, cfg.alpha_max);
  std::bernoulli_distribution flip(0.5);
  const double a = mag(rng);
  return flip(rng) ? a : -a;
}

// Alpha is admissible for the rank-1 update X + alpha e_i e_j^T when it keeps
// the update nonsingular and cancels no entry of row i of the inverse.
bool alpha_admissible(const Eigen::MatrixXd& Xinv, Index i, Index j, double alpha, double ztol) {
  const double denom = 1.0 + alpha * Xinv(j, i);
  if (std::abs(denom) <= ztol * (1.0 + std::abs(alpha * Xinv(j, i)))) return false;
  const Index n = Xinv.rows();
  for (Index k = 0; k < n; ++k) {
    const double a = Xinv(i, k);
    const double b = Xinv(j, k);
    if (std::abs(a) <= ztol && std::abs(b) <= ztol) continue;
    const double coef = Xinv(i, i) * b - Xinv(j, i) * a;
    if (std::abs(alpha * coef - a) <= ztol * (1.0 + std::abs(alpha * coef) + std::abs(a))) return false;
  }
  return true;
}

}  // namespace

void WitnessConfig::validate() const {
  if (!(alpha_min > 0.0) || !(alpha_max >= alpha_min))
    throw std::invalid_argument("alpha range must satisfy 0 < alpha_min <= alpha_max");
  if (!(nonzero_tol > 0.0)) throw std::invalid_argument("nonzero_tol must be positive");
  if (max_retries < 1) throw std::invalid_argument("max_retries must be >= 1");
}

DenseInverseWitness construct_dense_inverse(const SparsityPattern& R, const WitnessConfig& cfg) {
  cfg.validate();
  if (!R.is_square() || !R.is_symmetric() || !R.has_unit_diagonal())
    throw std::invalid_argument("construct_dense_inverse: R must be square symmetric with unit diagonal");

  const Index n = R.rows();
  const SparsityPattern target = closure(R);

  std::vector<std::pair<Index, Index>> support;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (i != j && R(i, j)) support.emplace_back(i, j);

  const int max_sweeps = std::max<int>(1, static_cast<int>(n) - 1);
  std::mt19937_64 rng(cfg.seed);

  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    Eigen::MatrixXd X = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd Xinv = Eigen::MatrixXd::Identity(n, n);
    DenseInverseWitness out;

    auto pattern_reached = [&]() {
      return structure_of(Xinv, relative_tolerance(Xinv, cfg.nonzero_tol)) == target;
    };

    bool degenerate = false;
    while (!pattern_reached() && !degenerate) {
      if (out.sweeps >= max_sweeps) {
        degenerate = true;
        break;
      }
      for (const auto& [i, j] : support) {
        const double ztol = relative_tolerance(Xinv, cfg.nonzero_tol);
        double alpha = 0.0;
        bool found = false;
        for (int t = 0; t < cfg.max_retries; ++t) {
          alpha = draw_alpha(rng, cfg);
          if (alpha_admissible(Xinv, i, j, alpha, ztol)) {
            found = true;
            break;
          }
        }
        if (!found) {
          degenerate = true;
          break;
        }
        X(i, j) += alpha;
        const double denom = 1.0 + alpha * Xinv(j, i);
        const Eigen::VectorXd col_i = Xinv.col(i);
        const Eigen::RowVectorXd row_j = Xinv.row(j);
        Xinv.noalias() -= (alpha / denom) * (col_i * row_j);
        ++out.updates;
      }
      ++out.sweeps;
    }

    if (!degenerate) {
      // Return a freshly computed inverse; the incrementally maintained one
      // only steers the sweeps.
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(X);
      const Eigen::MatrixXd fresh = lu.inverse();
      if (structure_of(fresh, relative_tolerance(fresh, cfg.nonzero_tol)) == target) {
        out.X = std::move(X);
        out.X_inv = fresh;
        return out;
      }
    }
    rng.seed(cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt + 1));
  }
  throw WitnessDegeneracyError("construct_dense_inverse: target inverse pattern not reached");
}

Eigen::MatrixXd construct_full_product(const SparsityPattern& T, const Eigen::MatrixXd& W,
                                       const WitnessConfig& cfg) {
  cfg.validate();
  if (T.cols() != W.rows())
    throw std::invalid_argument("construct_full_product: T.cols must equal W.rows");

  const Index m = T.rows();
  const Index p = W.cols();
  const double wtol = relative_tolerance(W, cfg.nonzero_tol);
  const SparsityPattern target = bool_mul(T, structure_of(W, wtol));

  std::mt19937_64 rng(cfg.seed);

  for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
    Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(m, T.cols());
    Eigen::MatrixXd ZW = Eigen::MatrixXd::Zero(m, p);

    const int max_passes = static_cast<int>(target.count()) + 1;
    bool degenerate = false;
    for (int pass = 0; pass < max_passes && !degenerate; ++pass) {
      const double ztol = relative_tolerance(ZW, cfg.nonzero_tol);
      bool missing = false;
      for (Index i = 0; i < m && !degenerate; ++i) {
        for (Index j = 0; j < p; ++j) {
          if (!target(i, j) || std::abs(ZW(i, j)) > ztol) continue;
          missing = true;
          Index k = -1;
          for (Index cand = 0; cand < T.cols(); ++cand)
            if (T(i, cand) && std::abs(W(cand, j)) > wtol) {
              k = cand;
              break;
            }
          // target(i,j)=1 guarantees such a k exists
          double alpha = 0.0;
          bool found = false;
          for (int t = 0; t < cfg.max_retries && !found; ++t) {
            alpha = draw_alpha(rng, cfg);
            found = true;
            for (Index s = 0; s < p; ++s) {
              // Entries of row i already captured must not be cancelled, and
              // the entry being fixed must come out clearly nonzero.
              const bool keep = s == j || std::abs(ZW(i, s)) > ztol;
              if (!keep || std::abs(W(k, s)) <= wtol) continue;
              const double next = ZW(i, s) + alpha * W(k, s);
              if (std::abs(next) <= ztol * (1.0 + std::abs(alpha * W(k, s)) + std::abs(ZW(i, s)))) {
                found = false;
                break;
              }
            }
          }
          if (!found) {
            degenerate = true;
            break;
          }
          Z(i, k) += alpha;
          ZW.row(i) += alpha * W.row(k);
        }
      }
      if (!missing) break;
    }

    if (!degenerate &&
        structure_of(ZW, relative_tolerance(ZW, cfg.nonzero_tol)) == target) {
      return Z;
    }
    rng.seed(cfg.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt + 1));
  }
  throw WitnessDegeneracyError("construct_full_product: target product pattern not reached");
}

Eigen::MatrixXd random_member(const SparsityPattern& X, std::mt19937_64& rng, const WitnessConfig& cfg) {
  cfg.validate();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(X.rows(), X.cols());
  for (Index i = 0; i < X.rows(); ++i)
    for (Index j = 0; j < X.cols(); ++j)
      if (X(i, j)) M(i, j) = draw_alpha(rng, cfg);
  return M;
}

Eigen::MatrixXd random_member(const SparsityPattern& X, const WitnessConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  return random_member(X, rng, cfg);
}

}  // namespace siv
