#include "siv/sparsity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace siv {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_undirected_adjacency(const SparsityPattern& R, const char* who) {
  require(R.is_square(), "pattern must be square");
  if (!R.is_symmetric()) throw std::invalid_argument(std::string(who) + ": pattern must be symmetric");
  if (!R.has_unit_diagonal()) throw std::invalid_argument(std::string(who) + ": diagonal must be all ones");
}

}  // namespace

SparsityPattern::SparsityPattern(Index rows, Index cols) : rows_(rows), cols_(cols) {
  require(rows > 0 && cols > 0, "pattern dimensions must be positive");
  bits_.assign(static_cast<std::size_t>(rows * cols), 0);
}

SparsityPattern SparsityPattern::identity(Index n) {
  SparsityPattern p(n, n);
  for (Index i = 0; i < n; ++i) p.set(i, i, true);
  return p;
}

SparsityPattern SparsityPattern::ones(Index rows, Index cols) {
  SparsityPattern p(rows, cols);
  std::fill(p.bits_.begin(), p.bits_.end(), std::uint8_t{1});
  return p;
}

SparsityPattern SparsityPattern::from_bits(const std::vector<std::vector<int>>& bits) {
  require(!bits.empty() && !bits.front().empty(), "empty bit array");
  const Index rows = static_cast<Index>(bits.size());
  const Index cols = static_cast<Index>(bits.front().size());
  SparsityPattern p(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    require(static_cast<Index>(bits[i].size()) == cols, "ragged bit array");
    for (Index j = 0; j < cols; ++j) {
      const int b = bits[i][j];
      require(b == 0 || b == 1, "pattern entries must be 0 or 1");
      p.set(i, j, b == 1);
    }
  }
  return p;
}

SparsityPattern SparsityPattern::from_text(std::string_view text) {
  std::vector<std::vector<int>> bits;
  std::vector<int> row;
  for (char c : text) {
    if (c == '0' || c == '1') {
      row.push_back(c - '0');
    } else if (c == '\n') {
      if (!row.empty()) bits.push_back(std::move(row));
      row.clear();
    } else if (c == ' ' || c == '\t' || c == '\r') {
      continue;
    } else {
      throw std::invalid_argument("pattern text may contain only 0/1 characters");
    }
  }
  if (!row.empty()) bits.push_back(std::move(row));
  return from_bits(bits);
}

Index SparsityPattern::count() const {
  return std::accumulate(bits_.begin(), bits_.end(), Index{0});
}

bool SparsityPattern::is_symmetric() const {
  if (!is_square()) return false;
  for (Index i = 0; i < rows_; ++i)
    for (Index j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool SparsityPattern::has_unit_diagonal() const {
  if (!is_square()) return false;
  for (Index i = 0; i < rows_; ++i)
    if (!(*this)(i, i)) return false;
  return true;
}

SparsityPattern SparsityPattern::transposed() const {
  SparsityPattern t(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j)
      if ((*this)(i, j)) t.set(j, i, true);
  return t;
}

std::string SparsityPattern::to_text() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(rows_ * (cols_ + 1)));
  for (Index i = 0; i < rows_; ++i) {
    for (Index j = 0; j < cols_; ++j) out.push_back((*this)(i, j) ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

double relative_tolerance(const Eigen::MatrixXd& M, double base) {
  const double scale = M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
  return base * (1.0 + scale);
}

SparsityPattern structure_of(const Eigen::MatrixXd& M, double tol) {
  require(tol >= 0.0, "tolerance must be nonnegative");
  SparsityPattern p(M.rows(), M.cols());
  for (Index i = 0; i < M.rows(); ++i)
    for (Index j = 0; j < M.cols(); ++j)
      if (std::abs(M(i, j)) > tol) p.set(i, j, true);
  return p;
}

SparsityPattern structure_of(const Eigen::MatrixXd& M) {
  return structure_of(M, relative_tolerance(M, 1e-9));
}

SparsityPattern bool_mul(const SparsityPattern& X, const SparsityPattern& Z) {
  require(X.cols() == Z.rows(), "bool_mul: inner dimensions differ");
  SparsityPattern out(X.rows(), Z.cols());
  for (Index i = 0; i < X.rows(); ++i)
    for (Index j = 0; j < X.cols(); ++j)
      if (X(i, j))
        for (Index k = 0; k < Z.cols(); ++k)
          if (Z(j, k)) out.set(i, k, true);
  return out;
}

SparsityPattern bool_add(const SparsityPattern& X, const SparsityPattern& Xhat) {
  require(X.rows() == Xhat.rows() && X.cols() == Xhat.cols(), "bool_add: shapes differ");
  SparsityPattern out(X.rows(), X.cols());
  for (Index i = 0; i < X.rows(); ++i)
    for (Index j = 0; j < X.cols(); ++j)
      out.set(i, j, X(i, j) || Xhat(i, j));
  return out;
}

std::optional<std::pair<Index, Index>> leq_violation(const SparsityPattern& X,
                                                     const SparsityPattern& Xhat) {
  require(X.rows() == Xhat.rows() && X.cols() == Xhat.cols(), "leq: shapes differ");
  for (Index i = 0; i < X.rows(); ++i)
    for (Index j = 0; j < X.cols(); ++j)
      if (X(i, j) && !Xhat(i, j)) return std::make_pair(i, j);
  return std::nullopt;
}

bool leq(const SparsityPattern& X, const SparsityPattern& Xhat) {
  return !leq_violation(X, Xhat).has_value();
}

bool lt(const SparsityPattern& X, const SparsityPattern& Xhat) {
  return leq(X, Xhat) && X.count() < Xhat.count();
}

SparsityPattern closure(const SparsityPattern& R) {
  require_undirected_adjacency(R, "closure");
  const Index n = R.rows();
  // Boolean squaring: R^(2^k) >= R^(n-1) once 2^k >= n-1, and powers of an
  // R >= I are monotone in the exponent, so the result equals R^(n-1).
  SparsityPattern power = R;
  for (Index reach = 1; reach < n - 1; reach *= 2) power = bool_mul(power, power);
  return power;
}

Partition connected_components(const SparsityPattern& R) {
  require_undirected_adjacency(R, "connected_components");
  const Index n = R.rows();
  Partition part;
  part.n = n;
  part.component_of.assign(static_cast<std::size_t>(n), -1);
  std::vector<Index> stack;
  for (Index root = 0; root < n; ++root) {
    if (part.component_of[root] >= 0) continue;
    const int id = part.r++;
    Index size = 0;
    stack.push_back(root);
    part.component_of[root] = id;
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      ++size;
      for (Index w = 0; w < n; ++w) {
        if (R(v, w) && part.component_of[w] < 0) {
          part.component_of[w] = id;
          stack.push_back(w);
        }
      }
    }
    part.sizes.push_back(size);
  }
  return part;
}

BlockPermutation block_diag_permutation(const SparsityPattern& R) {
  const Partition part = connected_components(R);
  BlockPermutation bp;
  bp.block_sizes = part.sizes;
  bp.order.reserve(static_cast<std::size_t>(part.n));
  for (int id = 0; id < part.r; ++id)
    for (Index i = 0; i < part.n; ++i)
      if (part.component_of[i] == id) bp.order.push_back(i);
  return bp;
}

}  // namespace siv
