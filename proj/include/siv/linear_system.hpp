#pragma once

#include <Eigen/Core>

#include "siv/sparsity.hpp"

namespace siv {

// Plant  xdot = A x + B u + H w,  performance  z = C x + D u.
struct LinearSystem {
  Eigen::MatrixXd A;  // n x n
  Eigen::MatrixXd B;  // n x m
  Eigen::MatrixXd H;  // n x q
  Eigen::MatrixXd C;  // p x n
  Eigen::MatrixXd D;  // p x m

  Index n() const { return A.rows(); }
  Index m() const { return B.cols(); }
  Index q() const { return H.cols(); }
  Index p() const { return C.rows(); }

  // Throws std::invalid_argument on any dimension mismatch.
  void validate() const;
};

}  // namespace siv
