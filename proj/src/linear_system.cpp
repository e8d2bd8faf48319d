#include "siv/linear_system.hpp"

#include <stdexcept>

namespace siv {

void LinearSystem::validate() const {
  if (A.rows() == 0 || A.rows() != A.cols())
    throw std::invalid_argument("LinearSystem: A must be square and nonempty");
  if (B.rows() != A.rows() || B.cols() == 0)
    throw std::invalid_argument("LinearSystem: B must be n x m with m >= 1");
  if (H.rows() != A.rows() || H.cols() == 0)
    throw std::invalid_argument("LinearSystem: H must be n x q with q >= 1");
  if (C.cols() != A.rows() || C.rows() == 0)
    throw std::invalid_argument("LinearSystem: C must be p x n with p >= 1");
  if (D.rows() != C.rows() || D.cols() != B.cols())
    throw std::invalid_argument("LinearSystem: D must be p x m");
}

}  // namespace siv
