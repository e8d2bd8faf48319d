#pragma once

#include <string>

#include "siv/conic.hpp"

namespace siv {

// Serializes the problem in SDPA sparse format (.dat-s).  That format reads
//   minimize c.x  subject to  sum_k x_k F_k - F0 >= 0
// with free scalar variables x, which matches our LMI form after negating
// the constant term; coefficient matrices pass through unchanged and masked
// entries are simply never emitted.  Output is byte-stable: entries are
// sorted by (matrix, block, row, column), duplicates merged, floats printed
// with %.17g.
std::string export_sdpa(const ConicProblem& p);

// Parses SDPA sparse input (comment lines starting with '"' or '*', brace or
// comma separated block lists, 1-based indices, negative sizes for diagonal
// blocks).  Returns a problem carrying only the generic LMI data; the
// X/Y/Z bookkeeping is empty.  Throws std::invalid_argument on malformed
// input.
ConicProblem import_sdpa(const std::string& text);

}  // namespace siv
