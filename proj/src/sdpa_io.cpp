#include "siv/sdpa_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace siv {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

using EntryKey = std::tuple<int, int, Index, Index>;  // matno, block, row, col

}  // namespace

std::string export_sdpa(const ConicProblem& p) {
  std::map<EntryKey, double> merged;
  for (const MatrixEntry& e : p.const_mat) merged[{0, e.block, e.row, e.col}] -= e.value;
  for (Index k = 0; k < p.num_vars(); ++k)
    for (const MatrixEntry& e : p.var_mats[k])
      merged[{static_cast<int>(k) + 1, e.block, e.row, e.col}] += e.value;

  std::ostringstream out;
  out << p.num_vars() << "\n";
  out << p.block_sizes.size() << "\n";
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b)
    out << (b ? " " : "") << p.block_sizes[b];
  out << "\n";
  for (Index k = 0; k < p.num_vars(); ++k)
    out << (k ? " " : "") << format_double(p.cost[k]);
  out << "\n";
  for (const auto& [key, value] : merged) {
    if (value == 0.0) continue;
    const auto& [matno, block, row, col] = key;
    out << matno << " " << block + 1 << " " << row + 1 << " " << col + 1 << " "
        << format_double(value) << "\n";
  }
  return out.str();
}

ConicProblem import_sdpa(const std::string& text) {
  // Strip comments, soften the punctuation SDPA allows in the block list,
  // then read everything as whitespace separated tokens.
  std::ostringstream cleaned;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '"' || line[start] == '*') continue;
    for (char& ch : line)
      if (ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',') ch = ' ';
    cleaned << line << "\n";
  }
  std::istringstream in(cleaned.str());

  auto next_ll = [&](const char* what) {
    long long v;
    if (!(in >> v)) throw std::invalid_argument(std::string("import_sdpa: expected ") + what);
    return v;
  };
  auto next_d = [&](const char* what) {
    double v;
    if (!(in >> v)) throw std::invalid_argument(std::string("import_sdpa: expected ") + what);
    return v;
  };

  const long long nvars = next_ll("variable count");
  const long long nblocks = next_ll("block count");
  if (nvars < 0 || nblocks <= 0) throw std::invalid_argument("import_sdpa: bad header counts");

  ConicProblem p;
  p.block_sizes.resize(nblocks);
  for (long long b = 0; b < nblocks; ++b) {
    const long long s = next_ll("block size");
    if (s == 0) throw std::invalid_argument("import_sdpa: zero block size");
    // Negative sizes mark diagonal blocks; a dense block whose off-diagonal
    // entries are absent constrains exactly the same set, so only the
    // magnitude matters here.
    p.block_sizes[b] = static_cast<Index>(s < 0 ? -s : s);
  }
  p.cost.resize(nvars);
  for (long long k = 0; k < nvars; ++k) p.cost[k] = next_d("cost entry");
  p.var_mats.assign(nvars, {});

  long long matno, block, i, j;
  while (in >> matno) {
    block = next_ll("block index");
    i = next_ll("row index");
    j = next_ll("column index");
    const double v = next_d("entry value");
    if (matno < 0 || matno > nvars || block < 1 || block > nblocks)
      throw std::invalid_argument("import_sdpa: entry indices out of range");
    MatrixEntry e;
    e.block = static_cast<int>(block - 1);
    e.row = static_cast<Index>(std::min(i, j) - 1);
    e.col = static_cast<Index>(std::max(i, j) - 1);
    if (e.row < 0 || e.col >= p.block_sizes[e.block])
      throw std::invalid_argument("import_sdpa: entry outside its block");
    e.value = matno == 0 ? -v : v;
    if (matno == 0)
      p.const_mat.push_back(e);
    else
      p.var_mats[matno - 1].push_back(e);
  }
  return p;
}

}  // namespace siv
