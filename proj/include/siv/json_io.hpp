#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "siv/invariance.hpp"
#include "siv/linear_system.hpp"
#include "siv/sparsity.hpp"
#include "siv/synthesis.hpp"

namespace siv {

// Problem file: object with keys A, B, H, C, D (arrays of rows of numbers)
// and S, T, R (arrays of rows of 0/1).  S is required; T defaults to S and R
// defaults to optimize_R(T), so a file can carry just the plant and the
// controller pattern.
struct ProblemFile {
  LinearSystem sys;
  SparsityPattern S;
  std::optional<SparsityPattern> T;
  std::optional<SparsityPattern> R;

  SparsityPattern effective_T() const { return T ? *T : S; }
  SparsityPattern effective_R() const;
};

// Parsing throws std::invalid_argument on malformed JSON, missing keys,
// ragged rows, or dimension mismatches.
ProblemFile problem_from_json(const std::string& text);
ProblemFile load_problem(const std::string& path);

nlohmann::json json_of(const Eigen::MatrixXd& M);
nlohmann::json json_of(const SparsityPattern& P);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const std::string& key);
SparsityPattern pattern_from_json(const nlohmann::json& j, const std::string& key);

nlohmann::json json_of(const InvarianceVerdict& v);
nlohmann::json json_of(const SynthesisResult& r);

}  // namespace siv
