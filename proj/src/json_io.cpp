#include "siv/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "siv/structure_opt.hpp"

namespace siv {

namespace {

const nlohmann::json& require_key(const nlohmann::json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument("problem file: missing key '" + key + "'");
  return j.at(key);
}

}  // namespace

nlohmann::json json_of(const Eigen::MatrixXd& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < M.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json json_of(const SparsityPattern& P) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < P.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < P.cols(); ++j) row.push_back(P(i, j) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw std::invalid_argument("problem file: '" + key + "' must be an array of rows");
  const std::size_t cols = j.front().size();
  Eigen::MatrixXd M(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& row = j.at(i);
    if (!row.is_array() || row.size() != cols)
      throw std::invalid_argument("problem file: '" + key + "' has ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row.at(c).is_number())
        throw std::invalid_argument("problem file: '" + key + "' has a non-numeric entry");
      M(i, c) = row.at(c).get<double>();
    }
  }
  return M;
}

SparsityPattern pattern_from_json(const nlohmann::json& j, const std::string& key) {
  if (!j.is_array() || j.empty() || !j.front().is_array())
    throw std::invalid_argument("problem file: '" + key + "' must be an array of rows");
  const std::size_t cols = j.front().size();
  SparsityPattern P(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& row = j.at(i);
    if (!row.is_array() || row.size() != cols)
      throw std::invalid_argument("problem file: '" + key + "' has ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& cell = row.at(c);
      if (!cell.is_number_integer() || (cell.get<int>() != 0 && cell.get<int>() != 1))
        throw std::invalid_argument("problem file: '" + key + "' entries must be 0 or 1");
      P.set(i, c, cell.get<int>() == 1);
    }
  }
  return P;
}

SparsityPattern ProblemFile::effective_R() const {
  if (R) return *R;
  return optimize_R(effective_T());
}

ProblemFile problem_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("problem file: ") + e.what());
  }

  ProblemFile pf;
  pf.sys.A = matrix_from_json(require_key(j, "A"), "A");
  pf.sys.B = matrix_from_json(require_key(j, "B"), "B");
  pf.sys.H = matrix_from_json(require_key(j, "H"), "H");
  pf.sys.C = matrix_from_json(require_key(j, "C"), "C");
  pf.sys.D = matrix_from_json(require_key(j, "D"), "D");
  pf.sys.validate();
  pf.S = pattern_from_json(require_key(j, "S"), "S");
  if (j.contains("T")) pf.T = pattern_from_json(j.at("T"), "T");
  if (j.contains("R")) pf.R = pattern_from_json(j.at("R"), "R");

  if (pf.S.rows() != pf.sys.m() || pf.S.cols() != pf.sys.n())
    throw std::invalid_argument("problem file: S must be inputs x states");
  if (pf.T && (pf.T->rows() != pf.sys.m() || pf.T->cols() != pf.sys.n()))
    throw std::invalid_argument("problem file: T must be inputs x states");
  if (pf.R && (pf.R->rows() != pf.sys.n() || pf.R->cols() != pf.sys.n()))
    throw std::invalid_argument("problem file: R must be states x states");
  return pf;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return problem_from_json(buf.str());
}

nlohmann::json json_of(const InvarianceVerdict& v) {
  nlohmann::json j;
  j["holds"] = v.holds;
  switch (v.reason) {
    case InvarianceReason::holds: j["reason"] = "holds"; break;
    case InvarianceReason::T_exceeds_S: j["reason"] = "T_exceeds_S"; break;
    case InvarianceReason::product_exceeds_S: j["reason"] = "product_exceeds_S"; break;
  }
  if (v.violating_index)
    j["violating_index"] = {v.violating_index->first, v.violating_index->second};
  return j;
}

nlohmann::json json_of(const SynthesisResult& r) {
  nlohmann::json j;
  j["status"] = to_string(r.status);
  j["objective"] = r.objective;
  j["h2"] = r.h2;
  if (r.status == SdpStatus::optimal || r.status == SdpStatus::inaccurate) {
    j["K"] = json_of(r.K);
    j["P"] = json_of(r.P);
    j["X"] = json_of(r.X);
    j["Y"] = json_of(r.Y);
    j["Z"] = json_of(r.Z);
    j["residuals"] = {{"lyap_lmi_mineig", r.residuals.lyap_lmi_mineig},
                      {"k_sparsity_max_violation", r.residuals.k_sparsity_max_violation},
                      {"spectral_abscissa", r.residuals.spectral_abscissa}};
  }
  if (r.certificate) {
    nlohmann::json c;
    c["r"] = r.certificate->r;
    c["permutation"] = r.certificate->permutation;
    c["block_sizes"] = r.certificate->block_sizes;
    c["block_min_eigs"] = r.certificate->block_min_eigs;
    j["separability"] = std::move(c);
  }
  if (r.infeasibility) {
    nlohmann::json c;
    c["f0_inner"] = r.infeasibility->f0_inner;
    c["max_var_inner"] = r.infeasibility->max_var_inner;
    c["min_eig"] = r.infeasibility->min_eig;
    c["trace"] = r.infeasibility->trace;
    j["infeasibility"] = std::move(c);
  }
  j["diagnostics"] = {{"iterations", r.diagnostics.iterations},
                      {"rel_gap", r.diagnostics.rel_gap},
                      {"primal_infeasibility", r.diagnostics.primal_infeasibility},
                      {"dual_infeasibility", r.diagnostics.dual_infeasibility},
                      {"message", r.diagnostics.message}};
  return j;
}

}  // namespace siv
