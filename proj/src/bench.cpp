#include "siv/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <stdexcept>

#include "siv/structure_opt.hpp"

namespace siv {

Example1 example1() {
  Example1 ex;
  ex.sys.A.resize(3, 3);
  ex.sys.A << 2, 1, 5,
              0, -1, 1,
              -1, 1, 0.5;
  ex.sys.B.resize(3, 3);
  ex.sys.B << 1, -1, 0,
              0, 0, -1,
              0, 0, 1;
  ex.sys.H = Eigen::MatrixXd::Identity(3, 3);
  ex.sys.C = Eigen::MatrixXd::Zero(6, 3);
  ex.sys.C.topRows(3) = Eigen::MatrixXd::Identity(3, 3);
  ex.sys.D = Eigen::MatrixXd::Zero(6, 3);
  ex.sys.D.bottomRows(3) = Eigen::MatrixXd::Identity(3, 3);
  ex.S = SparsityPattern::from_text("110\n111\n011");
  ex.T = SparsityPattern::from_text("110\n111\n001");
  ex.R = SparsityPattern::from_text("110\n110\n001");
  return ex;
}

void MeshSpec::validate() const {
  if (n < 1) throw std::invalid_argument("MeshSpec: grid side must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("MeshSpec: alpha must be positive");
  if (L < 0 || L > nodes()) throw std::invalid_argument("MeshSpec: L out of range");
  if (!reveal_order.empty()) {
    if (static_cast<Index>(reveal_order.size()) != nodes())
      throw std::invalid_argument("MeshSpec: reveal_order must list every node once");
    std::vector<bool> seen(nodes(), false);
    for (Index v : reveal_order) {
      if (v < 0 || v >= nodes() || seen[v])
        throw std::invalid_argument("MeshSpec: reveal_order is not a permutation");
      seen[v] = true;
    }
  }
}

std::vector<Index> MeshSpec::effective_reveal_order() const {
  if (!reveal_order.empty()) return reveal_order;
  if (n == 4) {
    // Published succession, converted to 0-based row-major node ids.
    return {13, 14, 2, 10, 1, 4, 8, 15, 7, 12, 6, 0, 11, 5, 9, 3};
  }
  std::vector<Index> order(nodes());
  std::iota(order.begin(), order.end(), Index{0});
  return order;
}

namespace {

std::vector<Index> mesh_neighbours(Index v, Index n) {
  const Index r = v / n;
  const Index c = v % n;
  std::vector<Index> out;
  if (r > 0) out.push_back(v - n);
  if (r + 1 < n) out.push_back(v + n);
  if (c > 0) out.push_back(v - 1);
  if (c + 1 < n) out.push_back(v + 1);
  return out;
}

}  // namespace

MeshProblem mesh_system(const MeshSpec& spec) {
  spec.validate();
  const Index N = spec.nodes();
  MeshProblem out;

  out.sys.A = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  for (Index v = 0; v < N; ++v) {
    out.sys.A.block(2 * v, 2 * v, 2, 2) << 1, 1, 1, 2;
    for (Index w : mesh_neighbours(v, spec.n)) {
      out.sys.A(2 * v, 2 * w) = spec.alpha;
      out.sys.A(2 * v + 1, 2 * w + 1) = spec.alpha;
    }
  }
  out.sys.B = Eigen::MatrixXd::Zero(2 * N, N);
  for (Index v = 0; v < N; ++v) out.sys.B(2 * v + 1, v) = 1.0;
  out.sys.H = out.sys.B;
  out.sys.C = Eigen::MatrixXd::Zero(3 * N, 2 * N);
  out.sys.C.topRows(2 * N) = Eigen::MatrixXd::Identity(2 * N, 2 * N);
  out.sys.D = Eigen::MatrixXd::Zero(3 * N, N);
  out.sys.D.bottomRows(N) = Eigen::MatrixXd::Identity(N, N);

  out.S = SparsityPattern(N, 2 * N);
  auto grant = [&](Index row, Index node) {
    out.S.set(row, 2 * node, true);
    out.S.set(row, 2 * node + 1, true);
  };
  for (Index v = 0; v < N; ++v) {
    grant(v, v);
    for (Index w : mesh_neighbours(v, spec.n)) grant(v, w);
  }
  const std::vector<Index> order = spec.effective_reveal_order();
  for (Index k = 0; k < spec.L; ++k)
    for (Index c = 0; c < 2 * N; ++c) out.S.set(order[k], c, true);
  return out;
}

SparsityPattern block_diag_baseline_R(Index n_sub, Index block) {
  if (n_sub < 1 || block < 1)
    throw std::invalid_argument("block_diag_baseline_R: counts must be positive");
  SparsityPattern R(n_sub * block, n_sub * block);
  for (Index s = 0; s < n_sub; ++s)
    for (Index a = 0; a < block; ++a)
      for (Index b = 0; b < block; ++b) R.set(s * block + a, s * block + b, true);
  return R;
}

SparsityPattern t_new(const MeshSpec& spec) {
  spec.validate();
  if (spec.n % 2 != 0)
    throw std::invalid_argument("t_new: clique pairing requires an even grid side");
  const Index N = spec.nodes();
  SparsityPattern T(N, 2 * N);
  for (Index p = 0; p < N / 2; ++p)
    for (Index dr = 0; dr < 2; ++dr)
      for (Index dc = 0; dc < 4; ++dc) T.set(2 * p + dr, 4 * p + dc, true);
  const std::vector<Index> order = spec.effective_reveal_order();
  for (Index k = 0; k < spec.L; ++k)
    for (Index c = 0; c < 2 * N; ++c) T.set(order[k], c, true);
  return T;
}

std::string to_string(SweepMethod m) {
  switch (m) {
    case SweepMethod::block_diag: return "block_diag";
    case SweepMethod::siv_TS: return "siv_TS";
    case SweepMethod::siv_Tnew: return "siv_Tnew";
    case SweepMethod::centralized: return "centralized";
  }
  return "unknown";
}

std::optional<SweepMethod> sweep_method_from_string(const std::string& name) {
  if (name == "block_diag") return SweepMethod::block_diag;
  if (name == "siv_TS") return SweepMethod::siv_TS;
  if (name == "siv_Tnew") return SweepMethod::siv_Tnew;
  if (name == "centralized") return SweepMethod::centralized;
  return std::nullopt;
}

std::vector<SweepCell> sweep(const MeshSpec& base, const std::vector<Index>& L_values,
                             const std::vector<SweepMethod>& methods,
                             const SynthesisOptions& opts) {
  struct Cached {
    SynthesisResult result;
    int r = 0;
    double wall_ms = 0.0;
  };
  std::map<std::string, Cached> cache;
  std::vector<SweepCell> cells;

  for (Index L : L_values) {
    MeshSpec spec = base;
    spec.L = L;
    const MeshProblem mesh = mesh_system(spec);
    for (SweepMethod method : methods) {
      SweepCell cell;
      cell.L = L;
      cell.method = method;
      cell.objective = std::numeric_limits<double>::quiet_NaN();
      cell.h2 = std::numeric_limits<double>::quiet_NaN();
      try {
        SparsityPattern S = mesh.S, T, R;
        switch (method) {
          case SweepMethod::block_diag:
            T = mesh.S;
            R = block_diag_baseline_R(spec.nodes(), 2);
            break;
          case SweepMethod::siv_TS:
            T = mesh.S;
            R = optimize_R(T);
            break;
          case SweepMethod::siv_Tnew:
            T = t_new(spec);
            R = optimize_R(T);
            break;
          case SweepMethod::centralized:
            S = SparsityPattern::ones(mesh.S.rows(), mesh.S.cols());
            T = S;
            R = SparsityPattern::ones(mesh.S.cols(), mesh.S.cols());
            break;
        }
        const std::string key = S.to_text() + "#" + T.to_text() + "#" + R.to_text();
        auto it = cache.find(key);
        if (it == cache.end()) {
          const auto t0 = std::chrono::steady_clock::now();
          Cached c;
          c.result = synthesize(mesh.sys, S, T, R, opts);
          const auto t1 = std::chrono::steady_clock::now();
          c.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
          c.r = c.result.certificate ? c.result.certificate->r
                                     : connected_components(closure(R)).r;
          it = cache.emplace(key, std::move(c)).first;
        }
        const Cached& c = it->second;
        cell.status = c.result.status;
        cell.objective = c.result.objective;
        cell.h2 = c.result.h2;
        cell.r = c.r;
        cell.wall_ms = c.wall_ms;
        if (!c.result.diagnostics.message.empty() && c.result.status != SdpStatus::optimal)
          cell.note = c.result.diagnostics.message;
      } catch (const std::exception& err) {
        cell.status = SdpStatus::solver_error;
        cell.note = err.what();
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
  std::string out = "L,method,status,objective,h2,r,wall_ms\n";
  char buf[160];
  for (const SweepCell& c : cells) {
    std::snprintf(buf, sizeof(buf), "%lld,%s,%s,%.9g,%.9g,%d,%.1f\n",
                  static_cast<long long>(c.L), to_string(c.method).c_str(),
                  to_string(c.status).c_str(), c.objective, c.h2, c.r, c.wall_ms);
    out += buf;
  }
  return out;
}

}  // namespace siv
