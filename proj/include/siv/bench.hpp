#pragma once

#include <optional>
#include <string>
#include <vector>

#include "siv/linear_system.hpp"
#include "siv/sparsity.hpp"
#include "siv/synthesis.hpp"

namespace siv {

// The three-state benchmark plant with its controller pattern S, the tighter
// factor pattern T, and the two-component Lyapunov pattern R.
struct Example1 {
  LinearSystem sys;
  SparsityPattern S;
  SparsityPattern T;
  SparsityPattern R;
};

Example1 example1();

// Square mesh of coupled unstable second-order nodes.  Node ids are 0-based
// and row-major over the grid; node v owns states 2v and 2v+1 and input v.
struct MeshSpec {
  Index n = 4;         // grid side, n^2 nodes
  double alpha = 0.1;  // coupling strength between mesh neighbours
  Index L = 0;         // how many nodes get full state information
  // Order in which nodes are upgraded to full information.  Empty selects
  // the default: the published succession for n = 4, identity otherwise.
  std::vector<Index> reveal_order;

  Index nodes() const { return n * n; }
  void validate() const;
  std::vector<Index> effective_reveal_order() const;
};

struct MeshProblem {
  LinearSystem sys;
  SparsityPattern S;  // n^2 x 2n^2: own + neighbour states, full rows when revealed
};

MeshProblem mesh_system(const MeshSpec& spec);

// Lyapunov pattern of the prior block-diagonal approach: n_sub blocks of the
// given size along the diagonal.
SparsityPattern block_diag_baseline_R(Index n_sub, Index block);

// Clique-based controller factor: horizontally adjacent node pairs share all
// four of their states, and the first L revealed nodes get full rows.
// Requires an even grid side so pairs never wrap across rows.
SparsityPattern t_new(const MeshSpec& spec);

enum class SweepMethod { block_diag, siv_TS, siv_Tnew, centralized };

std::string to_string(SweepMethod m);
std::optional<SweepMethod> sweep_method_from_string(const std::string& name);

struct SweepCell {
  Index L = 0;
  SweepMethod method = SweepMethod::block_diag;
  SdpStatus status = SdpStatus::solver_error;
  double objective = 0.0;
  double h2 = 0.0;
  int r = 0;          // separability components of the Lyapunov pattern used
  double wall_ms = 0.0;
  std::string note;   // failure description; empty when the cell is healthy
};

// Runs synthesize for each (L, method) pair in deterministic row order.
// Identical (S, T, R) triples are solved once and reused (the centralized
// method ignores L entirely).  Per-cell failures are recorded, never thrown.
std::vector<SweepCell> sweep(const MeshSpec& base, const std::vector<Index>& L_values,
                             const std::vector<SweepMethod>& methods,
                             const SynthesisOptions& opts = {});

// CSV with header L,method,status,objective,h2,r,wall_ms.
std::string sweep_csv(const std::vector<SweepCell>& cells);

}  // namespace siv
