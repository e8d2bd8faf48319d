#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

#include "siv/bench.hpp"
#include "siv/conic.hpp"
#include "siv/invariance.hpp"
#include "siv/json_io.hpp"
#include "siv/sdpa_io.hpp"
#include "siv/sparsity.hpp"
#include "siv/structure_opt.hpp"
#include "siv/synthesis.hpp"
#include "siv/witness.hpp"

namespace py = pybind11;

namespace {

const char* reason_name(siv::InvarianceReason r) {
  switch (r) {
    case siv::InvarianceReason::holds: return "holds";
    case siv::InvarianceReason::T_exceeds_S: return "T_exceeds_S";
    case siv::InvarianceReason::product_exceeds_S: return "product_exceeds_S";
  }
  return "unknown";
}

Eigen::MatrixXd pattern_to_array(const siv::SparsityPattern& p) {
  Eigen::MatrixXd M(p.rows(), p.cols());
  for (siv::Index i = 0; i < p.rows(); ++i)
    for (siv::Index j = 0; j < p.cols(); ++j) M(i, j) = p(i, j) ? 1.0 : 0.0;
  return M;
}

siv::SparsityPattern pattern_from_array(const Eigen::MatrixXd& M) {
  siv::SparsityPattern p(M.rows(), M.cols());
  for (siv::Index i = 0; i < M.rows(); ++i)
    for (siv::Index j = 0; j < M.cols(); ++j) {
      const double v = M(i, j);
      if (v != 0.0 && v != 1.0)
        throw std::invalid_argument("pattern entries must be 0 or 1");
      p.set(i, j, v == 1.0);
    }
  return p;
}

siv::WitnessConfig witness_config(std::uint64_t seed) {
  siv::WitnessConfig cfg;
  cfg.seed = seed;
  return cfg;
}

siv::SynthesisOptions synthesis_options(double eps, double tol, int max_iter, bool verbose) {
  siv::SynthesisOptions opts;
  opts.eps = eps;
  opts.solver.tol = tol;
  opts.solver.max_iter = max_iter;
  opts.solver.verbose = verbose;
  return opts;
}

}  // namespace

PYBIND11_MODULE(siv, m) {
  m.doc() = "Structured state-feedback synthesis through sparsity-invariance restrictions";

  py::class_<siv::SparsityPattern>(m, "SparsityPattern",
                                   "Binary matrix marking which entries may be nonzero")
      .def(py::init<siv::Index, siv::Index>(), py::arg("rows"), py::arg("cols"))
      .def_static("identity", &siv::SparsityPattern::identity, py::arg("n"))
      .def_static("ones", &siv::SparsityPattern::ones, py::arg("rows"), py::arg("cols"))
      .def_static("from_text", [](const std::string& t) { return siv::SparsityPattern::from_text(t); },
                  py::arg("text"))
      .def_static("from_array", &pattern_from_array, py::arg("array"))
      .def_property_readonly("rows", &siv::SparsityPattern::rows)
      .def_property_readonly("cols", &siv::SparsityPattern::cols)
      .def("count", &siv::SparsityPattern::count)
      .def("is_symmetric", &siv::SparsityPattern::is_symmetric)
      .def("get", [](const siv::SparsityPattern& p, siv::Index i, siv::Index j) { return p(i, j); },
           py::arg("i"), py::arg("j"))
      .def("set", &siv::SparsityPattern::set, py::arg("i"), py::arg("j"), py::arg("value"))
      .def("to_text", &siv::SparsityPattern::to_text)
      .def("to_array", &pattern_to_array)
      .def("transposed", &siv::SparsityPattern::transposed)
      .def("__eq__", [](const siv::SparsityPattern& a, const siv::SparsityPattern& b) { return a == b; })
      .def("__repr__", [](const siv::SparsityPattern& p) {
        return "SparsityPattern(\n" + p.to_text() + ")";
      });

  m.def("structure_of",
        py::overload_cast<const Eigen::MatrixXd&>(&siv::structure_of), py::arg("matrix"));
  m.def("structure_of",
        py::overload_cast<const Eigen::MatrixXd&, double>(&siv::structure_of), py::arg("matrix"),
        py::arg("tol"));
  m.def("bool_mul", &siv::bool_mul, py::arg("X"), py::arg("Z"));
  m.def("bool_add", &siv::bool_add, py::arg("X"), py::arg("Xhat"));
  m.def("leq", &siv::leq, py::arg("X"), py::arg("Xhat"));
  m.def("closure", &siv::closure, py::arg("R"),
        "Boolean power R^(n-1): cliques of the connected components");

  py::class_<siv::Partition>(m, "Partition")
      .def_readonly("n", &siv::Partition::n)
      .def_readonly("component_of", &siv::Partition::component_of)
      .def_readonly("sizes", &siv::Partition::sizes)
      .def_readonly("r", &siv::Partition::r);
  m.def("connected_components", &siv::connected_components, py::arg("R"));

  m.def("optimize_R", &siv::optimize_R, py::arg("T"),
        "Entrywise-maximal closed symmetric R with bool_mul(T, R) <= T");
  m.def("is_feasible_R", &siv::is_feasible_R, py::arg("T"), py::arg("R"));

  py::class_<siv::InvarianceVerdict>(m, "InvarianceVerdict")
      .def_readonly("holds", &siv::InvarianceVerdict::holds)
      .def_property_readonly("reason",
                             [](const siv::InvarianceVerdict& v) { return reason_name(v.reason); })
      .def_readonly("violating_index", &siv::InvarianceVerdict::violating_index)
      .def("__repr__", [](const siv::InvarianceVerdict& v) {
        return std::string("InvarianceVerdict(") + (v.holds ? "holds" : reason_name(v.reason)) + ")";
      });
  m.def("check_invariance", &siv::check, py::arg("S"), py::arg("T"), py::arg("R"),
        "True iff Y in Sparse(T), invertible X in Sparse(R) force Y X^-1 in Sparse(S)");
  m.def(
      "counterexample",
      [](const siv::SparsityPattern& S, const siv::SparsityPattern& T,
         const siv::SparsityPattern& R, std::uint64_t seed) {
        const siv::CounterexamplePair pair = siv::counterexample(S, T, R, witness_config(seed));
        return std::make_pair(pair.X, pair.Y);
      },
      py::arg("S"), py::arg("T"), py::arg("R"), py::arg("seed") = 0,
      "(X, Y) with Y X^-1 nonzero outside S; raises if invariance holds");
  m.def(
      "numeric_probe",
      [](const siv::SparsityPattern& S, const siv::SparsityPattern& T,
         const siv::SparsityPattern& R, int trials, std::uint64_t seed) {
        return siv::numeric_probe(S, T, R, trials, witness_config(seed));
      },
      py::arg("S"), py::arg("T"), py::arg("R"), py::arg("trials") = 20, py::arg("seed") = 0);

  py::class_<siv::LinearSystem>(m, "LinearSystem",
                                "Plant xdot = A x + B u + H w with output z = C x + D u")
      .def(py::init([](Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd H, Eigen::MatrixXd C,
                       Eigen::MatrixXd D) {
             siv::LinearSystem sys{std::move(A), std::move(B), std::move(H), std::move(C),
                                   std::move(D)};
             sys.validate();
             return sys;
           }),
           py::arg("A"), py::arg("B"), py::arg("H"), py::arg("C"), py::arg("D"))
      .def_readwrite("A", &siv::LinearSystem::A)
      .def_readwrite("B", &siv::LinearSystem::B)
      .def_readwrite("H", &siv::LinearSystem::H)
      .def_readwrite("C", &siv::LinearSystem::C)
      .def_readwrite("D", &siv::LinearSystem::D)
      .def_property_readonly("n", &siv::LinearSystem::n)
      .def_property_readonly("m", &siv::LinearSystem::m)
      .def("validate", &siv::LinearSystem::validate);

  py::class_<siv::HurwitzReport>(m, "HurwitzReport")
      .def_readonly("hurwitz", &siv::HurwitzReport::hurwitz)
      .def_readonly("spectral_abscissa", &siv::HurwitzReport::spectral_abscissa);
  m.def("is_hurwitz", &siv::is_hurwitz, py::arg("M"), py::arg("margin") = 0.0);
  m.def("h2_norm", &siv::h2_norm, py::arg("sys"), py::arg("K"),
        "Closed-loop energy norm; raises if A + B K is not Hurwitz");
  m.def("default_eps", &siv::default_eps, py::arg("sys"));

  py::class_<siv::SeparabilityCertificate>(m, "SeparabilityCertificate")
      .def_readonly("permutation", &siv::SeparabilityCertificate::permutation)
      .def_readonly("block_sizes", &siv::SeparabilityCertificate::block_sizes)
      .def_readonly("r", &siv::SeparabilityCertificate::r)
      .def_readonly("block_min_eigs", &siv::SeparabilityCertificate::block_min_eigs);

  py::class_<siv::InfeasibilityCertificate>(m, "InfeasibilityCertificate")
      .def_readonly("witness", &siv::InfeasibilityCertificate::witness)
      .def_readonly("f0_inner", &siv::InfeasibilityCertificate::f0_inner)
      .def_readonly("max_var_inner", &siv::InfeasibilityCertificate::max_var_inner)
      .def_readonly("min_eig", &siv::InfeasibilityCertificate::min_eig)
      .def_readonly("trace", &siv::InfeasibilityCertificate::trace);

  py::class_<siv::SynthesisResiduals>(m, "SynthesisResiduals")
      .def_readonly("lyap_lmi_mineig", &siv::SynthesisResiduals::lyap_lmi_mineig)
      .def_readonly("k_sparsity_max_violation",
                    &siv::SynthesisResiduals::k_sparsity_max_violation)
      .def_readonly("spectral_abscissa", &siv::SynthesisResiduals::spectral_abscissa);

  py::class_<siv::SolverDiagnostics>(m, "SolverDiagnostics")
      .def_readonly("iterations", &siv::SolverDiagnostics::iterations)
      .def_readonly("rel_gap", &siv::SolverDiagnostics::rel_gap)
      .def_readonly("primal_infeasibility", &siv::SolverDiagnostics::primal_infeasibility)
      .def_readonly("dual_infeasibility", &siv::SolverDiagnostics::dual_infeasibility)
      .def_readonly("message", &siv::SolverDiagnostics::message);

  py::class_<siv::SynthesisResult>(m, "SynthesisResult")
      .def_property_readonly("status",
                             [](const siv::SynthesisResult& r) { return siv::to_string(r.status); })
      .def_readonly("K", &siv::SynthesisResult::K)
      .def_readonly("P", &siv::SynthesisResult::P)
      .def_readonly("X", &siv::SynthesisResult::X)
      .def_readonly("Y", &siv::SynthesisResult::Y)
      .def_readonly("Z", &siv::SynthesisResult::Z)
      .def_readonly("objective", &siv::SynthesisResult::objective)
      .def_readonly("h2", &siv::SynthesisResult::h2)
      .def_readonly("certificate", &siv::SynthesisResult::certificate)
      .def_readonly("infeasibility", &siv::SynthesisResult::infeasibility)
      .def_readonly("residuals", &siv::SynthesisResult::residuals)
      .def_readonly("diagnostics", &siv::SynthesisResult::diagnostics)
      .def("__repr__", [](const siv::SynthesisResult& r) {
        return "SynthesisResult(status=" + siv::to_string(r.status) + ")";
      });

  m.def(
      "synthesize",
      [](const siv::LinearSystem& sys, const siv::SparsityPattern& S,
         const siv::SparsityPattern& T, const siv::SparsityPattern& R, double eps, double tol,
         int max_iter, bool verbose) {
        return siv::synthesize(sys, S, T, R, synthesis_options(eps, tol, max_iter, verbose));
      },
      py::arg("sys"), py::arg("S"), py::arg("T"), py::arg("R"), py::arg("eps") = 0.0,
      py::arg("tol") = 1e-7, py::arg("max_iter") = 100, py::arg("verbose") = false,
      "Minimize the closed-loop energy bound over K = Y X^-1 with Y in Sparse(T) "
      "and X in Sparse(closure(R))");

  m.def(
      "export_sdpa",
      [](const siv::LinearSystem& sys, const siv::SparsityPattern& T,
         const siv::SparsityPattern& R, double eps) {
        const double e = eps > 0.0 ? eps : siv::default_eps(sys);
        return siv::export_sdpa(siv::build_restriction(sys, T, siv::closure(R), e));
      },
      py::arg("sys"), py::arg("T"), py::arg("R"), py::arg("eps") = 0.0,
      "Restriction serialized in SDPA sparse format");
  m.def(
      "solve_sdpa",
      [](const std::string& text, double tol, int max_iter) {
        siv::SolverOptions opts;
        opts.tol = tol;
        opts.max_iter = max_iter;
        const siv::SdpSolution s = siv::solve(siv::import_sdpa(text), opts);
        return std::make_pair(siv::to_string(s.status), s.objective);
      },
      py::arg("text"), py::arg("tol") = 1e-7, py::arg("max_iter") = 100,
      "Parse SDPA sparse text and solve it; returns (status, objective)");

  py::class_<siv::Example1>(m, "Example1")
      .def_readonly("sys", &siv::Example1::sys)
      .def_readonly("S", &siv::Example1::S)
      .def_readonly("T", &siv::Example1::T)
      .def_readonly("R", &siv::Example1::R);
  m.def("example1", &siv::example1, "Three-state worked example with its patterns");

  py::class_<siv::MeshSpec>(m, "MeshSpec")
      .def(py::init<>())
      .def_readwrite("n", &siv::MeshSpec::n)
      .def_readwrite("alpha", &siv::MeshSpec::alpha)
      .def_readwrite("L", &siv::MeshSpec::L)
      .def_readwrite("reveal_order", &siv::MeshSpec::reveal_order);
  py::class_<siv::MeshProblem>(m, "MeshProblem")
      .def_readonly("sys", &siv::MeshProblem::sys)
      .def_readonly("S", &siv::MeshProblem::S);
  m.def("mesh_system", &siv::mesh_system, py::arg("spec"),
        "Square mesh of coupled unstable nodes with its information pattern");

  py::class_<siv::ProblemFile>(m, "ProblemFile")
      .def_readonly("sys", &siv::ProblemFile::sys)
      .def_readonly("S", &siv::ProblemFile::S)
      .def_readonly("T", &siv::ProblemFile::T)
      .def_readonly("R", &siv::ProblemFile::R)
      .def("effective_T", &siv::ProblemFile::effective_T)
      .def("effective_R", &siv::ProblemFile::effective_R);
  m.def("load_problem", &siv::load_problem, py::arg("path"));
  m.def("problem_from_json", &siv::problem_from_json, py::arg("text"));
}
