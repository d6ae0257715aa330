#pragma once

#include <optional>

#include "sgfem/model.hpp"
#include "sgfem/quadrature.hpp"
#include "sgfem/sg_system.hpp"
#include "sgfem/solvers.hpp"

namespace sgfem {

// Per-quadrature-node realization bookkeeping: each projection node owns a
// realized material table and a full Gauss-point state set, committed in
// lockstep with the coefficient updates so the projected stiffness and
// internal forces see the exact load path of that realization.
struct StochasticStates {
  QuadratureRule rule;
  Eigen::MatrixXd psi;  // n_q x n_xi basis values at the nodes
  std::vector<MaterialTable> node_materials;
  std::vector<ElementStates> node_states;

  static StochasticStates create(const Model& model, const GpcBasis& basis,
                                 const QuadratureRule& rule);
};

// K_j = sum_q w_q psi_j(xi_q) K(xi_q), each realization assembled from the
// node's own material table and committed states. j = 1..n_K.
SgSystem project_stiffness(const Model& model, const StochasticStates& states,
                           const GpcBasis& basis,
                           const TripleProductTensor& tensor);

// g_m = sum_q w_q psi_m(xi_q) g(xi_q) over all basis members.
GpcVector project_internal_force(const Model& model,
                                 const StochasticStates& states);

enum class SgPreconditionerKind { None, MeanBased, HierarchicalGs };

// Step tolerance and step cap come from the LoadProgram.
struct SgOptions {
  double floor_u = 1e-12;
  double tol_r = 1e-10;
  SgPreconditionerKind preconditioner = SgPreconditionerKind::MeanBased;
  double cg_tol = 1e-8;
  int cg_max_iter = 2000;
  bool record_reports = true;
};

struct SgStepReport {
  int increment = 0;  // 1-based
  int step = 0;       // 1-based
  SolveReport solve;
};

struct SgSolution {
  std::vector<GpcVector> u_history;  // one coefficient vector per increment
  std::vector<int> step_counts;
  std::vector<SgStepReport> reports;
  StochasticStates states;  // final
  int n_x = 0;
  int n_xi = 0;
};

// Incremental stochastic analysis: the projected tangent terms are rebuilt
// once per load increment, inner steps refresh the internal-force expansion
// and solve the coupled block system by preconditioned CG, warm-started
// from the previous step's increment.
SgSolution sg_newton_raphson(const Model& model, const GpcBasis& basis,
                             const TripleProductTensor& tensor,
                             const QuadratureRule& rule,
                             const SgOptions& options = {});

}  // namespace sgfem
