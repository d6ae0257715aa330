#include "sgfem/sg.hpp"

#include <memory>

#include "sgfem/common.hpp"

namespace sgfem {

StochasticStates StochasticStates::create(const Model& model,
                                          const GpcBasis& basis,
                                          const QuadratureRule& rule) {
  require(rule.dim == model.n_random,
          "StochasticStates: rule dimension must match the model");
  require(basis.dim() == model.n_random,
          "StochasticStates: basis dimension must match the model");
  StochasticStates s;
  s.rule = rule;
  const int n_q = static_cast<int>(rule.size());
  s.psi.resize(n_q, basis.size());
  s.node_materials.reserve(n_q);
  s.node_states.reserve(n_q);
  for (int q = 0; q < n_q; ++q) {
    s.psi.row(q) = basis.eval_all(rule.nodes[q]).transpose();
    s.node_materials.push_back(model.realize(rule.nodes[q]));
    s.node_states.push_back(zero_states(model.mesh));
  }
  return s;
}

SgSystem project_stiffness(const Model& model, const StochasticStates& states,
                           const GpcBasis& basis,
                           const TripleProductTensor& tensor) {
  const int n_K = tensor.n_K();
  SgSystem sys;
  sys.tensor = &tensor;
  sys.n_x = model.mesh.n_free();
  sys.n_xi = basis.size();
  sys.terms.resize(n_K);

  for (std::size_t q = 0; q < states.rule.size(); ++q) {
    SpMat Kq;
    try {
      Kq = assemble_stiffness(model.mesh, states.node_materials[q],
                              states.node_states[q]);
    } catch (const std::exception& e) {
      fail("project_stiffness: realization at node " + std::to_string(q) +
           " failed: " + e.what());
    }
    for (int j = 0; j < n_K; ++j) {
      const double c = states.rule.weights[q] * states.psi(q, j);
      if (sys.terms[j].rows() == 0)
        sys.terms[j] = c * Kq;
      else
        sys.terms[j] += c * Kq;
    }
  }
  return sys;
}

GpcVector project_internal_force(const Model& model,
                                 const StochasticStates& states) {
  const int n_xi = static_cast<int>(states.psi.cols());
  GpcVector g = GpcVector::zero(n_xi, model.mesh.n_free());
  for (std::size_t q = 0; q < states.rule.size(); ++q) {
    const Eigen::VectorXd gq =
        assemble_internal_force(model.mesh, states.node_states[q]);
    for (int m = 0; m < n_xi; ++m)
      g.block(m) += states.rule.weights[q] * states.psi(q, m) * gq;
  }
  return g;
}

SgSolution sg_newton_raphson(const Model& model, const GpcBasis& basis,
                             const TripleProductTensor& tensor,
                             const QuadratureRule& rule,
                             const SgOptions& options) {
  model.program.validate(model.mesh.n_dof());
  require(tensor.n_xi() == basis.size(),
          "sg_newton_raphson: tensor size must match the basis");

  SgSolution sol;
  sol.states = StochasticStates::create(model, basis, rule);
  sol.n_x = model.mesh.n_free();
  sol.n_xi = basis.size();

  const int n_xi = sol.n_xi;
  const int n_x = sol.n_x;
  const Eigen::VectorXd pattern = model.mesh.to_free(model.program.load_pattern);

  GpcVector U = GpcVector::zero(n_xi, n_x);

  for (int n = 0; n < model.program.n_increments(); ++n) {
    // deterministic load: only the mean block carries the external force
    GpcVector F = GpcVector::zero(n_xi, n_x);
    F.block(0) = model.program.scale_factors[n] * pattern;
    const double f_norm = F.norm();

    SgSystem sys = project_stiffness(model, sol.states, basis, tensor);
    std::shared_ptr<const SpdFactor> mean_factor;
    try {
      mean_factor = std::make_shared<SpdFactor>(sys.terms[0]);
    } catch (const std::exception& e) {
      fail("sg_newton_raphson: increment " + std::to_string(n + 1) + ": " +
           e.what());
    }

    std::unique_ptr<Preconditioner> precond;
    switch (options.preconditioner) {
      case SgPreconditionerKind::None:
        precond = std::make_unique<IdentityPreconditioner>();
        break;
      case SgPreconditionerKind::MeanBased:
        precond = std::make_unique<MeanBasedPreconditioner>(mean_factor);
        break;
      case SgPreconditionerKind::HierarchicalGs:
        precond = std::make_unique<HierarchicalGsPreconditioner>(
            HierarchicalPartition::from_basis(basis), sys, mean_factor);
        break;
    }

    GpcVector warm = GpcVector::zero(n_xi, n_x);
    bool have_warm = false;
    bool converged = false;
    int steps = 0;
    for (int step = 0; step < model.program.max_steps; ++step) {
      const GpcVector G = project_internal_force(model, sol.states);
      GpcVector R = GpcVector::zero(n_xi, n_x);
      R.data = F.data - G.data;
      if (R.norm() <= std::max(options.tol_r * f_norm, 1e-14)) {
        converged = true;
        break;
      }
      auto [dU, report] =
          cg(sys, *precond, R, options.cg_tol, options.cg_max_iter,
             have_warm ? &warm : nullptr);
      if (!report.converged)
        fail("sg_newton_raphson: CG stalled at increment " +
             std::to_string(n + 1) + ", step " + std::to_string(step + 1) +
             " (relative residual " +
             format_double(report.residual_history.back()) + ")");
      if (options.record_reports)
        sol.reports.push_back({n + 1, step + 1, std::move(report)});
      warm = dU;
      have_warm = true;

      // advance every realization along its own reconstructed increment
      for (std::size_t q = 0; q < sol.states.rule.size(); ++q) {
        const Eigen::VectorXd du_q =
            dU.at(sol.states.psi.row(q).transpose());
        commit_increment(model.mesh, sol.states.node_materials[q],
                         sol.states.node_states[q], du_q);
      }
      U.data += dU.data;
      steps = step + 1;
      if (dU.norm() <= model.program.tol_u * std::max(U.norm(), options.floor_u)) {
        converged = true;
        break;
      }
    }
    if (!converged)
      fail("sg_newton_raphson: increment " + std::to_string(n + 1) +
           " did not converge within " +
           std::to_string(model.program.max_steps) + " steps");
    sol.u_history.push_back(U);
    sol.step_counts.push_back(steps);
  }
  return sol;
}

}  // namespace sgfem
