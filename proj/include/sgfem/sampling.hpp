#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgfem/gpc.hpp"
#include "sgfem/model.hpp"
#include "sgfem/quadrature.hpp"
#include "sgfem/sg_system.hpp"

namespace sgfem {

// What to record from each deterministic run. Displacement observables are
// full-mesh dof ids; the tangent-modulus probe reports the compressive
// tangent at Gauss point 0 of one element.
struct ObservableSet {
  std::vector<int> dofs;  // 0-based full dof ids
  std::optional<int> ect_probe_element;
  std::vector<std::string> names;  // parallel to columns

  int count() const {
    return static_cast<int>(dofs.size()) + (ect_probe_element ? 1 : 0);
  }
};

// Observable row for one realization's displacement vector. The probe
// strain is linear in u, so no state history is required.
Eigen::VectorXd extract_observables(const Model& model,
                                    const MaterialTable& materials,
                                    const ObservableSet& obs,
                                    const Eigen::VectorXd& u_free);

struct SampleResult {
  Eigen::VectorXd xi;
  bool converged = true;
  int last_converged_increment = 0;
  Eigen::MatrixXd observables;  // n_increments x n_observables (converged part)
};

struct SampleEnsemble {
  std::vector<SampleResult> samples;
  std::uint64_t seed = 0;
  std::string method;  // "mc" or "sc"
  int n_increments = 0;

  double failed_fraction() const;
  // column of one observable at one increment over converged samples
  std::vector<double> observable_column(int increment, int observable) const;
};

// Independent incremental analyses at i.i.d. uniform draws; sample k is
// reproducible from (seed, k) alone. Non-convergence is recorded per
// sample, not fatal.
SampleEnsemble monte_carlo(const Model& model, const ObservableSet& obs,
                           int n_samples, std::uint64_t seed, int workers = 1);

struct CollocationResult {
  std::vector<GpcVector> u_coeff_history;  // per increment
  SampleEnsemble node_ensemble;            // per-node observables (weights aside)
  int n_x = 0;
  int n_xi = 0;
};

// Pseudospectral projection: one full incremental analysis per quadrature
// node, coefficients by discrete projection. Node failures are fatal.
CollocationResult collocation(const Model& model, const ObservableSet& obs,
                              const QuadratureRule& rule, const GpcBasis& basis,
                              int workers = 1);

}  // namespace sgfem
