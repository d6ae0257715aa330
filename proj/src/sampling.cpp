#include "sgfem/sampling.hpp"

#include <atomic>

#include "sgfem/common.hpp"
#include "sgfem/parallel.hpp"
#include "sgfem/rng.hpp"

namespace sgfem {

Eigen::VectorXd extract_observables(const Model& model,
                                    const MaterialTable& materials,
                                    const ObservableSet& obs,
                                    const Eigen::VectorXd& u_free) {
  Eigen::VectorXd row(obs.count());
  const Eigen::VectorXd u_full = model.mesh.to_full(u_free);
  int c = 0;
  for (int dof : obs.dofs) row[c++] = u_full[dof];
  if (obs.ect_probe_element) {
    const int e = *obs.ect_probe_element;
    require(e >= 0 && e < model.mesh.n_elements(),
            "observables: probe element out of range");
    const Material& mat = materials.at(model.mesh.material_id[e]);
    const auto* rc = std::get_if<RcMaterial>(&mat);
    require(rc != nullptr, "observables: probe element is not concrete");
    const auto& gp = ElementQuadrature::two_by_two().points[0];
    const Eigen::Vector3d strain =
        element_B(model.mesh, e, gp[0], gp[1]) *
        model.mesh.element_dofs(e, u_full);
    const PrincipalStrain pr = principal_strain(strain);
    row[c++] = tangent_concrete_modulus(std::min(pr.e2, 0.0),
                                        rc->concrete.E_ci, rc->concrete);
  }
  return row;
}

double SampleEnsemble::failed_fraction() const {
  if (samples.empty()) return 0.0;
  int failed = 0;
  for (const auto& s : samples)
    if (!s.converged) ++failed;
  return static_cast<double>(failed) / samples.size();
}

std::vector<double> SampleEnsemble::observable_column(int increment,
                                                      int observable) const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.last_converged_increment < increment + 1) continue;
    out.push_back(s.observables(increment, observable));
  }
  return out;
}

namespace {

SampleResult run_sample(const Model& model, const ObservableSet& obs,
                        const Eigen::VectorXd& xi, bool fatal_on_failure,
                        std::vector<Eigen::VectorXd>* u_history = nullptr) {
  SampleResult result;
  result.xi = xi;
  const MaterialTable materials = model.realize(xi);
  DeterministicSolution det;
  try {
    det = newton_raphson(model.mesh, materials, model.program,
                         cholesky_factorizer(), {},
                         /*stop_on_failure=*/fatal_on_failure);
  } catch (const std::exception&) {
    if (fatal_on_failure) throw;
    result.converged = false;
    return result;
  }
  result.converged = det.converged;
  result.last_converged_increment = det.last_converged_increment;
  result.observables.resize(model.program.n_increments(), obs.count());
  result.observables.setZero();
  for (int n = 0; n < det.last_converged_increment; ++n)
    result.observables.row(n) =
        extract_observables(model, materials, obs, det.u_history[n])
            .transpose();
  if (u_history) *u_history = std::move(det.u_history);
  return result;
}

}  // namespace

SampleEnsemble monte_carlo(const Model& model, const ObservableSet& obs,
                           int n_samples, std::uint64_t seed, int workers) {
  require(n_samples >= 1, "monte_carlo: needs at least one sample");
  SampleEnsemble ensemble;
  ensemble.seed = seed;
  ensemble.method = "mc";
  ensemble.n_increments = model.program.n_increments();
  ensemble.samples.resize(n_samples);

  parallel_for_indexed(n_samples, workers, [&](int i) {
    SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(i));
    Eigen::VectorXd xi(model.n_random);
    for (int d = 0; d < model.n_random; ++d) xi[d] = rng.uniform_pm1();
    ensemble.samples[i] =
        run_sample(model, obs, xi, /*fatal_on_failure=*/false);
  });
  return ensemble;
}

CollocationResult collocation(const Model& model, const ObservableSet& obs,
                              const QuadratureRule& rule, const GpcBasis& basis,
                              int workers) {
  require(rule.dim == model.n_random,
          "collocation: rule dimension must match the model");
  const int n_q = static_cast<int>(rule.size());
  const int n_inc = model.program.n_increments();

  CollocationResult result;
  result.n_x = model.mesh.n_free();
  result.n_xi = basis.size();
  result.node_ensemble.method = "sc";
  result.node_ensemble.n_increments = n_inc;
  result.node_ensemble.samples.resize(n_q);

  std::vector<std::vector<Eigen::VectorXd>> node_histories(n_q);
  parallel_for_indexed(n_q, workers, [&](int q) {
    try {
      result.node_ensemble.samples[q] =
          run_sample(model, obs, rule.nodes[q], /*fatal_on_failure=*/true,
                     &node_histories[q]);
    } catch (const std::exception& e) {
      fail("collocation: node " + std::to_string(q) + " failed: " + e.what());
    }
  });

  result.u_coeff_history.reserve(n_inc);
  for (int n = 0; n < n_inc; ++n) {
    GpcVector coeff = GpcVector::zero(result.n_xi, result.n_x);
    for (int q = 0; q < n_q; ++q) {
      const Eigen::VectorXd psi = basis.eval_all(rule.nodes[q]);
      for (int k = 0; k < result.n_xi; ++k)
        coeff.block(k) += rule.weights[q] * psi[k] * node_histories[q][n];
    }
    result.u_coeff_history.push_back(std::move(coeff));
  }
  return result;
}

}  // namespace sgfem
