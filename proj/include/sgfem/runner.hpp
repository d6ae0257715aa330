#pragma once

#include <filesystem>
#include <optional>

#include "sgfem/config.hpp"
#include "sgfem/sampling.hpp"
#include "sgfem/sg.hpp"
#include "sgfem/stats.hpp"

namespace sgfem {

struct RunOptions {
  int workers = 1;
  bool long_mode = false;  // switch Monte Carlo to 10^6 samples
  std::string output_dir_override;
};

struct SummaryRow {
  std::string method;
  int increment = 0;  // 1-based
  std::string observable;
  double mu = 0;
  double sigma = 0;
  std::optional<double> rmse;
  std::vector<double> exceedance;  // one entry per configured multiplier
};

struct RunArtifacts {
  std::filesystem::path output_dir;
  std::vector<SummaryRow> summary;
  DeterministicSolution det;
  std::optional<SampleEnsemble> mc;
  std::optional<CollocationResult> sc;
  std::optional<SgSolution> sg;
};

// Executes the requested methods, computes cross-method statistics and
// writes every artifact file. The deterministic analysis always runs; it
// provides the exceedance thresholds.
RunArtifacts run(const RunConfig& config, const RunOptions& options = {});

// Observable values of a coefficient surrogate at given sample points.
Eigen::MatrixXd surrogate_observables_at(const Model& model,
                                         const ObservableSet& obs,
                                         const GpcBasis& basis,
                                         const GpcVector& coeffs,
                                         const std::vector<Eigen::VectorXd>& points);

// i.i.d. uniform draws for surrogate sampling, reproducible from the seed.
std::vector<Eigen::VectorXd> uniform_draws(int n, int dim, std::uint64_t seed);

}  // namespace sgfem
