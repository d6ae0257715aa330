#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sgfem/common.hpp"
#include "sgfem/model.hpp"
#include "sgfem/sampling.hpp"
#include "sgfem/sg.hpp"

namespace sgfem {

// Validation failure carrying every problem found, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct SolverConfig {
  SgPreconditionerKind preconditioner = SgPreconditionerKind::HierarchicalGs;
  double tol = 1e-8;
  int max_iter = 2000;
};

struct McConfig {
  int samples = 10000;
  std::uint64_t seed = 1;
};

struct StatisticsConfig {
  std::vector<double> exceedance_multipliers{1.0};
  std::vector<int> pdf_increments;  // 1-based
  int pdf_samples = 100000;
};

struct RunConfig {
  Model model;
  std::optional<RandomInputSpec> random_input;
  ObservableSet observables;
  std::vector<std::string> methods;  // canonical order: det, mc, sc, sg
  int gpc_degree = 1;
  int sparse_level = -1;
  SolverConfig solver;
  McConfig mc;
  StatisticsConfig statistics;
  std::string output_dir = "out";
  std::string config_text;  // raw bytes, hashed into run metadata

  bool has_method(const std::string& m) const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace sgfem
