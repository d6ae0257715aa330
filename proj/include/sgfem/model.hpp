#pragma once

#include <functional>

#include "sgfem/fem.hpp"

namespace sgfem {

// A parametric analysis: mesh and loading shared by every realization,
// materials produced per sample point. The realization map must be pure —
// the same xi always yields the same table.
struct Model {
  Mesh mesh;
  LoadProgram program;
  int n_random = 1;  // dimension of xi
  std::function<MaterialTable(const Eigen::VectorXd& xi)> realize;

  MaterialTable mean_materials() const {
    return realize(Eigen::VectorXd::Zero(n_random));
  }
};

}  // namespace sgfem
