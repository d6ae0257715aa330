#pragma once

#include <cmath>

#include "sgfem/model.hpp"
#include "test_fixtures.hpp"

namespace sgfem::testing {

// Linear-elastic strip with an affine random modulus E(xi) = E0*(1+r*xi).
inline Model affine_bar_model(double E0, double r, int nx = 4, int ny = 2,
                              int increments = 4) {
  Model model;
  model.mesh = grid_mesh(nx, ny, 100.0, 20.0, 10.0);
  for (int iy = 0; iy <= ny; ++iy) {
    model.mesh.constrained_dofs.push_back(2 * grid_node(nx, 0, iy));
    model.mesh.constrained_dofs.push_back(2 * grid_node(nx, 0, iy) + 1);
  }
  model.mesh.finalize();
  model.program.load_pattern = Eigen::VectorXd::Zero(model.mesh.n_dof());
  model.program.load_pattern[2 * grid_node(nx, nx, ny / 2) + 1] = -50.0;
  model.program.scale_factors = LoadProgram::equal_scales(increments);
  model.n_random = 1;
  model.realize = [E0, r](const Eigen::VectorXd& xi) -> MaterialTable {
    return {LinearElastic{E0 * (1.0 + r * xi[0]), 0.2}};
  };
  return model;
}

// Half-span simply supported strip: symmetry plane at x = 0, vertical
// support at the far bottom corner, downward load on the symmetry edge.
// Concrete with smeared steel; alpha_E is the uniform random input.
inline Model beam_model(double cov, int increments = 20,
                        double load_half = 10700.0, int nx = 4, int ny = 4) {
  Model model;
  model.mesh = grid_mesh(nx, ny, 1000.0, 200.0, 150.0);
  for (int iy = 0; iy <= ny; ++iy)
    model.mesh.constrained_dofs.push_back(2 * grid_node(nx, 0, iy));
  model.mesh.constrained_dofs.push_back(2 * grid_node(nx, nx, 0) + 1);
  model.mesh.finalize();

  model.program.load_pattern = Eigen::VectorXd::Zero(model.mesh.n_dof());
  model.program.load_pattern[2 * grid_node(nx, 0, ny) + 1] = -load_half;
  model.program.scale_factors = LoadProgram::equal_scales(increments);
  model.program.max_steps = 500;

  RandomInputSpec spec;
  spec.target = RandomTarget::AlphaE;
  spec.mean = 0.8;
  spec.cov = cov;
  model.n_random = 1;
  model.realize = [spec](const Eigen::VectorXd& xi) -> MaterialTable {
    const double alpha = spec.realize(spec.mean, xi[0]);
    return {RcMaterial{test_concrete(alpha), test_steel(0.01, 0.002)}};
  };
  return model;
}

// Midspan vertical displacement dof (bottom of the symmetry edge).
inline int beam_observable_dof(int nx = 4) {
  return 2 * grid_node(nx, 0, 0) + 1;
}

// Wall-like panel, fixed base, lateral load at the top edge; the specific
// compressive strength is the random input with a linear per-row mean.
inline Model wall_model(double cov, int increments = 20,
                        double load = 42000.0, int nx = 3, int ny = 6) {
  Model model;
  model.mesh = grid_mesh(nx, ny, 600.0, 1200.0, 100.0);
  for (int e = 0; e < model.mesh.n_elements(); ++e)
    model.mesh.material_id[e] = e;  // per-element realization (row profile)
  for (int ix = 0; ix <= nx; ++ix) {
    model.mesh.constrained_dofs.push_back(2 * grid_node(nx, ix, 0));
    model.mesh.constrained_dofs.push_back(2 * grid_node(nx, ix, 0) + 1);
  }
  model.mesh.finalize();

  model.program.load_pattern = Eigen::VectorXd::Zero(model.mesh.n_dof());
  model.program.load_pattern[2 * grid_node(nx, 0, ny)] = load;
  model.program.scale_factors = LoadProgram::equal_scales(increments);
  model.program.max_steps = 500;

  RandomInputSpec spec;
  spec.target = RandomTarget::FcPrime;
  spec.mean = 44.7;
  spec.cov = cov;
  spec.profile = RowProfile{44.7 + 1.5, 44.7 - 1.5};

  const std::vector<int> rows = model.mesh.row_index;
  const int n_rows = model.mesh.n_rows_of_elements();
  model.n_random = 1;
  model.realize = [spec, rows, n_rows](const Eigen::VectorXd& xi) -> MaterialTable {
    MaterialTable table;
    table.reserve(rows.size());
    for (std::size_t e = 0; e < rows.size(); ++e) {
      const double mean_row = spec.row_mean(rows[e], n_rows);
      const double fc = spec.realize(mean_row, xi[0]);
      ConcreteParams p;
      p.f_c_prime = fc;
      p.f_cm = fc + 8.0;
      p.eps_c1 = 0.0022;
      p.eps_c_lim = 0.0035;
      p.nu_c = 0.2;
      p.E_c1 = p.f_cm / p.eps_c1;
      p.E_ci = 21500.0 * 0.8 * std::cbrt(p.f_cm / 10.0);
      p.f_ctm = 0.3 * std::pow(fc, 2.0 / 3.0);
      p.eps_cr = 1.5e-4;
      p.eps_tu = 10.0 * p.f_ctm / p.E_ci;
      p.validate();
      table.push_back(RcMaterial{p, test_steel(0.008, 0.008)});
    }
    return table;
  };
  return model;
}

// Horizontal displacement at the loaded top corner.
inline int wall_observable_dof(int nx = 3, int ny = 6) {
  return 2 * grid_node(nx, 0, ny);
}

}  // namespace sgfem::testing
