#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "sgfem/materials.hpp"

namespace sgfem {

using SpMat = Eigen::SparseMatrix<double>;

// 2x2 Gauss points per quadrilateral.
constexpr int kGaussPerElement = 4;

struct ElementQuadrature {
  std::array<Eigen::Vector2d, kGaussPerElement> points;
  std::array<double, kGaussPerElement> weights;
  static const ElementQuadrature& two_by_two();
};

// Plane-stress mesh of 4-node quadrilaterals. Coordinates in mm, loads in N,
// stresses in MPa. Dof numbering: node i holds dofs (2i, 2i+1). Call
// finalize() once after filling the fields.
struct Mesh {
  Eigen::MatrixX2d nodes;
  std::vector<std::array<int, 4>> elements;  // counterclockwise, 0-based
  std::vector<double> thickness;             // per element (mm)
  std::vector<int> material_id;              // per element, into a MaterialTable
  std::vector<int> row_index;                // per element, 0 = lowest row
  std::vector<int> constrained_dofs;         // 0-based, fixed to zero

  int n_nodes() const { return static_cast<int>(nodes.rows()); }
  int n_elements() const { return static_cast<int>(elements.size()); }
  int n_dof() const { return 2 * n_nodes(); }
  int n_free() const { return static_cast<int>(free_dofs.size()); }
  int n_rows_of_elements() const;

  std::vector<int> free_dofs;  // free index -> full dof
  std::vector<int> free_map;   // full dof -> free index, -1 if constrained

  void finalize();

  Eigen::VectorXd to_free(const Eigen::VectorXd& full) const;
  Eigen::VectorXd to_full(const Eigen::VectorXd& free) const;
  Eigen::Matrix<double, 8, 1> element_dofs(int elem,
                                           const Eigen::VectorXd& full) const;
};

struct LoadProgram {
  Eigen::VectorXd load_pattern;       // full-dof length (N)
  std::vector<double> scale_factors;  // nondecreasing, in [0,1]
  double tol_u = 1e-6;                // on |du|/|u|
  int max_steps = 60;

  int n_increments() const { return static_cast<int>(scale_factors.size()); }
  void validate(int n_dof) const;
  static std::vector<double> equal_scales(int n_increments);
};

// Strain-displacement matrix at (zeta, eta) in the reference square;
// det_j receives the Jacobian determinant.
Eigen::Matrix<double, 3, 8> element_B(const Mesh& mesh, int elem, double zeta,
                                      double eta, double* det_j = nullptr);

using ElementStates = std::vector<std::array<GaussPointState, kGaussPerElement>>;

ElementStates zero_states(const Mesh& mesh);

Eigen::Matrix<double, 8, 8> element_stiffness(
    const Mesh& mesh, int elem,
    const std::array<Eigen::Matrix3d, kGaussPerElement>& D);

Eigen::Matrix<double, 8, 1> element_internal_force(
    const Mesh& mesh, int elem,
    const std::array<GaussPointState, kGaussPerElement>& states);

// Tangent stiffness over free dofs, from committed states.
SpMat assemble_stiffness(const Mesh& mesh, const MaterialTable& materials,
                         const ElementStates& states);

// Internal force over free dofs, from committed stresses.
Eigen::VectorXd assemble_internal_force(const Mesh& mesh,
                                        const ElementStates& states);

// Commit one displacement increment (free dofs) into all Gauss points.
void commit_increment(const Mesh& mesh, const MaterialTable& materials,
                      ElementStates& states, const Eigen::VectorXd& du_free);

// --- linear solve interface ----------------------------------------------

class Factorization {
 public:
  virtual ~Factorization() = default;
  virtual Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const = 0;
};

using FactorizeFn =
    std::function<std::unique_ptr<Factorization>(const SpMat&)>;

// Sparse Cholesky; throws on non-SPD input.
FactorizeFn cholesky_factorizer();

// --- incremental driver ----------------------------------------------------

// Step tolerance and step cap live in the LoadProgram; these are the
// solver-side knobs.
struct NrOptions {
  double floor_u = 1e-12;
  double tol_r = 1e-10;  // relative equilibrium early-exit
};

struct IncrementRecord {
  int increment = 0;   // 1-based
  int steps = 0;       // linear solves performed
  std::vector<double> residual_norms;  // |f - g| at the start of each step
  bool converged = false;
};

struct DeterministicSolution {
  std::vector<Eigen::VectorXd> u_history;  // free dofs, one entry per increment
  std::vector<IncrementRecord> increments;
  ElementStates states;
  bool converged = true;
  int last_converged_increment = 0;  // 1-based, 0 = none
};

// Incremental analysis with the tangent reformed once per load increment.
// Throws on non-convergence unless stop_on_failure is false, in which case
// the partial history is returned with converged = false.
DeterministicSolution newton_raphson(const Mesh& mesh,
                                     const MaterialTable& materials,
                                     const LoadProgram& program,
                                     const FactorizeFn& factorize,
                                     const NrOptions& options = {},
                                     bool stop_on_failure = true);

}  // namespace sgfem
