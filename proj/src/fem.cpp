#include "sgfem/fem.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sgfem/common.hpp"

namespace sgfem {

const ElementQuadrature& ElementQuadrature::two_by_two() {
  static const ElementQuadrature quad = [] {
    ElementQuadrature q;
    const double a = 1.0 / std::sqrt(3.0);
    q.points = {Eigen::Vector2d(-a, -a), Eigen::Vector2d(a, -a),
                Eigen::Vector2d(a, a), Eigen::Vector2d(-a, a)};
    q.weights = {1.0, 1.0, 1.0, 1.0};
    return q;
  }();
  return quad;
}

int Mesh::n_rows_of_elements() const {
  int r = -1;
  for (int v : row_index) r = std::max(r, v);
  return r + 1;
}

void Mesh::finalize() {
  require(nodes.rows() >= 4, "mesh: needs at least 4 nodes");
  require(!elements.empty(), "mesh: needs at least one element");
  require(thickness.size() == elements.size(),
          "mesh: one thickness per element required");
  require(material_id.size() == elements.size(),
          "mesh: one material id per element required");
  if (row_index.empty()) {
    // derive rows from element centroid heights
    std::vector<double> cy(elements.size());
    for (std::size_t e = 0; e < elements.size(); ++e) {
      double y = 0;
      for (int n : elements[e]) {
        require(n >= 0 && n < n_nodes(), "mesh: connectivity out of range");
        y += nodes(n, 1);
      }
      cy[e] = y / 4.0;
    }
    std::vector<double> levels(cy);
    std::sort(levels.begin(), levels.end());
    double span = levels.back() - levels.front();
    double tol = span > 0 ? 1e-9 * span : 1.0;
    std::vector<double> distinct;
    for (double y : levels)
      if (distinct.empty() || y - distinct.back() > tol) distinct.push_back(y);
    row_index.resize(elements.size());
    for (std::size_t e = 0; e < elements.size(); ++e) {
      auto it = std::lower_bound(distinct.begin(), distinct.end(),
                                 cy[e] - tol);
      row_index[e] = static_cast<int>(it - distinct.begin());
    }
  }
  require(row_index.size() == elements.size(),
          "mesh: one row index per element required");

  std::set<int> constrained;
  for (int dof : constrained_dofs) {
    require(dof >= 0 && dof < n_dof(), "mesh: constrained dof out of range");
    constrained.insert(dof);
  }
  free_map.assign(n_dof(), -1);
  free_dofs.clear();
  for (int dof = 0; dof < n_dof(); ++dof) {
    if (!constrained.count(dof)) {
      free_map[dof] = static_cast<int>(free_dofs.size());
      free_dofs.push_back(dof);
    }
  }

  // positive Jacobian everywhere
  for (int e = 0; e < n_elements(); ++e) {
    for (const auto& gp : ElementQuadrature::two_by_two().points) {
      double det_j = 0;
      element_B(*this, e, gp[0], gp[1], &det_j);
      require(det_j > 0, "mesh: nonpositive Jacobian in element " +
                             std::to_string(e + 1));
    }
  }
}

Eigen::VectorXd Mesh::to_free(const Eigen::VectorXd& full) const {
  Eigen::VectorXd out(n_free());
  for (int i = 0; i < n_free(); ++i) out[i] = full[free_dofs[i]];
  return out;
}

Eigen::VectorXd Mesh::to_full(const Eigen::VectorXd& free) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_dof());
  for (int i = 0; i < n_free(); ++i) out[free_dofs[i]] = free[i];
  return out;
}

Eigen::Matrix<double, 8, 1> Mesh::element_dofs(
    int elem, const Eigen::VectorXd& full) const {
  Eigen::Matrix<double, 8, 1> out;
  for (int a = 0; a < 4; ++a) {
    int n = elements[elem][a];
    out[2 * a] = full[2 * n];
    out[2 * a + 1] = full[2 * n + 1];
  }
  return out;
}

void LoadProgram::validate(int n_dof) const {
  require(load_pattern.size() == n_dof,
          "load program: pattern length must equal the dof count");
  require(!scale_factors.empty(), "load program: needs at least one increment");
  double prev = 0.0;
  for (double s : scale_factors) {
    require(s >= prev && s <= 1.0 + 1e-12,
            "load program: scale factors must be nondecreasing in [0,1]");
    prev = s;
  }
  require(tol_u > 0, "load program: tol_u must be positive");
  require(max_steps >= 1, "load program: max_steps must be >= 1");
}

std::vector<double> LoadProgram::equal_scales(int n_increments) {
  std::vector<double> s(n_increments);
  for (int i = 0; i < n_increments; ++i)
    s[i] = static_cast<double>(i + 1) / n_increments;
  return s;
}

Eigen::Matrix<double, 3, 8> element_B(const Mesh& mesh, int elem, double zeta,
                                      double eta, double* det_j_out) {
  require(elem >= 0 && elem < mesh.n_elements(),
          "element_B: element index out of range");
  require(std::abs(zeta) <= 1.0 && std::abs(eta) <= 1.0,
          "element_B: reference coordinates outside [-1,1]");
  // shape function derivatives on the reference square
  const double dz[4] = {-0.25 * (1 - eta), 0.25 * (1 - eta),
                        0.25 * (1 + eta), -0.25 * (1 + eta)};
  const double de[4] = {-0.25 * (1 - zeta), -0.25 * (1 + zeta),
                        0.25 * (1 + zeta), 0.25 * (1 - zeta)};
  Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
  for (int a = 0; a < 4; ++a) {
    const int n = mesh.elements[elem][a];
    J(0, 0) += dz[a] * mesh.nodes(n, 0);
    J(0, 1) += dz[a] * mesh.nodes(n, 1);
    J(1, 0) += de[a] * mesh.nodes(n, 0);
    J(1, 1) += de[a] * mesh.nodes(n, 1);
  }
  const double det_j = J.determinant();
  if (det_j_out) *det_j_out = det_j;
  require(std::abs(det_j) > 1e-14,
          "element_B: singular Jacobian in element " + std::to_string(elem + 1));
  const Eigen::Matrix2d Jinv = J.inverse();
  Eigen::Matrix<double, 3, 8> B = Eigen::Matrix<double, 3, 8>::Zero();
  for (int a = 0; a < 4; ++a) {
    const double dx = Jinv(0, 0) * dz[a] + Jinv(0, 1) * de[a];
    const double dy = Jinv(1, 0) * dz[a] + Jinv(1, 1) * de[a];
    B(0, 2 * a) = dx;
    B(1, 2 * a + 1) = dy;
    B(2, 2 * a) = dy;
    B(2, 2 * a + 1) = dx;
  }
  return B;
}

ElementStates zero_states(const Mesh& mesh) {
  return ElementStates(mesh.n_elements());
}

Eigen::Matrix<double, 8, 8> element_stiffness(
    const Mesh& mesh, int elem,
    const std::array<Eigen::Matrix3d, kGaussPerElement>& D) {
  const auto& quad = ElementQuadrature::two_by_two();
  Eigen::Matrix<double, 8, 8> K = Eigen::Matrix<double, 8, 8>::Zero();
  for (int q = 0; q < kGaussPerElement; ++q) {
    double det_j = 0;
    auto B = element_B(mesh, elem, quad.points[q][0], quad.points[q][1],
                       &det_j);
    require(det_j > 0, "element_stiffness: nonpositive Jacobian in element " +
                           std::to_string(elem + 1));
    K += quad.weights[q] * B.transpose() * D[q] * B * det_j *
         mesh.thickness[elem];
  }
  return K;
}

Eigen::Matrix<double, 8, 1> element_internal_force(
    const Mesh& mesh, int elem,
    const std::array<GaussPointState, kGaussPerElement>& states) {
  const auto& quad = ElementQuadrature::two_by_two();
  Eigen::Matrix<double, 8, 1> g = Eigen::Matrix<double, 8, 1>::Zero();
  for (int q = 0; q < kGaussPerElement; ++q) {
    double det_j = 0;
    auto B = element_B(mesh, elem, quad.points[q][0], quad.points[q][1],
                       &det_j);
    g += quad.weights[q] * B.transpose() * states[q].stress * det_j *
         mesh.thickness[elem];
  }
  return g;
}

namespace {

std::array<int, 8> element_free_indices(const Mesh& mesh, int elem) {
  std::array<int, 8> idx;
  for (int a = 0; a < 4; ++a) {
    const int n = mesh.elements[elem][a];
    idx[2 * a] = mesh.free_map[2 * n];
    idx[2 * a + 1] = mesh.free_map[2 * n + 1];
  }
  return idx;
}

}  // namespace

SpMat assemble_stiffness(const Mesh& mesh, const MaterialTable& materials,
                         const ElementStates& states) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(mesh.n_elements()) * 64);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Material& mat = materials.at(mesh.material_id[e]);
    std::array<Eigen::Matrix3d, kGaussPerElement> D;
    for (int q = 0; q < kGaussPerElement; ++q)
      D[q] = material_tangent(mat, states[e][q]);
    const auto Ke = element_stiffness(mesh, e, D);
    const auto idx = element_free_indices(mesh, e);
    for (int i = 0; i < 8; ++i) {
      if (idx[i] < 0) continue;
      for (int j = 0; j < 8; ++j) {
        if (idx[j] < 0) continue;
        triplets.emplace_back(idx[i], idx[j], Ke(i, j));
      }
    }
  }
  SpMat K(mesh.n_free(), mesh.n_free());
  K.setFromTriplets(triplets.begin(), triplets.end());
  return K;
}

Eigen::VectorXd assemble_internal_force(const Mesh& mesh,
                                        const ElementStates& states) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(mesh.n_free());
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const auto ge = element_internal_force(mesh, e, states[e]);
    const auto idx = element_free_indices(mesh, e);
    for (int i = 0; i < 8; ++i)
      if (idx[i] >= 0) g[idx[i]] += ge[i];
  }
  return g;
}

void commit_increment(const Mesh& mesh, const MaterialTable& materials,
                      ElementStates& states, const Eigen::VectorXd& du_free) {
  const Eigen::VectorXd du_full = mesh.to_full(du_free);
  const auto& quad = ElementQuadrature::two_by_two();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Material& mat = materials.at(mesh.material_id[e]);
    const auto due = mesh.element_dofs(e, du_full);
    for (int q = 0; q < kGaussPerElement; ++q) {
      auto B = element_B(mesh, e, quad.points[q][0], quad.points[q][1]);
      material_point_update(mat, states[e][q], B * due);
    }
  }
}

namespace {

class CholeskyFactorization final : public Factorization {
 public:
  explicit CholeskyFactorization(const SpMat& K) {
    llt_.compute(K);
    require(llt_.info() == Eigen::Success,
            "cholesky: factorization failed (matrix not SPD?)");
  }
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const override {
    return llt_.solve(rhs);
  }

 private:
  Eigen::SimplicialLLT<SpMat> llt_;
};

}  // namespace

FactorizeFn cholesky_factorizer() {
  return [](const SpMat& K) -> std::unique_ptr<Factorization> {
    return std::make_unique<CholeskyFactorization>(K);
  };
}

DeterministicSolution newton_raphson(const Mesh& mesh,
                                     const MaterialTable& materials,
                                     const LoadProgram& program,
                                     const FactorizeFn& factorize,
                                     const NrOptions& options,
                                     bool stop_on_failure) {
  program.validate(mesh.n_dof());
  DeterministicSolution sol;
  sol.states = zero_states(mesh);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(mesh.n_free());
  const Eigen::VectorXd pattern = mesh.to_free(program.load_pattern);

  for (int n = 0; n < program.n_increments(); ++n) {
    const Eigen::VectorXd f = program.scale_factors[n] * pattern;
    const double f_norm = f.norm();

    SpMat K = assemble_stiffness(mesh, materials, sol.states);
    std::unique_ptr<Factorization> fact;
    try {
      fact = factorize(K);
    } catch (const std::exception& e) {
      fail("newton_raphson: increment " + std::to_string(n + 1) + ": " +
           e.what());
    }

    IncrementRecord rec;
    rec.increment = n + 1;
    for (int step = 0; step < program.max_steps; ++step) {
      const Eigen::VectorXd g = assemble_internal_force(mesh, sol.states);
      const Eigen::VectorXd r = f - g;
      const double r_norm = r.norm();
      rec.residual_norms.push_back(r_norm);
      if (r_norm <= std::max(options.tol_r * f_norm, 1e-14)) {
        rec.converged = true;
        break;
      }
      const Eigen::VectorXd du = fact->solve(r);
      commit_increment(mesh, materials, sol.states, du);
      u += du;
      rec.steps = step + 1;
      if (du.norm() <= program.tol_u * std::max(u.norm(), options.floor_u)) {
        rec.converged = true;
        break;
      }
    }
    if (!rec.converged) {
      sol.converged = false;
      sol.increments.push_back(rec);
      if (stop_on_failure)
        fail("newton_raphson: increment " + std::to_string(n + 1) +
             " did not converge, residual " +
             format_double(rec.residual_norms.back()));
      break;
    }
    sol.u_history.push_back(u);
    sol.increments.push_back(rec);
    sol.last_converged_increment = n + 1;
  }
  return sol;
}

}  // namespace sgfem
