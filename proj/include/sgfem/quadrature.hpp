#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace sgfem {

// Nodes and weights over the uniform probability measure on [-1,1]^dim:
// weights sum to one, plain Gauss-Legendre weights are divided by two per axis.
struct QuadratureRule {
  int dim = 1;
  std::vector<Eigen::VectorXd> nodes;
  std::vector<double> weights;
  // Guaranteed total polynomial degree integrated exactly.
  int exactness = 0;
  // Smolyak level when the rule came from a sparse grid, -1 otherwise.
  int level = -1;

  std::size_t size() const { return nodes.size(); }
  bool has_negative_weights() const;
  double weight_sum() const;
};

// n-point rule on [-1,1], exact for polynomial degree <= 2n-1.
QuadratureRule gauss_legendre_1d(int n);

// Full tensor grid, points_per_axis[i] Gauss points along axis i.
QuadratureRule tensor_rule(const std::vector<int>& points_per_axis);
QuadratureRule tensor_rule(int dim, int points_per_axis);

// Smolyak sparse grid on non-nested Gauss-Legendre rules with the growth
// map level l -> l+1 points. Exact for total degree <= 2*level+1.
// May contain negative weights for dim >= 2.
QuadratureRule smolyak(int dim, int level);

// Smallest point count whose 1D Gauss rule is exact for `degree`.
int gauss_points_for_exactness(int degree);

// Default projection rule for gPC degree p: sparse level p, so the
// underlying 1D rules are exact for degree 2p+1.
QuadratureRule default_projection_rule(int dim, int gpc_degree);

// Fixed node-order summation. Failures of f are reported with the node index.
double integrate(const QuadratureRule& rule,
                 const std::function<double(const Eigen::VectorXd&)>& f);
Eigen::VectorXd integrate_vector(
    const QuadratureRule& rule,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f);

// E[xi^d] for xi uniform on [-1,1].
inline double uniform_moment(int d) {
  return (d % 2 == 0) ? 1.0 / (d + 1) : 0.0;
}

}  // namespace sgfem
