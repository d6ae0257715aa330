#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <vector>

#include "sgfem/quadrature.hpp"

namespace sgfem {

enum class PolynomialFamily { Legendre };

// Orthonormal Legendre polynomial of the given degree for the uniform
// density 1/2 on [-1,1]: sqrt(2n+1) * P_n(x).
double legendre_orthonormal(int degree, double x);

// Multivariate polynomial basis orthonormal w.r.t. i.i.d. uniform inputs
// on [-1,1]^dim. Members are indexed 1..size() in graded lexicographic
// order of their multi-indices; member 1 is the constant 1. Immutable.
class GpcBasis {
 public:
  GpcBasis(int dim, int degree,
           PolynomialFamily family = PolynomialFamily::Legendre);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(multi_indices_.size()); }
  const std::vector<std::vector<int>>& multi_indices() const {
    return multi_indices_;
  }
  int total_degree(int index) const;  // 1-based

  // Evaluate member `index` (1-based) at xi in [-1,1]^dim.
  double eval(int index, const Eigen::VectorXd& xi) const;
  // All members at once; shares the univariate recurrences.
  Eigen::VectorXd eval_all(const Eigen::VectorXd& xi) const;

  // <psi_k psi_l> under the given rule; identity when the rule is exact
  // for degree 2p. Sets *insufficient when the rule cannot guarantee that.
  Eigen::MatrixXd gram_matrix(const QuadratureRule& rule,
                              bool* insufficient = nullptr) const;

 private:
  void check_point(const Eigen::VectorXd& xi) const;

  int dim_;
  int degree_;
  PolynomialFamily family_;
  std::vector<std::vector<int>> multi_indices_;
};

// Sparse symmetric tensor of expectations <psi_a psi_b psi_c>, retaining
// entries whose smallest index is <= n_K. Values computed with a tensor
// Gauss rule exact for degree 3p+1.
class TripleProductTensor {
 public:
  struct Coupling {
    int l, k, m;  // 0-based, l < n_K
    double value;
  };

  static TripleProductTensor compute(const GpcBasis& basis, int n_K,
                                     double drop_tol = 1e-12);

  int n_xi() const { return n_xi_; }
  int n_K() const { return n_K_; }

  // Symmetric lookup, 1-based indices; zero for dropped/absent entries.
  double value(int l, int k, int m) const;

  // Expanded (l,k,m) list with l restricted to the retained range, sorted
  // by (l,m,k) so operator applications group naturally by (l,m).
  const std::vector<Coupling>& couplings() const { return couplings_; }

  // Rows "l k m value", 1-based, 17 significant digits.
  void write_text(std::ostream& os) const;

 private:
  int n_xi_ = 0;
  int n_K_ = 0;
  // canonical keys a <= b <= c packed as (a*N + b)*N + c, 0-based
  std::vector<std::pair<std::uint64_t, double>> entries_;  // sorted by key
  std::vector<Coupling> couplings_;
};

}  // namespace sgfem
