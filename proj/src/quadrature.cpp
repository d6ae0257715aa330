#include "sgfem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sgfem/common.hpp"

namespace sgfem {

bool QuadratureRule::has_negative_weights() const {
  return std::any_of(weights.begin(), weights.end(),
                     [](double w) { return w < 0.0; });
}

double QuadratureRule::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

QuadratureRule gauss_legendre_1d(int n) {
  require(n >= 1, "gauss_legendre_1d: point count must be >= 1");
  QuadratureRule rule;
  rule.dim = 1;
  rule.exactness = 2 * n - 1;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  // Newton iteration on P_n, symmetric pair (i, n-1-i) filled together.
  const int half = (n + 1) / 2;
  auto eval = [n](double x, double& pn, double& dpn) {
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    pn = (n == 0) ? 1.0 : p1;
    dpn = (n == 0) ? 0.0 : n * (x * p1 - p0) / (x * x - 1.0);
  };
  for (int i = 0; i < half; ++i) {
    const bool middle = (n % 2 == 1 && i == half - 1);
    double x = middle ? 0.0 : std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pn, dpn;
    for (int iter = 0; iter < 100; ++iter) {
      eval(x, pn, dpn);
      double dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    eval(x, pn, dpn);
    // probability weight: classical 2/((1-x^2) P'_n(x)^2) divided by 2
    double w = 1.0 / ((1.0 - x * x) * dpn * dpn);
    rule.nodes[i] = Eigen::VectorXd::Constant(1, middle ? 0.0 : -std::abs(x));
    rule.nodes[n - 1 - i] = Eigen::VectorXd::Constant(1, middle ? 0.0 : std::abs(x));
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n == 1) {
    rule.nodes[0] = Eigen::VectorXd::Zero(1);
    rule.weights[0] = 1.0;
  }
  return rule;
}

QuadratureRule tensor_rule(const std::vector<int>& points_per_axis) {
  const int dim = static_cast<int>(points_per_axis.size());
  require(dim >= 1, "tensor_rule: need at least one axis");
  std::vector<QuadratureRule> axes;
  axes.reserve(dim);
  int exactness = INT32_MAX;
  std::size_t n_total = 1;
  for (int n : points_per_axis) {
    axes.push_back(gauss_legendre_1d(n));
    exactness = std::min(exactness, 2 * n - 1);
    n_total *= static_cast<std::size_t>(n);
  }

  QuadratureRule rule;
  rule.dim = dim;
  rule.exactness = exactness;
  rule.nodes.reserve(n_total);
  rule.weights.reserve(n_total);

  std::vector<int> idx(dim, 0);
  while (true) {
    Eigen::VectorXd x(dim);
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      x[d] = axes[d].nodes[idx[d]][0];
      w *= axes[d].weights[idx[d]];
    }
    rule.nodes.push_back(x);
    rule.weights.push_back(w);
    int d = dim - 1;
    while (d >= 0 && ++idx[d] == points_per_axis[d]) {
      idx[d] = 0;
      --d;
    }
    if (d < 0) break;
  }
  return rule;
}

QuadratureRule tensor_rule(int dim, int points_per_axis) {
  return tensor_rule(std::vector<int>(dim, points_per_axis));
}

int gauss_points_for_exactness(int degree) {
  require(degree >= 0, "gauss_points_for_exactness: degree must be >= 0");
  return degree / 2 + 1;
}

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// multi-indices i in N^dim, i_j >= 1, |i| == total
void compositions(int dim, int total, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (dim == 1) {
    if (total >= 1) {
      current.push_back(total);
      out.push_back(current);
      current.pop_back();
    }
    return;
  }
  for (int first = 1; first <= total - (dim - 1); ++first) {
    current.push_back(first);
    compositions(dim - 1, total - first, current, out);
    current.pop_back();
  }
}

}  // namespace

QuadratureRule smolyak(int dim, int level) {
  require(dim >= 1, "smolyak: dimension must be >= 1");
  require(level >= 0, "smolyak: level must be >= 0");
  if (dim == 1) {
    QuadratureRule rule = gauss_legendre_1d(level + 1);
    rule.level = level;
    return rule;
  }

  // Combination formula over |i| in [max(dim, level+1), level+dim],
  // coefficient (-1)^(level+dim-|i|) * C(dim-1, level+dim-|i|).
  std::map<std::vector<double>, double> merged;
  const int lo = std::max(dim, level + 1);
  const int hi = level + dim;
  for (int total = lo; total <= hi; ++total) {
    double coeff =
        ((hi - total) % 2 == 0 ? 1.0 : -1.0) * binomial(dim - 1, hi - total);
    std::vector<std::vector<int>> combos;
    std::vector<int> current;
    compositions(dim, total, current, combos);
    for (const auto& combo : combos) {
      QuadratureRule part = tensor_rule(combo);
      for (std::size_t q = 0; q < part.size(); ++q) {
        std::vector<double> key(part.nodes[q].data(),
                                part.nodes[q].data() + dim);
        merged[key] += coeff * part.weights[q];
      }
    }
  }

  QuadratureRule rule;
  rule.dim = dim;
  rule.level = level;
  rule.exactness = 2 * level + 1;
  for (const auto& [key, w] : merged) {
    if (w == 0.0) continue;
    rule.nodes.push_back(
        Eigen::Map<const Eigen::VectorXd>(key.data(), dim));
    rule.weights.push_back(w);
  }
  return rule;
}

QuadratureRule default_projection_rule(int dim, int gpc_degree) {
  return smolyak(dim, gpc_degree);
}

double integrate(const QuadratureRule& rule,
                 const std::function<double(const Eigen::VectorXd&)>& f) {
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    double fq;
    try {
      fq = f(rule.nodes[q]);
    } catch (const std::exception& e) {
      fail("integrate: integrand failed at node " + std::to_string(q) + ": " +
           e.what());
    }
    acc += fq * rule.weights[q];
  }
  return acc;
}

Eigen::VectorXd integrate_vector(
    const QuadratureRule& rule,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f) {
  Eigen::VectorXd acc;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    Eigen::VectorXd fq;
    try {
      fq = f(rule.nodes[q]);
    } catch (const std::exception& e) {
      fail("integrate_vector: integrand failed at node " + std::to_string(q) +
           ": " + e.what());
    }
    if (acc.size() == 0) acc = Eigen::VectorXd::Zero(fq.size());
    acc += fq * rule.weights[q];
  }
  return acc;
}

}  // namespace sgfem
