#include "sgfem/gpc.hpp"

#include <algorithm>
#include <cmath>

#include "sgfem/common.hpp"

namespace sgfem {

double legendre_orthonormal(int degree, double x) {
  double p0 = 1.0;
  if (degree == 0) return 1.0;
  double p1 = x;
  for (int j = 2; j <= degree; ++j) {
    double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return std::sqrt(2.0 * degree + 1.0) * p1;
}

namespace {

long long binomial_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// all dim-tuples of nonnegative integers with sum == total, ascending lex
void tuples_of_degree(int dim, int total, std::vector<int>& current,
                      std::vector<std::vector<int>>& out) {
  if (dim == 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int first = 0; first <= total; ++first) {
    current.push_back(first);
    tuples_of_degree(dim - 1, total - first, current, out);
    current.pop_back();
  }
}

}  // namespace

GpcBasis::GpcBasis(int dim, int degree, PolynomialFamily family)
    : dim_(dim), degree_(degree), family_(family) {
  require(dim >= 1, "GpcBasis: dimension must be >= 1");
  require(degree >= 0, "GpcBasis: degree must be >= 0");
  require(family == PolynomialFamily::Legendre,
          "GpcBasis: only the Legendre family (uniform inputs) is supported");
  for (int d = 0; d <= degree; ++d) {
    std::vector<int> current;
    tuples_of_degree(dim, d, current, multi_indices_);
  }
  require(static_cast<long long>(multi_indices_.size()) ==
              binomial_ll(dim + degree, degree),
          "GpcBasis: cardinality mismatch");
}

int GpcBasis::total_degree(int index) const {
  require(index >= 1 && index <= size(), "GpcBasis: index out of range");
  const auto& mi = multi_indices_[index - 1];
  int d = 0;
  for (int a : mi) d += a;
  return d;
}

void GpcBasis::check_point(const Eigen::VectorXd& xi) const {
  require(xi.size() == dim_, "GpcBasis: point dimension mismatch");
  for (int i = 0; i < dim_; ++i)
    require(xi[i] >= -1.0 && xi[i] <= 1.0,
            "GpcBasis: coordinate outside [-1,1]");
}

double GpcBasis::eval(int index, const Eigen::VectorXd& xi) const {
  require(index >= 1 && index <= size(), "GpcBasis: index out of range");
  check_point(xi);
  const auto& mi = multi_indices_[index - 1];
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) v *= legendre_orthonormal(mi[d], xi[d]);
  return v;
}

Eigen::VectorXd GpcBasis::eval_all(const Eigen::VectorXd& xi) const {
  check_point(xi);
  // univariate table: uni(d, n) = orthonormal Legendre_n(xi_d)
  Eigen::MatrixXd uni(dim_, degree_ + 1);
  for (int d = 0; d < dim_; ++d) {
    double x = xi[d];
    double p0 = 1.0, p1 = x;
    uni(d, 0) = 1.0;
    if (degree_ >= 1) uni(d, 1) = std::sqrt(3.0) * x;
    for (int j = 2; j <= degree_; ++j) {
      double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
      uni(d, j) = std::sqrt(2.0 * j + 1.0) * p2;
    }
  }
  Eigen::VectorXd out(size());
  for (int k = 0; k < size(); ++k) {
    double v = 1.0;
    const auto& mi = multi_indices_[k];
    for (int d = 0; d < dim_; ++d) v *= uni(d, mi[d]);
    out[k] = v;
  }
  return out;
}

Eigen::MatrixXd GpcBasis::gram_matrix(const QuadratureRule& rule,
                                      bool* insufficient) const {
  if (insufficient) *insufficient = rule.exactness < 2 * degree_;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(size(), size());
  for (std::size_t q = 0; q < rule.size(); ++q) {
    Eigen::VectorXd psi = eval_all(rule.nodes[q]);
    gram.noalias() += rule.weights[q] * psi * psi.transpose();
  }
  return gram;
}

TripleProductTensor TripleProductTensor::compute(const GpcBasis& basis,
                                                 int n_K, double drop_tol) {
  const int n = basis.size();
  require(n_K >= 1 && n_K <= n,
          "TripleProductTensor: n_K must be in [1, n_xi]");
  TripleProductTensor tensor;
  tensor.n_xi_ = n;
  tensor.n_K_ = n_K;

  const int p = basis.degree();
  QuadratureRule rule =
      tensor_rule(basis.dim(), gauss_points_for_exactness(3 * p + 1));

  Eigen::MatrixXd psi(rule.size(), n);
  for (std::size_t q = 0; q < rule.size(); ++q)
    psi.row(q) = basis.eval_all(rule.nodes[q]).transpose();

  const std::uint64_t N = static_cast<std::uint64_t>(n);
  for (int a = 0; a < n_K; ++a) {
    for (int b = a; b < n; ++b) {
      // degree parity/triangle pruning is left to the drop tolerance
      for (int c = b; c < n; ++c) {
        double v = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q)
          v += rule.weights[q] * psi(q, a) * psi(q, b) * psi(q, c);
        if (std::abs(v) > drop_tol) {
          std::uint64_t key = (static_cast<std::uint64_t>(a) * N + b) * N + c;
          tensor.entries_.emplace_back(key, v);
        }
      }
    }
  }
  std::sort(tensor.entries_.begin(), tensor.entries_.end());

  for (const auto& [key, v] : tensor.entries_) {
    int c = static_cast<int>(key % N);
    int b = static_cast<int>((key / N) % N);
    int a = static_cast<int>(key / (N * N));
    int perm[6][3] = {{a, b, c}, {a, c, b}, {b, a, c},
                      {b, c, a}, {c, a, b}, {c, b, a}};
    for (auto& pr : perm)
      if (pr[0] < n_K) tensor.couplings_.push_back({pr[0], pr[1], pr[2], v});
  }
  auto order = [](const Coupling& x, const Coupling& y) {
    if (x.l != y.l) return x.l < y.l;
    if (x.m != y.m) return x.m < y.m;
    return x.k < y.k;
  };
  std::sort(tensor.couplings_.begin(), tensor.couplings_.end(), order);
  tensor.couplings_.erase(
      std::unique(tensor.couplings_.begin(), tensor.couplings_.end(),
                  [](const Coupling& x, const Coupling& y) {
                    return x.l == y.l && x.k == y.k && x.m == y.m;
                  }),
      tensor.couplings_.end());
  return tensor;
}

double TripleProductTensor::value(int l, int k, int m) const {
  require(l >= 1 && k >= 1 && m >= 1 && l <= n_xi_ && k <= n_xi_ && m <= n_xi_,
          "TripleProductTensor: index out of range");
  int a = l - 1, b = k - 1, c = m - 1;
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  const std::uint64_t N = static_cast<std::uint64_t>(n_xi_);
  std::uint64_t key = (static_cast<std::uint64_t>(a) * N + b) * N + c;
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), key,
      [](const std::pair<std::uint64_t, double>& e, std::uint64_t k_) {
        return e.first < k_;
      });
  if (it != entries_.end() && it->first == key) return it->second;
  return 0.0;
}

void TripleProductTensor::write_text(std::ostream& os) const {
  const std::uint64_t N = static_cast<std::uint64_t>(n_xi_);
  for (const auto& [key, v] : entries_) {
    int c = static_cast<int>(key % N);
    int b = static_cast<int>((key / N) % N);
    int a = static_cast<int>(key / (N * N));
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d %d %d %.17e\n", a + 1, b + 1, c + 1,
                  v);
    os << buf;
  }
}

}  // namespace sgfem
