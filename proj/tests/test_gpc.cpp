#include "sgfem/gpc.hpp"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "sgfem/common.hpp"

using namespace sgfem;

TEST_SUITE_BEGIN("gpc");

namespace {

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

Eigen::VectorXd point1(double x) { return Eigen::VectorXd::Constant(1, x); }

}  // namespace

TEST_CASE("cardinality and ordering") {
  for (int dim = 1; dim <= 3; ++dim) {
    for (int p = 0; p <= 4; ++p) {
      GpcBasis basis(dim, p);
      CHECK(basis.size() == binom(dim + p, p));
      for (int a : basis.multi_indices().front()) CHECK(a == 0);
    }
  }
  GpcBasis basis(2, 2);
  const auto& mi = basis.multi_indices();
  REQUIRE(mi.size() == 6);
  CHECK(mi[0] == std::vector<int>{0, 0});
  CHECK(mi[1] == std::vector<int>{0, 1});
  CHECK(mi[2] == std::vector<int>{1, 0});
  CHECK(mi[3] == std::vector<int>{0, 2});
  CHECK(mi[4] == std::vector<int>{1, 1});
  CHECK(mi[5] == std::vector<int>{2, 0});
}

TEST_CASE("member one is identically one") {
  GpcBasis basis(1, 3);
  CHECK(basis.eval(1, point1(0.37)) == 1.0);
  GpcBasis basis3(3, 2);
  Eigen::VectorXd xi(3);
  xi << 0.2, -0.9, 0.5;
  CHECK(basis3.eval(1, xi) == 1.0);
}

TEST_CASE("normalized univariate values") {
  GpcBasis basis(1, 2);
  // degree-1 member at 0.5: sqrt(3)*x
  CHECK(basis.eval(2, point1(0.5)) ==
        doctest::Approx(std::sqrt(3.0) * 0.5).epsilon(1e-14));
  // degree-2 member at 1: P_2(1) = 1, normalization sqrt(5)
  CHECK(basis.eval(3, point1(1.0)) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("evaluation contract violations") {
  GpcBasis basis(1, 2);
  CHECK_THROWS_AS(basis.eval(0, point1(0.0)), Error);
  CHECK_THROWS_AS(basis.eval(4, point1(0.0)), Error);
  CHECK_THROWS_AS(basis.eval(1, point1(1.0000001)), Error);
}

TEST_CASE("gram matrix is the identity under an exact rule") {
  SUBCASE("trivial p=0") {
    GpcBasis basis(1, 0);
    const auto G = basis.gram_matrix(gauss_legendre_1d(1));
    CHECK(G(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("1d p=4 with five points") {
    GpcBasis basis(1, 4);
    const auto G = basis.gram_matrix(gauss_legendre_1d(5));
    CHECK((G - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("2d p=3 with a 4x4 tensor rule") {
    GpcBasis basis(2, 3);
    const auto G = basis.gram_matrix(tensor_rule(2, 4));
    CHECK((G - Eigen::MatrixXd::Identity(basis.size(), basis.size()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
  SUBCASE("orthonormality sweep") {
    for (int dim = 1; dim <= 3; ++dim) {
      for (int p = 1; p <= 6; ++p) {
        GpcBasis basis(dim, p);
        const auto rule = tensor_rule(dim, p + 1);
        const auto G = basis.gram_matrix(rule);
        CHECK((G - Eigen::MatrixXd::Identity(basis.size(), basis.size()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("gram matrix flags insufficient exactness") {
  GpcBasis basis(1, 4);
  bool insufficient = false;
  basis.gram_matrix(gauss_legendre_1d(3), &insufficient);
  CHECK(insufficient);
  basis.gram_matrix(gauss_legendre_1d(5), &insufficient);
  CHECK_FALSE(insufficient);
}

TEST_CASE("triple products: first slice is the identity") {
  for (int dim : {1, 2}) {
    GpcBasis basis(dim, 3);
    const auto tensor = TripleProductTensor::compute(basis, basis.size());
    for (int k = 1; k <= basis.size(); ++k)
      for (int m = 1; m <= basis.size(); ++m) {
        const double expected = (k == m) ? 1.0 : 0.0;
        CHECK(tensor.value(1, k, m) == doctest::Approx(expected).epsilon(1e-12));
      }
  }
}

TEST_CASE("triple products: quadrature oracle values in 1d") {
  GpcBasis basis(1, 2);
  const auto tensor = TripleProductTensor::compute(basis, basis.size());
  // oracle: 50-point rule on psi_2^2 psi_3
  const auto rule = gauss_legendre_1d(50);
  const double oracle = integrate(rule, [&](const Eigen::VectorXd& x) {
    const double p2 = basis.eval(2, x);
    const double p3 = basis.eval(3, x);
    return p2 * p2 * p3;
  });
  CHECK(oracle == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-13));
  CHECK(tensor.value(2, 2, 3) == doctest::Approx(oracle).epsilon(1e-12));
  // odd parity vanishes
  CHECK(tensor.value(2, 2, 2) == 0.0);
}

TEST_CASE("triple products: permutation symmetry is exact") {
  GpcBasis basis(2, 3);
  const auto tensor = TripleProductTensor::compute(basis, basis.size());
  for (const auto& e : tensor.couplings()) {
    const int l = e.l + 1, k = e.k + 1, m = e.m + 1;
    const double v = tensor.value(l, k, m);
    CHECK(tensor.value(l, m, k) == v);
    CHECK(tensor.value(k, l, m) == v);
    CHECK(tensor.value(k, m, l) == v);
    CHECK(tensor.value(m, l, k) == v);
    CHECK(tensor.value(m, k, l) == v);
  }
}

TEST_CASE("triple products: 1d sparsity pattern") {
  // zero whenever the degrees violate the triangle inequality or sum odd
  const int p = 6;
  GpcBasis basis(1, p);
  const auto tensor = TripleProductTensor::compute(basis, basis.size());
  const auto rule = gauss_legendre_1d(3 * p + 2);
  for (int a = 1; a <= basis.size(); ++a)
    for (int b = a; b <= basis.size(); ++b)
      for (int c = b; c <= basis.size(); ++c) {
        const int da = a - 1, db = b - 1, dc = c - 1;
        const bool triangle =
            da + db >= dc && db + dc >= da && dc + da >= db;
        const bool even = (da + db + dc) % 2 == 0;
        const double oracle = integrate(rule, [&](const Eigen::VectorXd& x) {
          return basis.eval(a, x) * basis.eval(b, x) * basis.eval(c, x);
        });
        if (!triangle || !even) {
          CHECK(std::abs(oracle) < 1e-10);
          CHECK(tensor.value(a, b, c) == 0.0);
        } else {
          CHECK(tensor.value(a, b, c) == doctest::Approx(oracle).epsilon(1e-10));
        }
      }
}

TEST_CASE("restricted first index keeps only reachable couplings") {
  GpcBasis basis(1, 4);
  const int n_K = 2;
  const auto tensor = TripleProductTensor::compute(basis, n_K);
  CHECK(tensor.n_K() == n_K);
  for (const auto& e : tensor.couplings()) CHECK(e.l < n_K);
}

TEST_CASE("text export is 1-based with full precision") {
  GpcBasis basis(1, 1);
  const auto tensor = TripleProductTensor::compute(basis, basis.size());
  std::ostringstream os;
  tensor.write_text(os);
  std::istringstream in(os.str());
  int l, k, m;
  double v;
  const bool parsed = static_cast<bool>(in >> l >> k >> m >> v);
  REQUIRE(parsed);
  CHECK(l == 1);
  CHECK(k == 1);
  CHECK(m == 1);
  CHECK(v == tensor.value(1, 1, 1));  // 17 significant digits round-trip
  CHECK(os.str().find('e') != std::string::npos);
}

TEST_SUITE_END();
