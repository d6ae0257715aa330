#include "sgfem/quadrature.hpp"

#include <cmath>

#include "doctest.h"
#include "sgfem/common.hpp"

using namespace sgfem;

TEST_SUITE_BEGIN("quadrature");

TEST_CASE("one point rule is the midpoint rule") {
  const auto rule = gauss_legendre_1d(1);
  REQUIRE(rule.size() == 1);
  CHECK(rule.nodes[0][0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(rule.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("two point rule matches the moment oracle") {
  // E[1] = 1 and E[xi^2] = 1/3 pin nodes at +-1/sqrt(3), weights 1/2
  const auto rule = gauss_legendre_1d(2);
  REQUIRE(rule.size() == 2);
  CHECK(rule.nodes[0][0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(rule.nodes[1][0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(rule.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rule.weights[1] == doctest::Approx(0.5).epsilon(1e-14));

  const double second_moment =
      integrate(rule, [](const Eigen::VectorXd& x) { return x[0] * x[0]; });
  CHECK(second_moment == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("zero point count is rejected") {
  CHECK_THROWS_AS(gauss_legendre_1d(0), Error);
}

TEST_CASE("polynomial exactness against analytic moments") {
  for (int n = 1; n <= 12; ++n) {
    const auto rule = gauss_legendre_1d(n);
    CHECK(rule.weight_sum() == doctest::Approx(1.0).epsilon(1e-13));
    for (int d = 0; d <= 2 * n - 1; ++d) {
      const double value = integrate(
          rule, [d](const Eigen::VectorXd& x) { return std::pow(x[0], d); });
      CHECK(value == doctest::Approx(uniform_moment(d)).epsilon(1e-12));
    }
  }
}

TEST_CASE("tensor rule integrates mixed monomials") {
  const auto rule = tensor_rule(3, 4);
  CHECK(rule.weight_sum() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_FALSE(rule.has_negative_weights());
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b)
      for (int c = 0; c <= 5; ++c) {
        const double value =
            integrate(rule, [&](const Eigen::VectorXd& x) {
              return std::pow(x[0], a) * std::pow(x[1], b) * std::pow(x[2], c);
            });
        const double exact =
            uniform_moment(a) * uniform_moment(b) * uniform_moment(c);
        CHECK(value == doctest::Approx(exact).epsilon(1e-12));
      }
}

TEST_CASE("smolyak degenerates to the 1d rule") {
  for (int level = 0; level <= 4; ++level) {
    const auto sparse = smolyak(1, level);
    const auto dense = gauss_legendre_1d(level + 1);
    REQUIRE(sparse.size() == dense.size());
    for (std::size_t q = 0; q < sparse.size(); ++q) {
      CHECK(sparse.nodes[q][0] == dense.nodes[q][0]);
      CHECK(sparse.weights[q] == doctest::Approx(dense.weights[q]).epsilon(1e-15));
    }
  }
}

TEST_CASE("smolyak normalization and tensor agreement") {
  const auto rule = smolyak(2, 2);
  const double one =
      integrate(rule, [](const Eigen::VectorXd&) { return 1.0; });
  CHECK(one == doctest::Approx(1.0).epsilon(1e-13));

  // oracle: full tensor 5x5 for the smooth integrand xi1^2 xi2^2
  const auto dense = tensor_rule(2, 5);
  const auto f = [](const Eigen::VectorXd& x) {
    return x[0] * x[0] * x[1] * x[1];
  };
  const auto high = smolyak(2, 4);
  CHECK(integrate(high, f) == doctest::Approx(integrate(dense, f)).epsilon(1e-12));
  CHECK(integrate(dense, f) == doctest::Approx(1.0 / 9.0).epsilon(1e-13));
}

TEST_CASE("smolyak total-degree exactness") {
  const int level = 2;
  const auto rule = smolyak(2, level);
  for (int a = 0; a <= 2 * level + 1; ++a)
    for (int b = 0; a + b <= 2 * level + 1; ++b) {
      const double value = integrate(rule, [&](const Eigen::VectorXd& x) {
        return std::pow(x[0], a) * std::pow(x[1], b);
      });
      CHECK(value ==
            doctest::Approx(uniform_moment(a) * uniform_moment(b)).epsilon(1e-10));
    }
}

TEST_CASE("construction is deterministic") {
  for (int trial = 0; trial < 2; ++trial) {
    const auto a = smolyak(3, 3);
    const auto b = smolyak(3, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t q = 0; q < a.size(); ++q) {
      CHECK(a.nodes[q] == b.nodes[q]);
      CHECK(a.weights[q] == b.weights[q]);
    }
  }
}

TEST_CASE("smooth rational integrand against a high-order reference") {
  const auto f = [](const Eigen::VectorXd& x) {
    return 1.0 / (1.05 + 0.2 * x[0]);
  };
  const double reference = integrate(gauss_legendre_1d(200), f);
  const double value = integrate(gauss_legendre_1d(30), f);
  CHECK(value == doctest::Approx(reference).epsilon(1e-12));
}

TEST_CASE("integrand failures carry the node index") {
  const auto rule = gauss_legendre_1d(3);
  CHECK_THROWS_WITH_AS(
      integrate(rule,
                [](const Eigen::VectorXd& x) -> double {
                  if (x[0] > 0.5) throw Error("boom");
                  return 0.0;
                }),
      doctest::Contains("node 2"), Error);
}

TEST_SUITE_END();
