#include "sgfem/materials.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "doctest.h"
#include "sgfem/common.hpp"
#include "sgfem/rng.hpp"
#include "test_fixtures.hpp"

using namespace sgfem;
using sgfem::testing::test_concrete;
using sgfem::testing::test_rc;
using sgfem::testing::test_steel;

TEST_SUITE_BEGIN("materials");

TEST_CASE("compression curve values") {
  const auto p = test_concrete();
  CHECK(concrete_compression_stress(0.0, p) == 0.0);
  CHECK(concrete_compression_stress(-p.eps_c1, p) ==
        doctest::Approx(-p.f_cm).epsilon(1e-14));

  // k = 2 collapses the curve to the parabola 2*eta - eta^2
  ConcreteParams k2 = p;
  k2.E_ci = 2.0 * k2.E_c1;
  CHECK(concrete_compression_stress(-0.5 * k2.eps_c1, k2) ==
        doctest::Approx(-0.75 * k2.f_cm).epsilon(1e-14));

  CHECK_THROWS_AS(concrete_compression_stress(-p.eps_c_lim, p), Error);
}

TEST_CASE("tension curve values") {
  const auto p = test_concrete();
  GaussPointState uncracked;

  const double eps_half = 0.5 * p.f_ctm / p.E_ci;
  CHECK(concrete_tension_stress(eps_half, uncracked, p) ==
        doctest::Approx(0.5 * p.f_ctm).epsilon(1e-14));
  CHECK(concrete_tension_stress(1.5e-4, uncracked, p) ==
        doctest::Approx(p.f_ctm).epsilon(1e-14));

  GaussPointState cracked;
  cracked.crack = CrackState::CrackedOne;
  CHECK(concrete_tension_stress(p.eps_tu, cracked, p) == 0.0);
  CHECK(concrete_tension_stress(2.0 * p.eps_tu, cracked, p) == 0.0);
  CHECK(concrete_tension_stress(p.eps_cr, cracked, p) ==
        doctest::Approx(p.f_ctm).epsilon(1e-14));

  CHECK_THROWS_AS(concrete_tension_stress(-1e-6, uncracked, p), Error);
}

TEST_CASE("steel bilinear law") {
  const auto s = test_steel();
  CHECK(steel_stress(s.eps_sy, s) == doctest::Approx(s.f_y).epsilon(1e-14));
  CHECK(steel_stress(0.5 * s.eps_sy, s) ==
        doctest::Approx(0.5 * s.f_y).epsilon(1e-14));
  const double delta = 1e-3;
  CHECK(steel_stress(s.eps_sy + delta, s) ==
        doctest::Approx(s.f_y + s.E_sh * delta).epsilon(1e-14));
  // symmetric in compression
  CHECK(steel_stress(-(s.eps_sy + delta), s) ==
        doctest::Approx(-(s.f_y + s.E_sh * delta)).epsilon(1e-14));
  CHECK_THROWS_AS(steel_stress(s.eps_su * 1.01, s), Error);
}

TEST_CASE("tangent modulus special values") {
  const auto p = test_concrete();
  CHECK(tangent_concrete_modulus(0.0, p.E_ci, p) ==
        doctest::Approx(p.E_ci).epsilon(1e-12));
  CHECK(tangent_concrete_modulus(-p.eps_c1, p.E_ci, p) ==
        doctest::Approx(0.0).epsilon(1e-12));

  ConcreteParams k2 = p;
  k2.E_ci = 2.0 * k2.E_c1;
  const double eta = 0.3;
  CHECK(tangent_concrete_modulus(-eta * k2.eps_c1, k2.E_ci, k2) ==
        doctest::Approx(k2.E_c1 * (2.0 - 2.0 * eta)).epsilon(1e-12));
}

TEST_CASE("tangent matches finite differences of the compression curve") {
  const auto p = test_concrete();
  const double h = 1e-5 * p.eps_c1;
  for (int i = 1; i <= 20; ++i) {
    const double eta = 0.95 * i / 20.0;
    const double eps = -eta * p.eps_c1;
    const double fd = (concrete_compression_stress(eps + h, p) -
                       concrete_compression_stress(eps - h, p)) /
                      (2.0 * h);
    const double exact = tangent_concrete_modulus(eps, p.E_ci, p);
    CHECK(std::abs(fd - exact) <= 1e-6 * std::abs(exact));
  }
}

TEST_CASE("branch continuity") {
  const auto p = test_concrete();
  const auto s = test_steel();

  // steel at the yield strain: elastic branch limit vs hardening branch value
  CHECK(std::abs(s.E_s * s.eps_sy - steel_stress(s.eps_sy, s)) <=
        1e-10 * s.f_y);

  // tension at the linear/transition switch: both formulas at the boundary
  GaussPointState uncracked;
  const double eps_09 = 0.9 * p.f_ctm / p.E_ci;
  const double linear_limit = p.E_ci * eps_09;
  const double transition_at_boundary =
      p.f_ctm *
      (1.0 - 0.1 * (1.5e-4 - eps_09) / (1.5e-4 - 0.9 * p.f_ctm / p.E_ci));
  CHECK(std::abs(linear_limit - transition_at_boundary) <= 1e-10 * p.f_ctm);
  CHECK(std::abs(concrete_tension_stress(eps_09, uncracked, p) -
                 linear_limit) <= 1e-10 * p.f_ctm);

  // crack onset: pre-crack curve ends where the softening branch starts
  GaussPointState cracked;
  cracked.crack = CrackState::CrackedOne;
  CHECK(std::abs(concrete_tension_stress(p.eps_cr, uncracked, p) -
                 concrete_tension_stress(p.eps_cr, cracked, p)) <=
        1e-10 * p.f_ctm);
}

TEST_CASE("rotation matrices are energy-consistent") {
  for (double angle : {0.0, 0.3, -1.1, M_PI / 4}) {
    const Eigen::Matrix3d Te = strain_rotation(angle);
    const Eigen::Matrix3d Ts = stress_rotation(angle);
    CHECK((Ts.transpose() * Te - Eigen::Matrix3d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-14);
    CHECK((strain_rotation(-angle) * Te - Eigen::Matrix3d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-14);
  }
}

TEST_CASE("plane-stress concrete matrix") {
  ConcreteParams p = test_concrete();
  p.nu_c = 0.2;
  GaussPointState state;

  SUBCASE("uncracked isotropic values") {
    const Eigen::Vector2d E_dir(30000.0, 30000.0);
    const Eigen::Matrix3d D = concrete_D(state, E_dir, 0.0, p);
    CHECK(D(0, 0) == doctest::Approx(31250.0).epsilon(1e-12));
    CHECK(D(1, 1) == doctest::Approx(31250.0).epsilon(1e-12));
    CHECK(D(0, 1) == doctest::Approx(6250.0).epsilon(1e-12));
    CHECK(D(2, 2) == doctest::Approx(12500.0).epsilon(1e-12));
    CHECK((D - D.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("fully cracked keeps only retained shear") {
    state.crack = CrackState::CrackedTwo;
    state.strain = Eigen::Vector3d(1e-3, 1e-3, 0.0);
    const Eigen::Matrix3d D =
        concrete_D(state, Eigen::Vector2d::Zero(), 0.0, p);
    const double beta = p.shear.beta(1e-3);
    CHECK(D(2, 2) ==
          doctest::Approx(beta * p.elastic_shear_modulus()).epsilon(1e-12));
    Eigen::Matrix3d expected = Eigen::Matrix3d::Zero();
    expected(2, 2) = D(2, 2);
    CHECK((D - expected).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("crack at angle zero needs no rotation") {
    state.crack = CrackState::CrackedOne;
    state.crack_angle = 0.0;
    state.strain = Eigen::Vector3d(3e-4, -1e-4, 0.0);
    const Eigen::Vector2d E_dir(0.0, 12345.0);
    const Eigen::Matrix3d D = concrete_D(state, E_dir, 0.0, p);
    CHECK(D(0, 0) == 0.0);
    CHECK(D(1, 1) == doctest::Approx(12345.0).epsilon(1e-14));
    CHECK(D(0, 1) == 0.0);
  }

  SUBCASE("rotated crack transforms by congruence") {
    state.crack = CrackState::CrackedOne;
    state.crack_angle = 0.4;
    state.strain = Eigen::Vector3d::Zero();
    const Eigen::Vector2d E_dir(0.0, 20000.0);
    const Eigen::Matrix3d D = concrete_D(state, E_dir, 0.4, p);
    Eigen::Matrix3d local = Eigen::Matrix3d::Zero();
    local(1, 1) = 20000.0;
    local(2, 2) = p.shear.beta(0.0) * p.elastic_shear_modulus();
    const Eigen::Matrix3d T = strain_rotation(0.4);
    CHECK((D - T.transpose() * local * T).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((D - D.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("smeared steel matrix") {
  const auto s = test_steel(0.01, 0.002);
  SUBCASE("no reinforcement, no stiffness") {
    const auto D = steel_D(test_steel(0.0, 0.0), false, false);
    CHECK(D.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("elastic in both directions") {
    const auto D = steel_D(s, false, false);
    CHECK(D(0, 0) == doctest::Approx(s.rho_x * s.E_s).epsilon(1e-14));
    CHECK(D(1, 1) == doctest::Approx(s.rho_y * s.E_s).epsilon(1e-14));
    CHECK(D(2, 2) == 0.0);
  }
  SUBCASE("yield switches to the hardening modulus") {
    const auto D = steel_D(s, true, false);
    CHECK(D(0, 0) == doctest::Approx(s.rho_x * s.E_sh).epsilon(1e-14));
    CHECK(D(1, 1) == doctest::Approx(s.rho_y * s.E_s).epsilon(1e-14));
  }
}

TEST_CASE("aggregate-factor modulus realization") {
  RandomInputSpec spec;
  spec.target = RandomTarget::AlphaE;
  spec.mean = 0.8;
  const double f_cm = 32.1;

  SUBCASE("mean point") {
    spec.cov = 0.0577;
    CHECK(spec.realize(spec.mean, 0.0) == doctest::Approx(0.8).epsilon(1e-14));
    const double expected = 21500.0 * 0.8 * std::cbrt(f_cm / 10.0);
    CHECK(realize_E_ci(spec, 0.0, f_cm) ==
          doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("support endpoints, cov 5.77 percent") {
    spec.cov = 0.0577;
    CHECK(spec.realize(spec.mean, -1.0) == doctest::Approx(0.72).epsilon(1e-3));
    CHECK(spec.realize(spec.mean, 1.0) == doctest::Approx(0.88).epsilon(1e-3));
  }
  SUBCASE("support endpoints, cov 10 percent") {
    spec.cov = 0.10;
    CHECK(spec.realize(spec.mean, -1.0) == doctest::Approx(0.66).epsilon(5e-3));
    CHECK(spec.realize(spec.mean, 1.0) == doctest::Approx(0.94).epsilon(5e-3));
  }
  SUBCASE("plasticity number stays above one over both supports") {
    for (double cov : {0.0577, 0.10}) {
      spec.cov = cov;
      for (double xi = -1.0; xi <= 1.0; xi += 0.125) {
        const auto p = test_concrete(spec.realize(spec.mean, xi));
        CHECK(p.plasticity_number() > 1.0);
      }
    }
  }
  SUBCASE("degenerate parameters are rejected") {
    spec.cov = 0.10;
    CHECK_THROWS_AS(realize_E_ci(spec, 0.0, f_cm, /*E_c1=*/1e9), Error);
  }
}

TEST_CASE("state update basics") {
  const Eigen::Matrix3d D = isotropic_plane_stress(30000.0, 0.2);
  GaussPointState state;

  SUBCASE("zero increment leaves the state unchanged") {
    update_state(state, Eigen::Vector3d::Zero(), D);
    CHECK(state.stress.norm() == 0.0);
    CHECK(state.strain.norm() == 0.0);
    CHECK(state.crack == CrackState::Uncracked);
  }
  SUBCASE("small uniaxial step stays uncracked") {
    CrackLimits limits{1.5e-4, 3.5e-3};
    const Eigen::Vector3d de(1e-5, 0.0, 0.0);
    update_state(state, de, D, limits);
    CHECK((state.stress - D * de).norm() < 1e-12);
    CHECK(state.crack == CrackState::Uncracked);
  }
  SUBCASE("crossing the limit sets the crack along the principal direction") {
    CrackLimits limits{1.5e-4, 3.5e-3};
    const Eigen::Vector3d de(1e-4, 1e-4, 2e-4);
    update_state(state, de, D, limits);
    // oracle: eigen-decomposition of the strain tensor
    Eigen::Matrix2d eps;
    eps << de[0], 0.5 * de[2], 0.5 * de[2], de[1];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(eps);
    const double e_max = eig.eigenvalues()[1];
    CHECK(e_max > limits.eps_cr);
    CHECK(state.crack == CrackState::CrackedOne);
    const Eigen::Vector2d dir(std::cos(state.crack_angle),
                              std::sin(state.crack_angle));
    const double alignment = std::abs(dir.dot(eig.eigenvectors().col(1)));
    CHECK(std::abs(alignment - 1.0) < 1e-12);
  }
}

TEST_CASE("crack state is monotone over random update sequences") {
  const auto rc = test_rc();
  SplitMix64 rng(7777);
  for (int trial = 0; trial < 20; ++trial) {
    GaussPointState state;
    int prev = 0;
    for (int step = 0; step < 40; ++step) {
      const Eigen::Vector3d de(4e-5 * rng.uniform_pm1(),
                               4e-5 * rng.uniform_pm1(),
                               8e-5 * rng.uniform_pm1());
      material_point_update(Material(rc), state, de);
      const int now = static_cast<int>(state.crack);
      CHECK(now >= prev);
      prev = now;
    }
  }
}

TEST_CASE("tangent matrices are symmetric and uncracked pre-peak is psd") {
  const auto rc = test_rc();
  SplitMix64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    GaussPointState state;
    state.strain = Eigen::Vector3d(1e-4 * rng.uniform_pm1(),
                                   1e-4 * rng.uniform_pm1(),
                                   2e-4 * rng.uniform_pm1());
    const Eigen::Matrix3d D = material_tangent(Material(rc), state);
    CHECK((D - D.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * D.norm());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(D);
    CHECK(eig.eigenvalues().minCoeff() > -1e-9 * D.norm());
  }
}

TEST_CASE("cracked point follows the softening branch") {
  const auto rc = test_rc();
  const ConcreteParams& p = rc.concrete;
  GaussPointState state;
  // load uniaxially in x well past crack onset, in small steps
  const int n_steps = 60;
  const double eps_target = 3.0 * p.eps_cr;
  for (int i = 0; i < n_steps; ++i)
    material_point_update(Material(rc), state,
                          Eigen::Vector3d(eps_target / n_steps, 0, 0));
  CHECK(state.crack == CrackState::CrackedOne);
  CHECK(std::abs(state.crack_angle) < 1e-12);
  const double expected_concrete =
      tension_softening_stress(state.strain[0], p);
  const double steel = rc.steel.rho_x * steel_stress(state.strain[0], rc.steel);
  CHECK(state.stress[0] ==
        doctest::Approx(expected_concrete + steel).epsilon(1e-9));
}

TEST_SUITE_END();
