#include "sgfem/materials.hpp"

#include <cmath>

#include "sgfem/common.hpp"

namespace sgfem {

// Strain at which the tensile rise reaches f_ctm.
constexpr double kPeakTensileStrain = 1.5e-4;
// Relative floor applied to nonpositive tangent moduli so assembled
// stiffness stays positive definite.
constexpr double kTangentFloor = 1e-6;

void ConcreteParams::validate() const {
  require(E_ci > 0, "concrete: E_ci must be positive");
  require(E_c1 > 0, "concrete: E_c1 must be positive");
  require(plasticity_number() > 1.0, "concrete: E_ci/E_c1 must exceed 1");
  require(f_ctm > 0, "concrete: f_ctm must be positive");
  require(nu_c >= 0 && nu_c < 0.5, "concrete: nu_c must lie in [0, 0.5)");
  require(eps_c1 > 0, "concrete: eps_c1 must be positive");
  require(eps_c_lim > eps_c1, "concrete: eps_c_lim must exceed eps_c1");
  require(std::abs(E_c1 * eps_c1 - f_cm) <= 1e-8 * f_cm,
          "concrete: E_c1 must equal f_cm/eps_c1");
  require(eps_cr > 0, "concrete: eps_cr must be positive");
  require(eps_tu > f_ctm / E_ci, "concrete: eps_tu must exceed f_ctm/E_ci");
  require(eps_tu > eps_cr, "concrete: eps_tu must exceed eps_cr");
}

void SteelParams::validate() const {
  if (rho_x == 0.0 && rho_y == 0.0) return;  // inactive
  require(E_s > 0, "steel: E_s must be positive");
  require(f_y > 0, "steel: f_y must be positive");
  require(E_sh >= 0, "steel: E_sh must be nonnegative");
  require(eps_sy < eps_su, "steel: eps_sy must be below eps_su");
  require(std::abs(eps_sy * E_s - f_y) <= 1e-8 * f_y,
          "steel: eps_sy must equal f_y/E_s");
  require(rho_x >= 0 && rho_x < 1 && rho_y >= 0 && rho_y < 1,
          "steel: reinforcement ratios must lie in [0, 1)");
}

double RandomInputSpec::support_halfwidth() const {
  return mean * cov * std::sqrt(3.0);
}

double RandomInputSpec::realize(double mean_local, double xi) const {
  require(xi >= -1.0 && xi <= 1.0, "random input: xi outside [-1,1]");
  return mean_local * (1.0 + cov * std::sqrt(3.0) * xi);
}

double RandomInputSpec::row_mean(int row, int n_rows) const {
  if (!profile || n_rows <= 1) return mean;
  double t = static_cast<double>(row) / (n_rows - 1);
  return profile->bottom_mean + t * (profile->top_mean - profile->bottom_mean);
}

// --- uniaxial curves ---------------------------------------------------

double concrete_compression_stress(double eps_c, const ConcreteParams& p) {
  const double eta = std::abs(eps_c) / p.eps_c1;
  require(std::abs(eps_c) < p.eps_c_lim,
          "concrete: compressive strain at or beyond the crushing limit");
  const double k = p.plasticity_number();
  const double denom = 1.0 + (k - 2.0) * eta;
  require(std::abs(denom) >= 1e-10,
          "concrete: compression curve singular at eta=" +
              format_double(eta));
  return -p.f_cm * (k * eta - eta * eta) / denom;
}

double tension_softening_stress(double eps_ct, const ConcreteParams& p) {
  if (eps_ct >= p.eps_tu) return 0.0;
  double s = p.f_ctm * (p.eps_tu - eps_ct) / (p.eps_tu - p.eps_cr);
  return std::clamp(s, 0.0, p.f_ctm);
}

double concrete_tension_stress(double eps_ct, const GaussPointState& state,
                               const ConcreteParams& p) {
  require(eps_ct >= 0, "concrete: tensile strain must be nonnegative");
  if (state.crack != CrackState::Uncracked)
    return tension_softening_stress(eps_ct, p);
  const double linear = p.E_ci * eps_ct;
  if (linear <= 0.9 * p.f_ctm) return linear;
  if (eps_ct >= kPeakTensileStrain) return p.f_ctm;
  const double den = kPeakTensileStrain - 0.9 * p.f_ctm / p.E_ci;
  return p.f_ctm * (1.0 - 0.1 * (kPeakTensileStrain - eps_ct) / den);
}

double steel_stress(double eps_s, const SteelParams& p) {
  const double a = std::abs(eps_s);
  require(a <= p.eps_su, "steel: strain beyond the ultimate strain");
  if (a < p.eps_sy) return p.E_s * eps_s;
  double mag = p.f_y + p.E_sh * (a - p.eps_sy);
  return eps_s >= 0 ? mag : -mag;
}

double tangent_concrete_modulus(double eps_c, double E_ci_value,
                                const ConcreteParams& p) {
  const double eta = std::abs(eps_c) / p.eps_c1;
  const double k = E_ci_value / p.E_c1;
  const double denom = 1.0 + (k - 2.0) * eta;
  require(std::abs(denom) >= 1e-10,
          "concrete: tangent modulus singular at eta=" + format_double(eta) +
              ", k=" + format_double(k));
  return p.E_c1 * ((k - 2.0 * eta) - (k - 2.0) * eta * eta) / (denom * denom);
}

double tangent_tension_modulus(double eps_ct, const ConcreteParams& p) {
  if (eps_ct <= 0.9 * p.f_ctm / p.E_ci) return p.E_ci;
  if (eps_ct >= kPeakTensileStrain) return kTangentFloor * p.E_ci;
  return 0.1 * p.f_ctm / (kPeakTensileStrain - 0.9 * p.f_ctm / p.E_ci);
}

// --- plane-stress matrices ---------------------------------------------

Eigen::Matrix3d isotropic_plane_stress(double E, double nu) {
  Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
  const double c = E / (1.0 - nu * nu);
  D(0, 0) = D(1, 1) = c;
  D(0, 1) = D(1, 0) = nu * c;
  D(2, 2) = E / (2.0 * (1.0 + nu));
  return D;
}

Eigen::Matrix3d strain_rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix3d T;
  T << c * c, s * s, c * s,
       s * s, c * c, -c * s,
       -2 * c * s, 2 * c * s, c * c - s * s;
  return T;
}

Eigen::Matrix3d stress_rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix3d T;
  T << c * c, s * s, 2 * c * s,
       s * s, c * c, -2 * c * s,
       -c * s, c * s, c * c - s * s;
  return T;
}

Eigen::Matrix3d concrete_D(const GaussPointState& state,
                           const Eigen::Vector2d& E_dir, double axes_angle,
                           const ConcreteParams& p) {
  const double G = p.elastic_shear_modulus();
  Eigen::Matrix3d local = Eigen::Matrix3d::Zero();
  switch (state.crack) {
    case CrackState::Uncracked: {
      const double E1 = E_dir[0], E2 = E_dir[1];
      const double c = 1.0 / (1.0 - p.nu_c * p.nu_c);
      local(0, 0) = c * E1;
      local(1, 1) = c * E2;
      local(0, 1) = local(1, 0) = c * p.nu_c * std::sqrt(E1 * E2);
      local(2, 2) = 0.5 * (E1 + E2) / (2.0 * (1.0 + p.nu_c));
      if (E1 == E2) return local;  // isotropic, rotation is a no-op
      break;
    }
    case CrackState::CrackedOne: {
      const double eps_n = std::max(
          0.0, (strain_rotation(axes_angle) * state.strain)[0]);
      local(1, 1) = E_dir[1];
      local(2, 2) = p.shear.beta(eps_n) * G;
      break;
    }
    case CrackState::CrackedTwo: {
      const double eps_n = std::max(
          0.0, (strain_rotation(axes_angle) * state.strain)[0]);
      local(2, 2) = p.shear.beta(eps_n) * G;
      break;
    }
  }
  if (axes_angle == 0.0) return local;
  Eigen::Matrix3d T = strain_rotation(axes_angle);
  Eigen::Matrix3d D = T.transpose() * local * T;
  return 0.5 * (D + D.transpose());  // congruence is symmetric; drop rounding
}

Eigen::Matrix3d steel_D(const SteelParams& p, bool yielded_x,
                        bool yielded_y) {
  Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
  D(0, 0) = p.rho_x * (yielded_x ? p.E_sh : p.E_s);
  D(1, 1) = p.rho_y * (yielded_y ? p.E_sh : p.E_s);
  return D;
}

// --- random parametrization --------------------------------------------

double realize_E_ci(const RandomInputSpec& spec, double xi, double f_cm,
                    double E_c1) {
  require(spec.target == RandomTarget::AlphaE,
          "realize_E_ci: spec does not target alpha_E");
  const double alpha = spec.realize(spec.mean, xi);
  const double E_ci = spec.E_c0 * alpha * std::cbrt(f_cm / 10.0);
  if (E_c1 > 0.0)
    require(E_ci > E_c1,
            "realize_E_ci: realized E_ci <= E_c1, plasticity number "
            "would not exceed 1");
  return E_ci;
}

// --- state update -------------------------------------------------------

PrincipalStrain principal_strain(const Eigen::Vector3d& strain) {
  const double mid = 0.5 * (strain[0] + strain[1]);
  const double dx = 0.5 * (strain[0] - strain[1]);
  const double g2 = 0.5 * strain[2];
  const double r = std::sqrt(dx * dx + g2 * g2);
  PrincipalStrain out;
  out.e1 = mid + r;
  out.e2 = mid - r;
  out.angle = (r == 0.0) ? 0.0 : 0.5 * std::atan2(strain[2], strain[0] - strain[1]);
  return out;
}

namespace {

void advance_crack_flags(GaussPointState& state, const CrackLimits& limits) {
  const PrincipalStrain pr = principal_strain(state.strain);
  state.max_tensile_strain = std::max(state.max_tensile_strain, pr.e1);
  if (state.crack == CrackState::Uncracked && pr.e1 > limits.eps_cr) {
    state.crack = CrackState::CrackedOne;
    state.crack_angle = pr.angle;
  } else if (state.crack == CrackState::CrackedOne) {
    const Eigen::Vector3d local =
        strain_rotation(state.crack_angle) * state.strain;
    if (local[1] > limits.eps_cr) state.crack = CrackState::CrackedTwo;
  }
  if (!state.crushed && -pr.e2 >= limits.eps_c_lim) state.crushed = true;
}

}  // namespace

void update_state(GaussPointState& state, const Eigen::Vector3d& d_strain,
                  const Eigen::Matrix3d& D, const CrackLimits& limits) {
  state.stress += D * d_strain;
  state.strain += d_strain;
  advance_crack_flags(state, limits);
}

// --- element materials ---------------------------------------------------

namespace {

// Tangent modulus of one concrete material direction from its strain.
double direction_modulus(double eps, const ConcreteParams& p) {
  if (eps >= 0.0) return tangent_tension_modulus(eps, p);
  double E = tangent_concrete_modulus(eps, p.E_ci, p);
  return std::max(E, kTangentFloor * p.E_ci);
}

Eigen::Matrix3d rc_concrete_tangent(const RcMaterial& mat,
                                    const GaussPointState& state) {
  const ConcreteParams& p = mat.concrete;
  if (state.crushed)
    return isotropic_plane_stress(kTangentFloor * p.E_ci, 0.0);
  switch (state.crack) {
    case CrackState::Uncracked: {
      const PrincipalStrain pr = principal_strain(state.strain);
      Eigen::Vector2d E_dir(direction_modulus(pr.e1, p),
                            direction_modulus(pr.e2, p));
      return concrete_D(state, E_dir, E_dir[0] == E_dir[1] ? 0.0 : pr.angle,
                        p);
    }
    case CrackState::CrackedOne: {
      const Eigen::Vector3d local =
          strain_rotation(state.crack_angle) * state.strain;
      Eigen::Vector2d E_dir(0.0, direction_modulus(local[1], p));
      return concrete_D(state, E_dir, state.crack_angle, p);
    }
    case CrackState::CrackedTwo:
      return concrete_D(state, Eigen::Vector2d::Zero(), state.crack_angle, p);
  }
  return Eigen::Matrix3d::Zero();
}

double smeared_steel_stress(double eps, double rho, const SteelParams& p) {
  if (rho == 0.0) return 0.0;
  if (std::abs(eps) > p.eps_su) return 0.0;  // ruptured, carries nothing
  return rho * steel_stress(eps, p);
}

}  // namespace

Eigen::Matrix3d material_tangent(const Material& mat,
                                 const GaussPointState& state) {
  if (const auto* lin = std::get_if<LinearElastic>(&mat))
    return isotropic_plane_stress(lin->E, lin->nu);
  const auto& rc = std::get<RcMaterial>(mat);
  return rc_concrete_tangent(rc, state) +
         steel_D(rc.steel, state.yielded_x, state.yielded_y);
}

void material_point_update(const Material& mat, GaussPointState& state,
                           const Eigen::Vector3d& d_strain) {
  if (const auto* lin = std::get_if<LinearElastic>(&mat)) {
    const Eigen::Matrix3d D = isotropic_plane_stress(lin->E, lin->nu);
    state.concrete_stress += D * d_strain;
    state.strain += d_strain;
    state.stress = state.concrete_stress;
    return;
  }
  const auto& rc = std::get<RcMaterial>(mat);
  const ConcreteParams& p = rc.concrete;

  const Eigen::Matrix3d Dc = rc_concrete_tangent(rc, state);
  if (!state.crushed) state.concrete_stress += Dc * d_strain;
  state.strain += d_strain;
  advance_crack_flags(state, CrackLimits{p.eps_cr, p.eps_c_lim});

  if (state.crack != CrackState::Uncracked && !state.crushed) {
    // crack-normal components follow the softening curve exactly
    const Eigen::Matrix3d Ts = stress_rotation(state.crack_angle);
    const Eigen::Vector3d eps_local =
        strain_rotation(state.crack_angle) * state.strain;
    Eigen::Vector3d sig_local = Ts * state.concrete_stress;
    sig_local[0] = tension_softening_stress(std::max(eps_local[0], p.eps_cr), p);
    if (state.crack == CrackState::CrackedTwo)
      sig_local[1] =
          tension_softening_stress(std::max(eps_local[1], p.eps_cr), p);
    state.concrete_stress = stress_rotation(-state.crack_angle) * sig_local;
  }

  state.yielded_x =
      state.yielded_x || std::abs(state.strain[0]) >= rc.steel.eps_sy;
  state.yielded_y =
      state.yielded_y || std::abs(state.strain[1]) >= rc.steel.eps_sy;

  Eigen::Vector3d steel(
      smeared_steel_stress(state.strain[0], rc.steel.rho_x, rc.steel),
      smeared_steel_stress(state.strain[1], rc.steel.rho_y, rc.steel), 0.0);
  state.stress = state.concrete_stress + steel;
}

}  // namespace sgfem
