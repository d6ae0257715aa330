#pragma once

#include <Eigen/Dense>
#include <optional>
#include <variant>
#include <vector>

namespace sgfem {

// Retained fraction of the elastic shear modulus on a cracked plane.
// Default law decays with the crack-normal strain but stays bounded away
// from zero; constant mode is available for tests.
struct ShearRetention {
  std::optional<double> constant;
  double floor = 0.05;
  double scale = 0.4;
  double ref_strain = 0.004;

  double beta(double crack_normal_strain) const {
    if (constant) return *constant;
    return std::max(floor, scale * (1.0 - crack_normal_strain / ref_strain));
  }
};

struct ConcreteParams {
  double f_c_prime = 0;  // specific compressive strength (MPa)
  double f_cm = 0;       // actual compressive strength = f_c_prime + 8 (MPa)
  double E_ci = 0;       // initial tangent modulus (MPa)
  double E_c1 = 0;       // secant modulus to the compressive peak (MPa)
  double eps_c1 = 0;     // strain magnitude at peak compressive stress
  double eps_c_lim = 0;  // limit compressive strain magnitude
  double f_ctm = 0;      // tensile strength (MPa)
  double nu_c = 0;       // Poisson ratio
  double eps_cr = 0;     // crack-onset (limiting tensile) strain
  double eps_tu = 0;     // tension-stiffening terminal strain
  ShearRetention shear;

  double plasticity_number() const { return E_ci / E_c1; }
  double elastic_shear_modulus() const { return E_ci / (2.0 * (1.0 + nu_c)); }
  void validate() const;
};

struct SteelParams {
  double E_s = 0;    // MPa
  double f_y = 0;    // MPa
  double E_sh = 0;   // hardening modulus (MPa)
  double eps_sy = 0; // yield strain = f_y / E_s
  double eps_su = 0; // ultimate strain
  double rho_x = 0;  // smeared reinforcement ratio, x direction
  double rho_y = 0;

  void validate() const;
};

enum class CrackState { Uncracked = 0, CrackedOne = 1, CrackedTwo = 2 };

struct GaussPointState {
  Eigen::Vector3d strain = Eigen::Vector3d::Zero();   // (eps_x, eps_y, gamma_xy)
  Eigen::Vector3d stress = Eigen::Vector3d::Zero();   // total committed (MPa)
  Eigen::Vector3d concrete_stress = Eigen::Vector3d::Zero();
  CrackState crack = CrackState::Uncracked;
  double crack_angle = 0.0;            // direction of the first crack normal (rad)
  double max_tensile_strain = 0.0;     // largest principal tensile strain attained
  bool yielded_x = false;
  bool yielded_y = false;
  bool crushed = false;
};

// Uniform random material input: either the aggregate factor alpha_E scaling
// the initial concrete modulus, or the specific compressive strength, the
// latter optionally with a per-mesh-row linear profile of its mean.
enum class RandomTarget { AlphaE, FcPrime };

struct RowProfile {
  double bottom_mean = 0;
  double top_mean = 0;
};

struct RandomInputSpec {
  RandomTarget target = RandomTarget::AlphaE;
  double mean = 0;
  double cov = 0;            // coefficient of variation, > 0 (0 = degenerate)
  double E_c0 = 21500.0;     // MPa
  std::optional<RowProfile> profile;

  double support_halfwidth() const;
  // mean_local*(1 + cov*sqrt(3)*xi) for xi in [-1,1]
  double realize(double mean_local, double xi) const;
  double row_mean(int row, int n_rows) const;
};

// --- uniaxial curves ---------------------------------------------------

// Compressive stress (negative) from the rational hardening/softening curve;
// eps_c is the signed strain, compression negative. Throws past the
// crushing limit.
double concrete_compression_stress(double eps_c, const ConcreteParams& p);

// Tensile stress: bilinear rise to f_ctm at 1.5e-4 while uncracked, linear
// descent from (eps_cr, f_ctm) to (eps_tu, 0) once the point has cracked.
double concrete_tension_stress(double eps_ct, const GaussPointState& state,
                               const ConcreteParams& p);

// Stress on the post-crack descending branch only.
double tension_softening_stress(double eps_ct, const ConcreteParams& p);

// Bilinear steel law, symmetric in tension and compression. Throws on
// rupture (|eps| > eps_su).
double steel_stress(double eps_s, const SteelParams& p);

// d sigma_c / d eps_c of the compression curve evaluated with a realized
// initial modulus. Throws near the removable singularity of the curve.
double tangent_concrete_modulus(double eps_c, double E_ci_value,
                                const ConcreteParams& p);

// Slope of the tensile curve while uncracked.
double tangent_tension_modulus(double eps_ct, const ConcreteParams& p);

// --- plane-stress matrices ---------------------------------------------

Eigen::Matrix3d isotropic_plane_stress(double E, double nu);

// Strain transformation to axes rotated by angle (engineering shear).
Eigen::Matrix3d strain_rotation(double angle);
// Stress transformation to axes rotated by angle.
Eigen::Matrix3d stress_rotation(double angle);

// Tangent concrete matrix: isotropic-coupling orthotropic form from the two
// principal-direction moduli while uncracked; crack-axis orthotropy with
// zero modulus normal to the crack and beta*G shear once cracked.
// E_dir holds the moduli of the two material directions (principal axes
// while uncracked, crack axes after cracking); angle orients those axes.
Eigen::Matrix3d concrete_D(const GaussPointState& state,
                           const Eigen::Vector2d& E_dir, double axes_angle,
                           const ConcreteParams& p);

Eigen::Matrix3d steel_D(const SteelParams& p, bool yielded_x, bool yielded_y);

// --- random parametrization --------------------------------------------

// Initial concrete modulus from the aggregate-factor law
// E_ci = E_c0 * alpha_E(xi) * (f_cm/10)^(1/3). Pass E_c1 > 0 to enforce
// a plasticity number above one.
double realize_E_ci(const RandomInputSpec& spec, double xi, double f_cm,
                    double E_c1 = 0.0);

// --- state update -------------------------------------------------------

struct CrackLimits {
  double eps_cr = std::numeric_limits<double>::infinity();
  double eps_c_lim = std::numeric_limits<double>::infinity();
};

struct PrincipalStrain {
  double e1, e2;   // e1 >= e2
  double angle;    // direction of e1 (rad)
};
PrincipalStrain principal_strain(const Eigen::Vector3d& strain);

// Incremental update: stress += D * d_strain, strain += d_strain, then the
// crack flags advance if the principal tensile strain crossed eps_cr
// (second crack orthogonal to the first). Crack state never reverts.
void update_state(GaussPointState& state, const Eigen::Vector3d& d_strain,
                  const Eigen::Matrix3d& D, const CrackLimits& limits = {});

// --- element materials ---------------------------------------------------

struct LinearElastic {
  double E = 0;
  double nu = 0;
};

struct RcMaterial {
  ConcreteParams concrete;
  SteelParams steel;
};

using Material = std::variant<LinearElastic, RcMaterial>;

// Tangent matrix for global-axes assembly, from the committed state.
Eigen::Matrix3d material_tangent(const Material& mat,
                                 const GaussPointState& state);

// Full per-point commit for one displacement-driven strain increment:
// concrete stress advances incrementally (crack-normal components follow
// the softening curve), smeared steel stress is evaluated from total
// strain, flags advance monotonically.
void material_point_update(const Material& mat, GaussPointState& state,
                           const Eigen::Vector3d& d_strain);

using MaterialTable = std::vector<Material>;

}  // namespace sgfem
