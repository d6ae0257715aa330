#pragma once

#include <cmath>

#include "sgfem/materials.hpp"

namespace sgfem::testing {

// Concrete in the C24 range with the aggregate-factor modulus law.
inline ConcreteParams test_concrete(double alpha = 0.8,
                                    double f_c_prime = 24.1) {
  ConcreteParams p;
  p.f_c_prime = f_c_prime;
  p.f_cm = f_c_prime + 8.0;
  p.eps_c1 = 0.0022;
  p.eps_c_lim = 0.0035;
  p.nu_c = 0.2;
  p.E_c1 = p.f_cm / p.eps_c1;
  p.E_ci = 21500.0 * alpha * std::cbrt(p.f_cm / 10.0);
  p.f_ctm = 0.3 * std::pow(f_c_prime, 2.0 / 3.0);
  p.eps_cr = 1.5e-4;
  p.eps_tu = 10.0 * p.f_ctm / p.E_ci;
  p.validate();
  return p;
}

inline SteelParams test_steel(double rho_x = 0.01, double rho_y = 0.002) {
  SteelParams s;
  s.E_s = 200000.0;
  s.f_y = 555.0;
  s.E_sh = 2000.0;
  s.eps_sy = s.f_y / s.E_s;
  s.eps_su = 0.05;
  s.rho_x = rho_x;
  s.rho_y = rho_y;
  s.validate();
  return s;
}

inline RcMaterial test_rc() { return RcMaterial{test_concrete(), test_steel()}; }

}  // namespace sgfem::testing

#include "sgfem/fem.hpp"

namespace sgfem::testing {

// Rectangular nx-by-ny grid of quadrilaterals on [0,Lx]x[0,Ly]; node
// (ix, iy) has index iy*(nx+1)+ix, elements are counterclockwise.
inline Mesh grid_mesh(int nx, int ny, double Lx, double Ly,
                      double thickness = 1.0) {
  Mesh mesh;
  mesh.nodes.resize((nx + 1) * (ny + 1), 2);
  for (int iy = 0; iy <= ny; ++iy)
    for (int ix = 0; ix <= nx; ++ix) {
      const int n = iy * (nx + 1) + ix;
      mesh.nodes(n, 0) = Lx * ix / nx;
      mesh.nodes(n, 1) = Ly * iy / ny;
    }
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const int n00 = iy * (nx + 1) + ix;
      mesh.elements.push_back(
          {n00, n00 + 1, n00 + nx + 2, n00 + nx + 1});
    }
  mesh.thickness.assign(mesh.elements.size(), thickness);
  mesh.material_id.assign(mesh.elements.size(), 0);
  return mesh;
}

inline int grid_node(int nx, int ix, int iy) { return iy * (nx + 1) + ix; }

}  // namespace sgfem::testing
