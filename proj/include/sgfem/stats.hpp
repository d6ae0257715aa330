#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

namespace sgfem {

struct Moments {
  double mu = 0;
  double sigma = 0;
};

// Closed form from orthonormality: mu = first coefficient, sigma from the
// remaining coefficient energy.
Moments moments_from_gpc(const Eigen::VectorXd& coeffs);

Moments sample_moments(std::span<const double> values);

struct PdfCurve {
  Eigen::VectorXd grid;
  Eigen::VectorXd density;
  bool degenerate = false;  // zero-variance input, no estimate produced
};

// Gaussian-kernel estimate on a uniform grid spanning mean +- span_sigmas
// standard deviations; bandwidth from the normal-reference rule on the
// sample standard deviation.
PdfCurve pdf_estimate(std::span<const double> samples, int grid_points = 512,
                      double span_sigmas = 5.0);

// Empirical Pr(u - u_tilde >= 0).
double exceedance(std::span<const double> values, double u_tilde);

// sqrt(mean of squared differences) over paired evaluations.
double rmse(std::span<const double> reference,
            std::span<const double> surrogate);

}  // namespace sgfem
