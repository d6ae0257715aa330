#include "sgfem/stats.hpp"

#include <algorithm>
#include <cmath>

#include "sgfem/common.hpp"

namespace sgfem {

Moments moments_from_gpc(const Eigen::VectorXd& coeffs) {
  require(coeffs.size() >= 1, "moments_from_gpc: empty coefficient vector");
  Moments m;
  m.mu = coeffs[0];
  double energy = 0.0;
  for (Eigen::Index k = 1; k < coeffs.size(); ++k)
    energy += coeffs[k] * coeffs[k];
  m.sigma = std::sqrt(energy);
  return m;
}

Moments sample_moments(std::span<const double> values) {
  require(!values.empty(), "sample_moments: empty sample");
  Moments m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mu = sum / values.size();
  double ss = 0.0;
  for (double v : values) ss += (v - m.mu) * (v - m.mu);
  m.sigma = values.size() > 1 ? std::sqrt(ss / (values.size() - 1)) : 0.0;
  return m;
}

PdfCurve pdf_estimate(std::span<const double> samples, int grid_points,
                      double span_sigmas) {
  require(samples.size() >= 100, "pdf_estimate: needs at least 100 samples");
  PdfCurve curve;
  const Moments m = sample_moments(samples);
  if (m.sigma == 0.0) {
    curve.degenerate = true;
    return curve;
  }
  const double n = static_cast<double>(samples.size());
  const double h = m.sigma * std::pow(4.0 / (3.0 * n), 0.2);

  curve.grid.resize(grid_points);
  curve.density.setZero(grid_points);
  const double lo = m.mu - span_sigmas * m.sigma;
  const double hi = m.mu + span_sigmas * m.sigma;
  for (int i = 0; i < grid_points; ++i)
    curve.grid[i] = lo + (hi - lo) * i / (grid_points - 1);

  const double norm = 1.0 / (n * h * std::sqrt(2.0 * M_PI));
  const double dx = (hi - lo) / (grid_points - 1);
  const double window = 8.0 * h;  // kernel tail below 1e-14 beyond this
  for (double v : samples) {
    const int i_lo = std::max(0, static_cast<int>((v - window - lo) / dx));
    const int i_hi =
        std::min(grid_points - 1, static_cast<int>((v + window - lo) / dx) + 1);
    for (int i = i_lo; i <= i_hi; ++i) {
      const double t = (curve.grid[i] - v) / h;
      curve.density[i] += norm * std::exp(-0.5 * t * t);
    }
  }
  return curve;
}

double exceedance(std::span<const double> values, double u_tilde) {
  require(!values.empty(), "exceedance: empty sample");
  require(std::isfinite(u_tilde), "exceedance: threshold must be finite");
  std::size_t count = 0;
  for (double v : values)
    if (v - u_tilde >= 0.0) ++count;
  return static_cast<double>(count) / values.size();
}

double rmse(std::span<const double> reference,
            std::span<const double> surrogate) {
  require(reference.size() == surrogate.size(),
          "rmse: length mismatch between reference and surrogate");
  require(!reference.empty(), "rmse: empty input");
  double ss = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const double d = surrogate[i] - reference[i];
    ss += d * d;
  }
  return std::sqrt(ss / reference.size());
}

}  // namespace sgfem
