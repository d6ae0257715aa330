#include "sgfem/runner.hpp"

#include <chrono>
#include <sstream>

#include "json.hpp"
#include "sgfem/common.hpp"
#include "sgfem/io.hpp"
#include "sgfem/rng.hpp"

namespace sgfem {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<Eigen::VectorXd> uniform_draws(int n, int dim,
                                           std::uint64_t seed) {
  std::vector<Eigen::VectorXd> points(n);
  for (int i = 0; i < n; ++i) {
    SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(i));
    Eigen::VectorXd xi(dim);
    for (int d = 0; d < dim; ++d) xi[d] = rng.uniform_pm1();
    points[i] = xi;
  }
  return points;
}

Eigen::MatrixXd surrogate_observables_at(
    const Model& model, const ObservableSet& obs, const GpcBasis& basis,
    const GpcVector& coeffs, const std::vector<Eigen::VectorXd>& points) {
  Eigen::MatrixXd out(points.size(), obs.count());
  // materials only matter for the tangent-modulus probe
  const bool need_materials = obs.ect_probe_element.has_value();
  const MaterialTable empty;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Eigen::VectorXd psi = basis.eval_all(points[i]);
    const Eigen::VectorXd u = coeffs.at(psi);
    const MaterialTable materials =
        need_materials ? model.realize(points[i]) : empty;
    out.row(i) =
        extract_observables(model, materials, obs, u).transpose();
  }
  return out;
}

namespace {

// seed offsets decouple the surrogate-sampling streams from the MC stream
constexpr std::uint64_t kSurrogateSeedOffset = 0x5947f3a1;

std::string multiplier_header(double k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "p_%.4g", k);
  return buf;
}

struct MethodTiming {
  std::string method;
  double seconds = 0;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void write_det_csv(const fs::path& dir, const Mesh& mesh,
                   const DeterministicSolution& det) {
  AtomicFileWriter w(dir / "det_displacement.csv");
  w.write("increment,dof,value\n");
  for (std::size_t n = 0; n < det.u_history.size(); ++n) {
    const Eigen::VectorXd full = mesh.to_full(det.u_history[n]);
    for (int dof = 0; dof < mesh.n_dof(); ++dof)
      w.row({std::to_string(n + 1), std::to_string(dof + 1),
             format_double(full[dof])});
  }
  w.commit();
}

void write_coeff_csv(const fs::path& path, const Mesh& mesh,
                     const std::vector<GpcVector>& history) {
  AtomicFileWriter w(path);
  w.write("increment,basis_index,dof,coefficient\n");
  for (std::size_t n = 0; n < history.size(); ++n) {
    const GpcVector& coeff = history[n];
    for (int k = 0; k < coeff.n_blocks; ++k) {
      for (int i = 0; i < coeff.block_size; ++i) {
        const int dof = mesh.free_dofs[i];
        w.row({std::to_string(n + 1), std::to_string(k + 1),
               std::to_string(dof + 1), format_double(coeff.block(k)[i])});
      }
    }
  }
  w.commit();
}

void write_ensemble_csv(const fs::path& dir, const SampleEnsemble& ensemble,
                        const ObservableSet& obs, int n_random) {
  AtomicFileWriter w(dir / "mc_ensemble.csv");
  std::string header = "sample_id";
  for (int d = 0; d < n_random; ++d)
    header += ",xi_" + std::to_string(d + 1);
  header += ",increment,observable,value\n";
  w.write(header);
  for (std::size_t s = 0; s < ensemble.samples.size(); ++s) {
    const SampleResult& sample = ensemble.samples[s];
    for (int n = 0; n < sample.last_converged_increment; ++n) {
      for (int c = 0; c < obs.count(); ++c) {
        std::vector<std::string> cells;
        cells.push_back(std::to_string(s + 1));
        for (int d = 0; d < n_random; ++d)
          cells.push_back(format_double(sample.xi[d]));
        cells.push_back(std::to_string(n + 1));
        cells.push_back(obs.names[c]);
        cells.push_back(format_double(sample.observables(n, c)));
        w.row(cells);
      }
    }
  }
  w.commit();
}

void write_solve_reports(const fs::path& dir, const SgSolution& sg) {
  {
    AtomicFileWriter w(dir / "sg_solve_report.csv");
    w.write(
        "increment,step,preconditioner,iterations,final_relative_residual\n");
    for (const auto& rep : sg.reports)
      w.row({std::to_string(rep.increment), std::to_string(rep.step),
             rep.solve.preconditioner, std::to_string(rep.solve.iterations),
             format_double(rep.solve.residual_history.back())});
    w.commit();
  }
  {
    AtomicFileWriter w(dir / "sg_residual_history.csv");
    w.write("increment,step,iteration,relative_residual\n");
    for (const auto& rep : sg.reports)
      for (std::size_t it = 0; it < rep.solve.residual_history.size(); ++it)
        w.row({std::to_string(rep.increment), std::to_string(rep.step),
               std::to_string(it), format_double(rep.solve.residual_history[it])});
    w.commit();
  }
}

void write_pdf_csv(const fs::path& path, const PdfCurve& curve) {
  AtomicFileWriter w(path);
  w.write("grid,density\n");
  if (!curve.degenerate)
    for (Eigen::Index i = 0; i < curve.grid.size(); ++i)
      w.row({format_double(curve.grid[i]), format_double(curve.density[i])});
  w.commit();
}

}  // namespace

RunArtifacts run(const RunConfig& config, const RunOptions& options) {
  RunConfig cfg = config;
  if (options.long_mode) cfg.mc.samples = 1000000;
  if (!options.output_dir_override.empty())
    cfg.output_dir = options.output_dir_override;

  RunArtifacts artifacts;
  artifacts.output_dir = cfg.output_dir;
  fs::create_directories(artifacts.output_dir);

  const Model& model = cfg.model;
  const ObservableSet& obs = cfg.observables;
  const int n_inc = model.program.n_increments();
  std::vector<MethodTiming> timings;

  // deterministic reference (mean parameters)
  Stopwatch det_watch;
  artifacts.det = newton_raphson(model.mesh, model.mean_materials(),
                                 model.program, cholesky_factorizer());
  timings.push_back({"det", det_watch.seconds()});

  // reference observable values u_m per increment
  Eigen::MatrixXd det_obs(n_inc, obs.count());
  {
    const MaterialTable mean_materials = model.mean_materials();
    for (int n = 0; n < n_inc; ++n)
      det_obs.row(n) = extract_observables(model, mean_materials, obs,
                                           artifacts.det.u_history[n])
                           .transpose();
  }

  std::optional<GpcBasis> basis;
  std::optional<QuadratureRule> rule;
  std::optional<TripleProductTensor> tensor;
  if (cfg.has_method("sc") || cfg.has_method("sg")) {
    basis.emplace(model.n_random, cfg.gpc_degree);
    rule = smolyak(model.n_random, cfg.sparse_level);
  }

  if (cfg.has_method("mc")) {
    Stopwatch watch;
    artifacts.mc = monte_carlo(model, obs, cfg.mc.samples, cfg.mc.seed,
                               options.workers);
    timings.push_back({"mc", watch.seconds()});
  }
  if (cfg.has_method("sc")) {
    Stopwatch watch;
    artifacts.sc = collocation(model, obs, *rule, *basis, options.workers);
    timings.push_back({"sc", watch.seconds()});
  }
  if (cfg.has_method("sg")) {
    Stopwatch watch;
    tensor = TripleProductTensor::compute(*basis, basis->size());
    SgOptions sgopt;
    sgopt.preconditioner = cfg.solver.preconditioner;
    sgopt.cg_tol = cfg.solver.tol;
    sgopt.cg_max_iter = cfg.solver.max_iter;
    artifacts.sg = sg_newton_raphson(model, *basis, *tensor, *rule, sgopt);
    timings.push_back({"sg", watch.seconds()});
  }

  // --- statistics -----------------------------------------------------

  const auto& multipliers = cfg.statistics.exceedance_multipliers;
  struct SurrogateColumns {
    // per increment: observable matrix sampled at the shared draw points
    std::vector<Eigen::MatrixXd> sampled;
    // per increment: values at the MC sample points (dof observables only)
    std::vector<Eigen::MatrixXd> at_mc_points;
  };

  std::vector<Eigen::VectorXd> mc_points;
  std::vector<int> mc_converged;  // sample indices converged at all increments
  if (artifacts.mc) {
    for (std::size_t i = 0; i < artifacts.mc->samples.size(); ++i)
      if (artifacts.mc->samples[i].converged)
        mc_converged.push_back(static_cast<int>(i));
    mc_points.reserve(mc_converged.size());
    for (int i : mc_converged)
      mc_points.push_back(artifacts.mc->samples[i].xi);
  }

  auto surrogate_stats =
      [&](const std::vector<GpcVector>& history,
          std::uint64_t seed_offset) -> SurrogateColumns {
    SurrogateColumns cols;
    const std::vector<Eigen::VectorXd> draws =
        uniform_draws(cfg.statistics.pdf_samples, model.n_random,
                      cfg.mc.seed + seed_offset);
    cols.sampled.reserve(history.size());
    cols.at_mc_points.reserve(history.size());
    for (const GpcVector& coeff : history) {
      cols.sampled.push_back(
          surrogate_observables_at(model, obs, *basis, coeff, draws));
      if (!mc_points.empty())
        cols.at_mc_points.push_back(
            surrogate_observables_at(model, obs, *basis, coeff, mc_points));
      else
        cols.at_mc_points.emplace_back(0, obs.count());
    }
    return cols;
  };

  std::optional<SurrogateColumns> sc_cols, sg_cols;
  if (artifacts.sc)
    sc_cols = surrogate_stats(artifacts.sc->u_coeff_history,
                              kSurrogateSeedOffset);
  if (artifacts.sg)
    sg_cols =
        surrogate_stats(artifacts.sg->u_history, kSurrogateSeedOffset + 1);

  auto push_summary = [&](const std::string& method, int inc, int c,
                          const Moments& m, std::optional<double> rmse_value,
                          const std::vector<double>& p) {
    SummaryRow row;
    row.method = method;
    row.increment = inc + 1;
    row.observable = obs.names[c];
    row.mu = m.mu;
    row.sigma = m.sigma;
    row.rmse = rmse_value;
    row.exceedance = p;
    artifacts.summary.push_back(std::move(row));
  };

  for (int n = 0; n < n_inc; ++n) {
    for (int c = 0; c < obs.count(); ++c) {
      const double u_m = det_obs(n, c);
      std::vector<double> mc_column;
      if (artifacts.mc) {
        mc_column.reserve(mc_converged.size());
        for (int i : mc_converged)
          mc_column.push_back(artifacts.mc->samples[i].observables(n, c));
        Moments m = sample_moments(mc_column);
        std::vector<double> p;
        for (double k : multipliers)
          p.push_back(exceedance(mc_column, k * u_m));
        push_summary("mc", n, c, m, std::nullopt, p);
      }
      auto spectral_summary = [&](const std::string& method,
                                  const SurrogateColumns& cols,
                                  const std::vector<GpcVector>& history) {
        const bool is_dof = c < static_cast<int>(obs.dofs.size());
        Moments m;
        if (is_dof) {
          // dof observables are linear in the coefficients
          const int free_index =
              model.mesh.free_map[obs.dofs[c]];
          Eigen::VectorXd coeff_of_obs(history[n].n_blocks);
          for (int k = 0; k < history[n].n_blocks; ++k)
            coeff_of_obs[k] =
                free_index >= 0 ? history[n].block(k)[free_index] : 0.0;
          m = moments_from_gpc(coeff_of_obs);
        } else {
          const auto col = cols.sampled[n].col(c);
          m = sample_moments(
              std::span<const double>(col.data(), col.size()));
        }
        std::optional<double> rmse_value;
        if (artifacts.mc && is_dof && !mc_column.empty()) {
          const auto col = cols.at_mc_points[n].col(c);
          rmse_value =
              rmse(mc_column,
                   std::span<const double>(col.data(), col.size()));
        }
        std::vector<double> p;
        const auto col = cols.sampled[n].col(c);
        std::span<const double> sampled(col.data(), col.size());
        for (double k : multipliers)
          p.push_back(exceedance(sampled, k * u_m));
        push_summary(method, n, c, m, rmse_value, p);
      };
      if (artifacts.sc)
        spectral_summary("sc", *sc_cols, artifacts.sc->u_coeff_history);
      if (artifacts.sg) spectral_summary("sg", *sg_cols, artifacts.sg->u_history);
    }
  }

  // --- artifact files ---------------------------------------------------

  if (cfg.has_method("det"))
    write_det_csv(artifacts.output_dir, model.mesh, artifacts.det);
  if (artifacts.mc)
    write_ensemble_csv(artifacts.output_dir, *artifacts.mc, obs,
                       model.n_random);
  if (artifacts.sc)
    write_coeff_csv(artifacts.output_dir / "sc_coefficients.csv", model.mesh,
                    artifacts.sc->u_coeff_history);
  if (artifacts.sg) {
    write_coeff_csv(artifacts.output_dir / "sg_coefficients.csv", model.mesh,
                    artifacts.sg->u_history);
    write_solve_reports(artifacts.output_dir, *artifacts.sg);
    std::ostringstream tensor_text;
    tensor->write_text(tensor_text);
    AtomicFileWriter w(artifacts.output_dir / "sg_tensor.txt");
    w.write(tensor_text.str());
    w.commit();
  }

  // summary tables, one file per observable
  if (artifacts.mc || artifacts.sc || artifacts.sg) {
    for (int c = 0; c < obs.count(); ++c) {
      AtomicFileWriter w(artifacts.output_dir /
                         ("summary_" + obs.names[c] + ".csv"));
      std::string header = "method,increment,mu,sigma,rmse";
      for (double k : multipliers) header += "," + multiplier_header(k);
      w.write(header + "\n");
      for (const SummaryRow& row : artifacts.summary) {
        if (row.observable != obs.names[c]) continue;
        std::vector<std::string> cells{row.method,
                                       std::to_string(row.increment),
                                       format_double(row.mu),
                                       format_double(row.sigma),
                                       row.rmse ? format_double(*row.rmse)
                                                : ""};
        for (double p : row.exceedance) cells.push_back(format_double(p));
        w.row(cells);
      }
      w.commit();
    }
  }

  // PDF curves for requested increments
  for (int inc : cfg.statistics.pdf_increments) {
    for (int c = 0; c < obs.count(); ++c) {
      auto pdf_name = [&](const std::string& method) {
        return "pdf_" + obs.names[c] + "_inc" + std::to_string(inc) + "_" +
               method + ".csv";
      };
      if (artifacts.mc) {
        std::vector<double> column;
        for (int i : mc_converged)
          column.push_back(artifacts.mc->samples[i].observables(inc - 1, c));
        if (column.size() >= 100)
          write_pdf_csv(artifacts.output_dir / pdf_name("mc"),
                        pdf_estimate(column));
      }
      auto surrogate_pdf = [&](const std::string& method,
                               const SurrogateColumns& cols) {
        const auto col = cols.sampled[inc - 1].col(c);
        write_pdf_csv(
            artifacts.output_dir / pdf_name(method),
            pdf_estimate(std::span<const double>(col.data(), col.size())));
      };
      if (artifacts.sc) surrogate_pdf("sc", *sc_cols);
      if (artifacts.sg) surrogate_pdf("sg", *sg_cols);
    }
  }

  // run metadata; the only file whose bytes may differ between identical runs
  {
    json meta;
    meta["config_hash"] =
        "fnv1a:" + std::to_string(fnv1a_hash(cfg.config_text));
    meta["seed"] = cfg.mc.seed;
    meta["version"] = "0.1.0";
    meta["methods"] = cfg.methods;
    meta["choices"] = {{"cg_warm_start", "previous-step-increment"},
                       {"projection_rule", "shared-for-stiffness-and-force"},
                       {"basis_order", "graded-lexicographic"}};
    json jt = json::object();
    for (const auto& t : timings) jt[t.method] = t.seconds;
    meta["timings_s"] = jt;
    meta["timestamp"] =
        static_cast<std::int64_t>(std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    AtomicFileWriter w(artifacts.output_dir / "metadata.json");
    w.write(meta.dump(2) + "\n");
    w.commit();
  }

  return artifacts;
}

}  // namespace sgfem
