#include "sgfem/solvers.hpp"

#include <chrono>
#include <cmath>

#include "sgfem/common.hpp"

namespace sgfem {

SpdFactor::SpdFactor(const SpMat& K) : rows_(static_cast<int>(K.rows())) {
  llt_.compute(K);
  require(llt_.info() == Eigen::Success,
          "SpdFactor: Cholesky factorization failed (matrix not SPD?)");
}

Eigen::VectorXd SpdFactor::solve(const Eigen::VectorXd& rhs) const {
  return llt_.solve(rhs);
}

Eigen::VectorXd direct_solve(const SpMat& K, const Eigen::VectorXd& b) {
  SpdFactor fact(K);
  Eigen::VectorXd x = fact.solve(b);
  // one refinement pass keeps the verified residual safe for stiff systems
  Eigen::VectorXd r = b - K * x;
  x += fact.solve(r);
  r = b - K * x;
  const double scale = std::max(b.norm(), 1e-30);
  require(r.norm() / scale <= 1e-10,
          "direct_solve: residual " + format_double(r.norm() / scale) +
              " exceeds 1e-10");
  return x;
}

MeanBasedPreconditioner::MeanBasedPreconditioner(
    std::shared_ptr<const SpdFactor> mean)
    : mean_(std::move(mean)) {
  require(mean_ != nullptr, "MeanBasedPreconditioner: missing factorization");
}

GpcVector mb_apply(const SpdFactor& mean_factor, const GpcVector& r) {
  require(r.block_size == mean_factor.rows(),
          "mb_apply: block size must match the mean matrix");
  GpcVector z = GpcVector::zero(r.n_blocks, r.block_size);
  for (int k = 0; k < r.n_blocks; ++k)
    z.block(k) = mean_factor.solve(r.block(k));
  return z;
}

GpcVector MeanBasedPreconditioner::apply(const GpcVector& r) const {
  return mb_apply(*mean_, r);
}

int HierarchicalPartition::level_of(int block) const {
  for (int l = 1; l <= levels(); ++l)
    if (block < offsets[l]) return l;
  fail("HierarchicalPartition: block index out of range");
}

HierarchicalPartition HierarchicalPartition::from_basis(const GpcBasis& basis) {
  HierarchicalPartition part;
  part.offsets.assign(basis.degree() + 2, 0);
  for (int k = 1; k <= basis.size(); ++k) {
    int d = basis.total_degree(k);
    require(d <= basis.degree(), "HierarchicalPartition: degree overflow");
    part.offsets[d + 1]++;
  }
  for (std::size_t l = 1; l < part.offsets.size(); ++l)
    part.offsets[l] += part.offsets[l - 1];
  require(part.offsets.back() == basis.size(),
          "HierarchicalPartition: offsets must cover the basis");
  return part;
}

HierarchicalGsPreconditioner::HierarchicalGsPreconditioner(
    HierarchicalPartition partition, const SgSystem& sys,
    std::shared_ptr<const SpdFactor> mean)
    : partition_(std::move(partition)), sys_(&sys), mean_(std::move(mean)) {
  require(mean_ != nullptr, "ahgs: missing mean factorization");
  require(partition_.offsets.back() == sys.n_xi,
          "ahgs: partition inconsistent with the operator");
  block_level_.resize(sys.n_xi);
  for (int b = 0; b < sys.n_xi; ++b)
    block_level_[b] = partition_.level_of(b);
}

namespace {

// For every row block k in level `level`: sum over couplings with source
// block m outside the level, i.e. the B_l/C_l products of the sweep.
void add_offdiagonal_row(const SgSystem& sys,
                         const std::vector<int>& block_level, int level,
                         const GpcVector& v, GpcVector& out) {
  Eigen::VectorXd w;
  int cur_l = -1, cur_m = -1;
  bool have_w = false;
  for (const auto& e : sys.tensor->couplings()) {
    if (block_level[e.k] != level || block_level[e.m] == level) continue;
    if (e.l != cur_l || e.m != cur_m || !have_w) {
      cur_l = e.l;
      cur_m = e.m;
      w.noalias() = sys.terms[e.l] * v.block(e.m);
      have_w = true;
    }
    out.block(e.k) += e.value * w;
  }
}

}  // namespace

GpcVector ahgs_apply(const HierarchicalPartition& partition,
                     const SgSystem& sys, const SpdFactor& mean_factor,
                     const GpcVector& r) {
  require(r.n_blocks == sys.n_xi && r.block_size == sys.n_x,
          "ahgs_apply: shape mismatch");
  std::vector<int> block_level(sys.n_xi);
  for (int b = 0; b < sys.n_xi; ++b) block_level[b] = partition.level_of(b);
  const int L = partition.levels();

  GpcVector v = GpcVector::zero(r.n_blocks, r.block_size);
  auto solve_level = [&](int level) {
    GpcVector rhs = GpcVector::zero(r.n_blocks, r.block_size);
    add_offdiagonal_row(sys, block_level, level, v, rhs);
    for (int b = partition.offsets[level - 1]; b < partition.offsets[level];
         ++b)
      v.block(b) = mean_factor.solve(r.block(b) - rhs.block(b));
  };

  // initial v = 0, so the first pass only sees lower levels
  solve_level(1);
  for (int l = 2; l <= L - 1; ++l) solve_level(l);
  if (L >= 2) solve_level(L);
  for (int l = L - 1; l >= 2; --l) solve_level(l);
  if (L >= 2) solve_level(1);
  return v;
}

GpcVector HierarchicalGsPreconditioner::apply(const GpcVector& r) const {
  return ahgs_apply(partition_, *sys_, *mean_, r);
}

std::pair<GpcVector, SolveReport> cg(const SgSystem& A,
                                     const Preconditioner& P,
                                     const GpcVector& rhs, double tol,
                                     int max_iter, const GpcVector* x0) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport report;
  report.preconditioner = P.tag();

  GpcVector x = x0 ? *x0 : GpcVector::zero(rhs.n_blocks, rhs.block_size);
  GpcVector r = rhs;
  if (x0) r.data -= A.apply(x).data;

  const double r0_norm = r.norm();
  const double rhs_norm = rhs.norm();
  if (r0_norm == 0.0 || r0_norm <= tol * rhs_norm) {
    report.converged = true;
    report.residual_history.push_back(r0_norm == 0.0 ? 0.0 : 1.0);
    return {x, report};
  }
  report.residual_history.push_back(1.0);

  GpcVector z = P.apply(r);
  GpcVector p = z;
  double rho = r.data.dot(z.data);

  for (int it = 1; it <= max_iter; ++it) {
    GpcVector q = A.apply(p);
    const double pq = p.data.dot(q.data);
    if (pq <= 0.0)
      fail("cg: operator not positive definite at iteration " +
           std::to_string(it) + " (p'Ap = " + format_double(pq) + ")");
    const double alpha = rho / pq;
    x.data += alpha * p.data;
    r.data -= alpha * q.data;
    const double r_norm = r.norm();
    const double rel = r_norm / r0_norm;
    report.residual_history.push_back(rel);
    report.iterations = it;
    if (rel <= tol || r_norm <= tol * rhs_norm) {
      report.converged = true;
      break;
    }
    z = P.apply(r);
    const double rho_new = r.data.dot(z.data);
    const double beta = rho_new / rho;
    rho = rho_new;
    p.data = z.data + beta * p.data;
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return {x, report};
}

}  // namespace sgfem
