#include "sgfem/sg_system.hpp"

#include "sgfem/common.hpp"

namespace sgfem {

Eigen::VectorXd GpcVector::at(const Eigen::VectorXd& psi_values) const {
  require(psi_values.size() == n_blocks,
          "GpcVector: basis value count must match block count");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(block_size);
  for (int k = 0; k < n_blocks; ++k) out += psi_values[k] * block(k);
  return out;
}

GpcVector apply_block_operator(const SgSystem& sys, const GpcVector& v) {
  require(v.n_blocks == sys.n_xi && v.block_size == sys.n_x,
          "apply_block_operator: shape mismatch");
  require(sys.tensor != nullptr, "apply_block_operator: missing tensor");
  require(static_cast<int>(sys.terms.size()) == sys.tensor->n_K(),
          "apply_block_operator: term count must match tensor n_K");
  GpcVector y = GpcVector::zero(sys.n_xi, sys.n_x);
  // couplings are sorted by (l, m, k): one spmv per (l, m) pair
  const auto& entries = sys.tensor->couplings();
  Eigen::VectorXd w;
  int cur_l = -1, cur_m = -1;
  for (const auto& e : entries) {
    if (e.l != cur_l || e.m != cur_m) {
      cur_l = e.l;
      cur_m = e.m;
      w.noalias() = sys.terms[e.l] * v.block(e.m);
    }
    y.block(e.k) += e.value * w;
  }
  return y;
}

GpcVector SgSystem::apply(const GpcVector& v) const {
  return apply_block_operator(*this, v);
}

}  // namespace sgfem
