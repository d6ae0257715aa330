#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "sgfem/gpc.hpp"

namespace sgfem {

using SpMat = Eigen::SparseMatrix<double>;

// Concatenation of n_blocks coefficient subvectors of equal length.
struct GpcVector {
  Eigen::VectorXd data;
  int n_blocks = 0;
  int block_size = 0;

  static GpcVector zero(int n_blocks, int block_size) {
    GpcVector v;
    v.n_blocks = n_blocks;
    v.block_size = block_size;
    v.data = Eigen::VectorXd::Zero(
        static_cast<Eigen::Index>(n_blocks) * block_size);
    return v;
  }

  Eigen::VectorBlock<Eigen::VectorXd> block(int k) {
    return data.segment(static_cast<Eigen::Index>(k) * block_size, block_size);
  }
  Eigen::VectorBlock<const Eigen::VectorXd> block(int k) const {
    return data.segment(static_cast<Eigen::Index>(k) * block_size, block_size);
  }

  double norm() const { return data.norm(); }

  // Realization sum_k coeff_k * psi_k(xi) for given basis values.
  Eigen::VectorXd at(const Eigen::VectorXd& psi_values) const;
};

// Coefficient matrices K_l together with the triple-product coupling. Acts
// as the block operator with blocks (k,m) = sum_l c_lkm K_l; the square
// matrix is never formed.
struct SgSystem {
  std::vector<SpMat> terms;  // K_l, l = 0..n_K-1
  const TripleProductTensor* tensor = nullptr;
  int n_x = 0;
  int n_xi = 0;

  GpcVector apply(const GpcVector& v) const;
};

GpcVector apply_block_operator(const SgSystem& sys, const GpcVector& v);

}  // namespace sgfem
