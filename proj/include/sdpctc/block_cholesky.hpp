#pragma once

#include <cstddef>
#include <vector>

#include "sdpctc/linalg.hpp"

namespace sdpctc {

/// Symmetric matrix whose block pattern is a tree: diagonal blocks plus one
/// off-diagonal block per tree edge (p(j), j).
struct BlockTreeMatrix {
  std::vector<int> sizes;
  std::vector<int> parent;  // parent[root] == root
  std::vector<Mat> diag;
  std::vector<Mat> off;     // off[j] is the (p(j), j) block, sizes[p] x sizes[j]

  BlockTreeMatrix() = default;
  BlockTreeMatrix(std::vector<int> sizes, std::vector<int> parent);

  int num_blocks() const { return static_cast<int>(sizes.size()); }
  std::vector<int> offsets() const;
  int dim() const;
  Vec multiply(const Vec& x) const;
  Mat to_dense() const;
  std::size_t bytes() const;
};

/// Children-before-parents order of the block tree (DFS postorder, smallest child first).
std::vector<int> topological_permutation(const std::vector<int>& parent);

struct FactorStats {
  int blocks = 0;
  int offdiag_blocks = 0;
  int fill_blocks = 0;
  double flops = 0.0;
  std::size_t bytes = 0;
};

/// Block Cholesky along a topological order; the factor keeps the pattern of H.
class BlockCholesky {
 public:
  /// Factors H + reg * I.
  void factor(const BlockTreeMatrix& h, double reg = 0.0);
  Vec solve(const Vec& rhs) const;
  const FactorStats& stats() const { return stats_; }
  const std::vector<int>& order() const { return order_; }
  /// Lower-triangular factor of P H P^T in the topological order, for checks.
  Mat dense_factor_permuted() const;

 private:
  std::vector<int> sizes_;
  std::vector<int> parent_;
  std::vector<int> order_;
  std::vector<int> offsets_;
  std::vector<Mat> ldiag_;
  std::vector<Mat> loff_;  // (p(j), j) block of L
  FactorStats stats_;
};

}  // namespace sdpctc
