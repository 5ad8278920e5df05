#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "sdpctc/error.hpp"

namespace sdpctc {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Number of svec entries for an order-k symmetric matrix.
inline int svec_dim(int k) { return k * (k + 1) / 2; }

/// Position of (r, c), r >= c, in the column-wise lower-triangle svec ordering.
inline int svec_index(int k, int r, int c) {
  if (r < c) std::swap(r, c);
  return c * k - c * (c - 1) / 2 + (r - c);
}

/// Symmetric matrix stored as a packed row-major lower triangle.
class DenseSym {
 public:
  DenseSym() = default;
  explicit DenseSym(int order) : order_(order), data_(static_cast<std::size_t>(svec_dim(order)), 0.0) {}

  static DenseSym from_matrix(const Mat& m);
  Mat to_matrix() const;

  int order() const { return order_; }
  double operator()(int r, int c) const { return data_[pos(r, c)]; }
  double& at(int r, int c) { return data_[pos(r, c)]; }
  const std::vector<double>& packed() const { return data_; }

 private:
  std::size_t pos(int r, int c) const {
    if (r < c) std::swap(r, c);
    return static_cast<std::size_t>(r) * (r + 1) / 2 + c;
  }

  int order_ = 0;
  std::vector<double> data_;
};

struct Triplet {
  int row;
  int col;
  double value;
};

/// Sparse symmetric matrix holding lower-triangle triplets (row >= col).
/// Explicitly stored zeros are kept and count as structure.
class SparseSymmetric {
 public:
  SparseSymmetric() = default;
  explicit SparseSymmetric(int order) : order_(order) {}

  int order() const { return order_; }
  void set_order(int n) { order_ = n; }

  /// Adds v to entry (r, c); the symmetric partner is implied.
  void add(int r, int c, double v);
  /// Merges duplicate positions and sorts by (col, row).
  void coalesce();

  const std::vector<Triplet>& entries() const { return entries_; }
  std::size_t nnz() const { return entries_.size(); }

  /// Inner product with a symmetric matrix given densely.
  double dot(const Mat& x) const;
  Mat to_dense() const;
  double frobenius_norm() const;

 private:
  int order_ = 0;
  std::vector<Triplet> entries_;
};

Vec svec(const DenseSym& x);
Vec svec(const Mat& x);
DenseSym smat(const Vec& v);
Mat smat_dense(const Vec& v);

/// Computes (A (x)_s B) v = 1/2 svec(A V B^T + B V A^T) with V = smat(v).
Vec sym_kron_apply(const Mat& a, const Mat& b, const Vec& v);
/// Materializes W (x)_s W as a dense svec_dim x svec_dim matrix.
Mat sym_kron_self(const Mat& w);

struct DenseFactor {
  enum class Kind { Cholesky, Eigen };
  Kind kind = Kind::Cholesky;
  Mat lower;        // Cholesky factor
  Vec eigenvalues;  // eigen fallback: m = V diag(lambda) V^T
  Mat eigenvectors;

  Mat reconstruct() const;
};

/// Cholesky when every pivot clears 1e-12 * max(1, max diag), otherwise an
/// eigendecomposition.
DenseFactor dense_factor(const Mat& m);

/// Eigendecomposition helpers for symmetric matrices.
Mat sym_sqrt(const Mat& m);
Mat sym_inv_sqrt(const Mat& m);
double sym_min_eig(const Mat& m);

bool all_finite(const Mat& m);

}  // namespace sdpctc
