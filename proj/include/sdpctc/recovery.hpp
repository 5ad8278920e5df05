#pragma once

#include <vector>

#include "sdpctc/chordal.hpp"
#include "sdpctc/problem.hpp"

namespace sdpctc {

/// Factor U (n x omega) with (U U^T)[J_j, J_j] = X_j for every bag, built by a
/// parents-first traversal that aligns each bag's factor with the rows fixed
/// on its separator.
Mat complete_low_rank(const TreeDecomposition& td, const std::vector<Mat>& blocks);

/// Numerical rank of U (singular values above 1e-8 of the largest).
int numerical_rank(const Mat& U);

struct DimacsMetrics {
  double pinf = 0.0;
  double dinf = 0.0;
  double gap = 0.0;
  double L = 0.0;
};

/// Accuracy digits of (X = U U^T, y); each figure is capped at 16.
DimacsMetrics dimacs_metrics(const SdpProblem& sdp, const Mat& U, const Vec& y);

/// S = C - sum_i y_i A_i.
SparseSymmetric dual_slack(const SdpProblem& sdp, const Vec& y);
/// Smallest eigenvalue of a sparse symmetric matrix.
double lambda_min(const SparseSymmetric& s);
/// Spectral norm of a sparse symmetric matrix.
double spectral_norm(const SparseSymmetric& s);
/// A . (U U^T) without forming U U^T.
double inner_lowrank(const SparseSymmetric& a, const Mat& U);

}  // namespace sdpctc
