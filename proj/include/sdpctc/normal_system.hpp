#pragma once

#include <string>
#include <vector>

#include "sdpctc/block_cholesky.hpp"
#include "sdpctc/converter.hpp"

namespace sdpctc {

/// Solves (M D^{-1} M^T) v = r for the current scaling D = hess F(w).
class NormalSolver {
 public:
  virtual ~NormalSolver() = default;
  virtual void factor(const ConicProgram& prog, const Scaling& w) = 0;
  virtual Mat solve(const Mat& rhs) const = 0;
  /// Bytes held by the normal matrix and its factor.
  virtual std::size_t bytes() const = 0;
  /// One-line JSON with block statistics of the last factorization.
  virtual std::string diagnostics() const { return "{}"; }
};

/// Dense normal matrix, factored by Cholesky.
class DenseNormalSolver : public NormalSolver {
 public:
  void factor(const ConicProgram& prog, const Scaling& w) override;
  Mat solve(const Mat& rhs) const override;
  std::size_t bytes() const override;
  const Mat& matrix() const { return k_; }

 private:
  Mat k_;
  Eigen::LLT<Mat> llt_;
};

/// Normal matrix of the dualized program: H + q q^T with H block-tree structured.
class TreeNormalSolver : public NormalSolver {
 public:
  explicit TreeNormalSolver(const CtcProblem& ctc, int refinement_passes = 1);

  void factor(const ConicProgram& prog, const Scaling& w) override;
  Mat solve(const Mat& rhs) const override;
  std::size_t bytes() const override;
  std::string diagnostics() const override;

  const BlockTreeMatrix& H() const { return h_; }
  const Vec& q() const { return q_; }

 private:
  Vec solve_one(const Vec& r) const;
  Vec apply(const Vec& x) const;

  const CtcProblem& ctc_;
  int passes_;
  BlockTreeMatrix h_;
  Vec q_;
  BlockCholesky chol_;
  Vec hinv_q_;
  double denom_ = 1.0;
};

/// Assembles H = diag(D_j^{-1}) + sigma G^T G for block-diagonal conic scaling
/// terms and rows touching a bag or a tree-adjacent pair of bags.
BlockTreeMatrix assemble_H(const CtcProblem& ctc, const std::vector<Mat>& block_terms, double sigma);

/// Solves (H + q q^T) x = r with a factored H, by Sherman-Morrison.
Vec solve_with_rank1(const BlockCholesky& chol, const Vec& q, const Vec& r);

}  // namespace sdpctc
