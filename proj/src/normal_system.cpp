#include "sdpctc/normal_system.hpp"

#include <cmath>
#include <sstream>

namespace sdpctc {

void DenseNormalSolver::factor(const ConicProgram& prog, const Scaling& w) {
  const auto& cone = prog.cone;
  const int m = static_cast<int>(prog.M.rows());
  Mat y = Mat::Zero(cone.dim(), m);
  for (int i = 0; i < m; ++i) {
    const Vec row = prog.M.row(i).transpose();
    for (int k = 0; k < static_cast<int>(cone.segments().size()); ++k) {
      const auto& seg = cone.segments()[k];
      const Vec part = row.segment(seg.offset, seg.dim());
      if (part.isZero(0.0)) continue;
      y.col(i).segment(seg.offset, seg.dim()) = cone.apply_hess_inv_segment(w, k, part);
    }
  }
  k_ = prog.M * y;
  k_ = 0.5 * (k_ + k_.transpose()).eval();
  Mat reg = k_;
  const double maxd = m > 0 ? k_.diagonal().maxCoeff() : 0.0;
  reg.diagonal().array() += 1e-12 * (1.0 + maxd);
  llt_.compute(reg);
  if (llt_.info() != Eigen::Success) throw Error(ErrorCode::SingularNormalMatrix, "dense normal matrix is not positive definite");
}

Mat DenseNormalSolver::solve(const Mat& rhs) const {
  Mat x = llt_.solve(rhs);
  x += llt_.solve(rhs - k_ * x);
  return x;
}

std::size_t DenseNormalSolver::bytes() const { return 2 * static_cast<std::size_t>(k_.size()) * sizeof(double); }

TreeNormalSolver::TreeNormalSolver(const CtcProblem& ctc, int refinement_passes) : ctc_(ctc), passes_(refinement_passes) {}

BlockTreeMatrix assemble_H(const CtcProblem& ctc, const std::vector<Mat>& block_terms, double sigma) {
  const int nb = static_cast<int>(ctc.blocks.size());
  std::vector<int> sizes(static_cast<std::size_t>(nb));
  for (int j = 0; j < nb; ++j) sizes[j] = ctc.blocks[j].size();
  BlockTreeMatrix h(sizes, ctc.td.parent);
  for (int j = 0; j < nb; ++j) {
    if (block_terms[j].rows() != sizes[j]) throw Error(ErrorCode::DimensionMismatch, "block term size");
    h.diag[j] = block_terms[j];
  }
  struct Local {
    int block, idx;
    double v;
  };
  std::vector<Local> loc;
  for (int r = 0; r < ctc.num_rows(); ++r) {
    loc.clear();
    int b0 = -1, b1 = -1;
    for (const auto& e : ctc.rows[r].entries) {
      const int col = ctc.column(e);
      loc.push_back({e.block, col - ctc.blocks[e.block].offset, e.value});
      if (b0 < 0 || b0 == e.block)
        b0 = e.block;
      else if (b1 < 0 || b1 == e.block)
        b1 = e.block;
      else
        throw Error(ErrorCode::StructureViolation, "row " + std::to_string(r) + " touches more than two bags");
    }
    if (b1 >= 0 && ctc.td.parent[b0] != b1 && ctc.td.parent[b1] != b0)
      throw Error(ErrorCode::StructureViolation, "row " + std::to_string(r) + " couples bags that are not tree neighbours");
    const int child = b1 < 0 ? -1 : (ctc.td.parent[b0] == b1 ? b0 : b1);
    for (const auto& a : loc)
      for (const auto& b : loc) {
        const double v = sigma * a.v * b.v;
        if (a.block == b.block)
          h.diag[a.block](a.idx, b.idx) += v;
        else if (b.block == child)
          h.off[child](a.idx, b.idx) += v;
      }
  }
  return h;
}

Vec solve_with_rank1(const BlockCholesky& chol, const Vec& q, const Vec& r) {
  const Vec hq = chol.solve(q);
  const double denom = 1.0 + q.dot(hq);
  if (!(denom > 1e-14)) throw Error(ErrorCode::DenominatorUnderflow, "1 + q^T H^{-1} q is not positive");
  const Vec z = chol.solve(r);
  return z - hq * (q.dot(z) / denom);
}

void TreeNormalSolver::factor(const ConicProgram& prog, const Scaling& w) {
  const auto& cone = prog.cone;
  const auto& segs = cone.segments();
  const double cw = cone.soc_weight();
  const auto& w0 = w[0];
  const int f = ctc_.num_rows();
  const Vec w1 = w0.w.tail(f) / std::sqrt(cw);
  const double sigma = w0.det / (2.0 * cw);
  q_ = ctc_.G.transpose() * w1;

  std::vector<Mat> terms(ctc_.blocks.size());
  int seg = 1;
  for (std::size_t j = 0; j < ctc_.blocks.size(); ++j) {
    const auto& b = ctc_.blocks[j];
    terms[j] = Mat::Zero(b.size(), b.size());
    if (b.order > 0) {
      if (segs[seg].kind != ConeKind::Psd) throw Error(ErrorCode::StructureViolation, "cone layout");
      terms[j].topLeftCorner(b.psd_dim(), b.psd_dim()) = sym_kron_self(w[seg].W);
      ++seg;
    }
    if (b.slack > 0) {
      const int o = b.psd_dim() + b.aux;
      terms[j].diagonal().segment(o, b.slack) = w[seg].w.array().square().matrix();
      ++seg;
    }
  }
  h_ = assemble_H(ctc_, terms, sigma);
  double maxd = 0.0;
  for (const auto& d : h_.diag)
    if (d.size() > 0) maxd = std::max(maxd, d.diagonal().maxCoeff());
  chol_.factor(h_, 1e-12 * (1.0 + maxd));
  hinv_q_ = chol_.solve(q_);
  denom_ = 1.0 + q_.dot(hinv_q_);
  if (!(denom_ > 1e-14)) throw Error(ErrorCode::DenominatorUnderflow, "1 + q^T H^{-1} q is not positive");
}

Vec TreeNormalSolver::apply(const Vec& x) const { return h_.multiply(x) + q_ * q_.dot(x); }

Vec TreeNormalSolver::solve_one(const Vec& r) const {
  auto smw = [&](const Vec& rhs) {
    const Vec z = chol_.solve(rhs);
    return Vec(z - hinv_q_ * (q_.dot(z) / denom_));
  };
  Vec x = smw(r);
  for (int k = 0; k < passes_; ++k) x += smw(r - apply(x));
  return x;
}

Mat TreeNormalSolver::solve(const Mat& rhs) const {
  Mat out(rhs.rows(), rhs.cols());
  for (int k = 0; k < rhs.cols(); ++k) out.col(k) = solve_one(rhs.col(k));
  return out;
}

std::size_t TreeNormalSolver::bytes() const {
  return h_.bytes() + chol_.stats().bytes + 2 * static_cast<std::size_t>(q_.size()) * sizeof(double);
}

std::string TreeNormalSolver::diagnostics() const {
  const auto& s = chol_.stats();
  std::ostringstream os;
  os << "{\"blocks\":" << s.blocks << ",\"offdiag_blocks\":" << s.offdiag_blocks << ",\"fill_blocks\":" << s.fill_blocks
     << ",\"flops\":" << s.flops << ",\"bytes\":" << bytes() << "}";
  return os.str();
}

}  // namespace sdpctc
