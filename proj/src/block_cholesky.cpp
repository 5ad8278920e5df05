#include "sdpctc/block_cholesky.hpp"

#include <string>

namespace sdpctc {

BlockTreeMatrix::BlockTreeMatrix(std::vector<int> s, std::vector<int> p) : sizes(std::move(s)), parent(std::move(p)) {
  if (sizes.size() != parent.size()) throw Error(ErrorCode::DimensionMismatch, "sizes and parents differ in length");
  diag.resize(sizes.size());
  off.resize(sizes.size());
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    diag[j] = Mat::Zero(sizes[j], sizes[j]);
    const int pj = parent[j];
    off[j] = pj == static_cast<int>(j) ? Mat() : Mat::Zero(sizes[pj], sizes[j]);
  }
}

std::vector<int> BlockTreeMatrix::offsets() const {
  std::vector<int> o(sizes.size() + 1, 0);
  for (std::size_t j = 0; j < sizes.size(); ++j) o[j + 1] = o[j] + sizes[j];
  return o;
}

int BlockTreeMatrix::dim() const { return offsets().back(); }

Vec BlockTreeMatrix::multiply(const Vec& x) const {
  const auto o = offsets();
  Vec y = Vec::Zero(x.size());
  for (int j = 0; j < num_blocks(); ++j) {
    y.segment(o[j], sizes[j]).noalias() += diag[j] * x.segment(o[j], sizes[j]);
    const int p = parent[j];
    if (p == j) continue;
    y.segment(o[p], sizes[p]).noalias() += off[j] * x.segment(o[j], sizes[j]);
    y.segment(o[j], sizes[j]).noalias() += off[j].transpose() * x.segment(o[p], sizes[p]);
  }
  return y;
}

Mat BlockTreeMatrix::to_dense() const {
  const auto o = offsets();
  Mat m = Mat::Zero(o.back(), o.back());
  for (int j = 0; j < num_blocks(); ++j) {
    m.block(o[j], o[j], sizes[j], sizes[j]) = diag[j];
    const int p = parent[j];
    if (p == j) continue;
    m.block(o[p], o[j], sizes[p], sizes[j]) = off[j];
    m.block(o[j], o[p], sizes[j], sizes[p]) = off[j].transpose();
  }
  return m;
}

std::size_t BlockTreeMatrix::bytes() const {
  std::size_t n = 0;
  for (const auto& d : diag) n += static_cast<std::size_t>(d.size());
  for (const auto& d : off) n += static_cast<std::size_t>(d.size());
  return n * sizeof(double);
}

std::vector<int> topological_permutation(const std::vector<int>& parent) {
  const int n = static_cast<int>(parent.size());
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(n));
  std::vector<int> roots;
  for (int j = 0; j < n; ++j) {
    if (parent[j] == j)
      roots.push_back(j);
    else
      kids[parent[j]].push_back(j);
  }
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int r : roots) {
    std::vector<std::pair<int, std::size_t>> stack{{r, 0}};
    while (!stack.empty()) {
      const int v = stack.back().first;
      if (stack.back().second < kids[v].size()) {
        const int c = kids[v][stack.back().second++];
        stack.push_back({c, 0});
      } else {
        out.push_back(v);
        stack.pop_back();
      }
    }
  }
  return out;
}

void BlockCholesky::factor(const BlockTreeMatrix& h, double reg) {
  sizes_ = h.sizes;
  parent_ = h.parent;
  order_ = topological_permutation(parent_);
  const int n = h.num_blocks();
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 0; k < n; ++k) offsets_[k + 1] = offsets_[k] + sizes_[order_[k]];
  ldiag_ = h.diag;
  loff_.assign(static_cast<std::size_t>(n), Mat());
  stats_ = FactorStats{};
  stats_.blocks = n;
  for (int j : order_) {
    Mat& d = ldiag_[j];
    if (reg != 0.0) d.diagonal().array() += reg;
    Eigen::LLT<Mat> llt(d);
    if (llt.info() != Eigen::Success)
      throw Error(ErrorCode::IndefinitePivot, "diagonal block " + std::to_string(j) + " is not positive definite");
    d = llt.matrixL();
    const double bj = sizes_[j];
    stats_.flops += bj * bj * bj / 3.0;
    const int p = parent_[j];
    if (p == j) continue;
    ++stats_.offdiag_blocks;
    // L_pj = H_pj L_jj^{-T}
    loff_[j] = d.triangularView<Eigen::Lower>().solve(h.off[j].transpose()).transpose();
    ldiag_[p].noalias() -= loff_[j] * loff_[j].transpose();
    const double bp = sizes_[p];
    stats_.flops += bj * bj * bp + bj * bp * bp;
  }
  std::size_t words = 0;
  for (const auto& m : ldiag_) words += static_cast<std::size_t>(m.size());
  for (const auto& m : loff_) words += static_cast<std::size_t>(m.size());
  stats_.bytes = words * sizeof(double);
}

Vec BlockCholesky::solve(const Vec& rhs) const {
  const int n = static_cast<int>(sizes_.size());
  std::vector<int> off(static_cast<std::size_t>(n));
  {
    int acc = 0;
    for (int j = 0; j < n; ++j) {
      off[j] = acc;
      acc += sizes_[j];
    }
    if (acc != rhs.size()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  }
  Vec z = rhs;
  for (int j : order_) {
    auto zj = z.segment(off[j], sizes_[j]);
    ldiag_[j].triangularView<Eigen::Lower>().solveInPlace(zj);
    const int p = parent_[j];
    if (p != j) z.segment(off[p], sizes_[p]).noalias() -= loff_[j] * zj;
  }
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    const int j = *it;
    auto zj = z.segment(off[j], sizes_[j]);
    const int p = parent_[j];
    if (p != j) zj.noalias() -= loff_[j].transpose() * z.segment(off[p], sizes_[p]);
    ldiag_[j].transpose().triangularView<Eigen::Upper>().solveInPlace(zj);
  }
  return z;
}

Mat BlockCholesky::dense_factor_permuted() const {
  const int n = static_cast<int>(sizes_.size());
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pos[order_[k]] = k;
  Mat l = Mat::Zero(offsets_.back(), offsets_.back());
  for (int j = 0; j < n; ++j) {
    const int oj = offsets_[pos[j]];
    l.block(oj, oj, sizes_[j], sizes_[j]) = ldiag_[j];
    const int p = parent_[j];
    if (p != j) l.block(offsets_[pos[p]], oj, sizes_[p], sizes_[j]) = loff_[j];
  }
  return l;
}

}  // namespace sdpctc
