#include "sdpctc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sdpctc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonTriangularLength: return "NonTriangularLength";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::UncoverableEntry: return "UncoverableEntry";
    case ErrorCode::InvalidSplit: return "InvalidSplit";
    case ErrorCode::DisconnectedSupport: return "DisconnectedSupport";
    case ErrorCode::NotNetworkFlow: return "NotNetworkFlow";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::SingularNormalMatrix: return "SingularNormalMatrix";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::NumericalStall: return "NumericalStall";
    case ErrorCode::InfeasibleOrUnbounded: return "InfeasibleOrUnbounded";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::IndefinitePivot: return "IndefinitePivot";
    case ErrorCode::DenominatorUnderflow: return "DenominatorUnderflow";
    case ErrorCode::BlockNotPsd: return "BlockNotPsd";
    case ErrorCode::OverlapMismatch: return "OverlapMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedBlockStructure: return "UnsupportedBlockStructure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

DenseSym DenseSym::from_matrix(const Mat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  DenseSym out(static_cast<int>(m.rows()));
  for (int r = 0; r < out.order(); ++r)
    for (int c = 0; c <= r; ++c) out.at(r, c) = 0.5 * (m(r, c) + m(c, r));
  return out;
}

Mat DenseSym::to_matrix() const {
  Mat m(order_, order_);
  for (int r = 0; r < order_; ++r)
    for (int c = 0; c <= r; ++c) m(r, c) = m(c, r) = (*this)(r, c);
  return m;
}

void SparseSymmetric::add(int r, int c, double v) {
  if (r < 0 || c < 0 || r >= order_ || c >= order_)
    throw Error(ErrorCode::DimensionMismatch, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                                  ") outside order " + std::to_string(order_));
  if (r < c) std::swap(r, c);
  entries_.push_back({r, c, v});
}

void SparseSymmetric::coalesce() {
  std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  std::vector<Triplet> merged;
  merged.reserve(entries_.size());
  for (const auto& t : entries_) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col)
      merged.back().value += t.value;
    else
      merged.push_back(t);
  }
  entries_.swap(merged);
}

double SparseSymmetric::dot(const Mat& x) const {
  double s = 0.0;
  for (const auto& t : entries_) s += (t.row == t.col ? 1.0 : 2.0) * t.value * x(t.row, t.col);
  return s;
}

Mat SparseSymmetric::to_dense() const {
  Mat m = Mat::Zero(order_, order_);
  for (const auto& t : entries_) {
    m(t.row, t.col) += t.value;
    if (t.row != t.col) m(t.col, t.row) += t.value;
  }
  return m;
}

double SparseSymmetric::frobenius_norm() const {
  double s = 0.0;
  for (const auto& t : entries_) s += (t.row == t.col ? 1.0 : 2.0) * t.value * t.value;
  return std::sqrt(s);
}

Vec svec(const DenseSym& x) {
  const int k = x.order();
  Vec v(svec_dim(k));
  int p = 0;
  for (int c = 0; c < k; ++c)
    for (int r = c; r < k; ++r) v(p++) = (r == c ? 1.0 : M_SQRT2) * x(r, c);
  return v;
}

Vec svec(const Mat& x) {
  if (x.rows() != x.cols()) throw Error(ErrorCode::DimensionMismatch, "svec of non-square matrix");
  const int k = static_cast<int>(x.rows());
  Vec v(svec_dim(k));
  int p = 0;
  for (int c = 0; c < k; ++c)
    for (int r = c; r < k; ++r) v(p++) = r == c ? x(r, c) : M_SQRT2 * 0.5 * (x(r, c) + x(c, r));
  return v;
}

static int order_from_length(Eigen::Index len) {
  const int k = static_cast<int>(std::lround((std::sqrt(8.0 * static_cast<double>(len) + 1.0) - 1.0) / 2.0));
  if (svec_dim(k) != len)
    throw Error(ErrorCode::NonTriangularLength, "length " + std::to_string(len) + " is not triangular");
  return k;
}

DenseSym smat(const Vec& v) {
  const int k = order_from_length(v.size());
  DenseSym x(k);
  int p = 0;
  for (int c = 0; c < k; ++c)
    for (int r = c; r < k; ++r) x.at(r, c) = (r == c ? 1.0 : M_SQRT1_2) * v(p++);
  return x;
}

Mat smat_dense(const Vec& v) {
  const int k = order_from_length(v.size());
  Mat x(k, k);
  int p = 0;
  for (int c = 0; c < k; ++c)
    for (int r = c; r < k; ++r) {
      const double e = (r == c ? 1.0 : M_SQRT1_2) * v(p++);
      x(r, c) = x(c, r) = e;
    }
  return x;
}

Vec sym_kron_apply(const Mat& a, const Mat& b, const Vec& v) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "factors must be square and of equal order");
  if (v.size() != svec_dim(static_cast<int>(a.rows())))
    throw Error(ErrorCode::DimensionMismatch, "vector length does not match factor order");
  const Mat x = smat_dense(v);
  const Mat t = a * x * b.transpose();
  return svec(Mat(0.5 * (t + t.transpose())));
}

Mat sym_kron_self(const Mat& w) {
  const int k = static_cast<int>(w.rows());
  const int d = svec_dim(k);
  Mat out(d, d);
  int col = 0;
  for (int c = 0; c < k; ++c)
    for (int r = c; r < k; ++r, ++col) {
      const double t = r == c ? 0.5 : M_SQRT1_2;
      int row = 0;
      for (int bcol = 0; bcol < k; ++bcol)
        for (int a = bcol; a < k; ++a, ++row) {
          const double s = a == bcol ? 1.0 : M_SQRT2;
          out(row, col) = s * t * (w(a, r) * w(bcol, c) + w(a, c) * w(bcol, r));
        }
    }
  return out;
}

Mat DenseFactor::reconstruct() const {
  if (kind == Kind::Cholesky) return lower * lower.transpose();
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
}

bool all_finite(const Mat& m) { return m.allFinite(); }

DenseFactor dense_factor(const Mat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  if (!m.allFinite()) throw Error(ErrorCode::NotFinite, "matrix has non-finite entries");
  const int n = static_cast<int>(m.rows());
  const double floor = 1e-12 * std::max(1.0, n > 0 ? m.diagonal().maxCoeff() : 0.0);
  DenseFactor f;
  Mat l = Mat::Zero(n, n);
  bool ok = true;
  for (int j = 0; j < n && ok; ++j) {
    double d = m(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > floor)) {
      ok = false;
      break;
    }
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) l(i, j) = (m(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
  }
  if (ok) {
    f.kind = DenseFactor::Kind::Cholesky;
    f.lower = std::move(l);
    return f;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.transpose()));
  f.kind = DenseFactor::Kind::Eigen;
  f.eigenvalues = es.eigenvalues();
  f.eigenvectors = es.eigenvectors();
  return f;
}

Mat sym_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Vec d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

Mat sym_inv_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Vec d = es.eigenvalues().cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

double sym_min_eig(const Mat& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace sdpctc
