#include "sdpctc/recovery.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <string>

#include "sdpctc/converter.hpp"

namespace sdpctc {

Mat complete_low_rank(const TreeDecomposition& td, const std::vector<Mat>& blocks) {
  if (static_cast<int>(blocks.size()) != td.ell()) throw Error(ErrorCode::DimensionMismatch, "one block per bag");
  const int omega = td.omega();
  Mat U = Mat::Zero(td.n, omega);
  std::vector<char> fixed(static_cast<std::size_t>(td.n), 0);
  auto order = postorder(td);
  std::reverse(order.begin(), order.end());
  for (int j : order) {
    const auto& bag = td.bags[j];
    const int k = static_cast<int>(bag.size());
    const Mat& X = blocks[j];
    if (X.rows() != k || X.cols() != k) throw Error(ErrorCode::DimensionMismatch, "block " + std::to_string(j) + " order");
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (X + X.transpose()));
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (k > 0 && es.eigenvalues()(0) < -1e-8 * scale)
      throw Error(ErrorCode::BlockNotPsd, "block " + std::to_string(j) + " has eigenvalue " +
                                              std::to_string(es.eigenvalues()(0)));
    Mat V = Mat::Zero(k, omega);
    V.leftCols(k) = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    std::vector<int> sep, fresh;
    for (int a = 0; a < k; ++a) (fixed[bag[a]] ? sep : fresh).push_back(a);
    Mat R = Mat::Identity(omega, omega);
    if (!sep.empty()) {
      Mat vb(sep.size(), omega), fb(sep.size(), omega);
      for (std::size_t a = 0; a < sep.size(); ++a) {
        vb.row(a) = V.row(sep[a]);
        fb.row(a) = U.row(bag[sep[a]]);
      }
      const Mat diff = vb * vb.transpose() - fb * fb.transpose();
      if (diff.cwiseAbs().maxCoeff() > 1e-6 * scale)
        throw Error(ErrorCode::OverlapMismatch, "bag " + std::to_string(j) + " disagrees with its parent by " +
                                                    std::to_string(diff.cwiseAbs().maxCoeff()));
      Eigen::JacobiSVD<Mat> svd(vb.transpose() * fb, Eigen::ComputeFullU | Eigen::ComputeFullV);
      R = svd.matrixU() * svd.matrixV().transpose();
    }
    for (int a : fresh) {
      U.row(bag[a]) = V.row(a) * R;
      fixed[bag[a]] = 1;
    }
  }
  return U;
}

int numerical_rank(const Mat& U) {
  if (U.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(U);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (int k = 0; k < sv.size(); ++k) r += sv(k) > 1e-8 * sv(0);
  return r;
}

double inner_lowrank(const SparseSymmetric& a, const Mat& U) {
  double s = 0.0;
  for (const auto& t : a.entries()) s += (t.row == t.col ? 1.0 : 2.0) * t.value * U.row(t.row).dot(U.row(t.col));
  return s;
}

SparseSymmetric dual_slack(const SdpProblem& sdp, const Vec& y) {
  SparseSymmetric s(sdp.n);
  for (const auto& t : sdp.C.entries()) s.add(t.row, t.col, t.value);
  for (int i = 0; i < sdp.m(); ++i)
    for (const auto& t : sdp.A[i].entries()) s.add(t.row, t.col, -y(i) * t.value);
  s.coalesce();
  return s;
}

namespace {

using SpCol = Eigen::SparseMatrix<double>;

SpCol to_eigen(const SparseSymmetric& s, double shift) {
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& t : s.entries()) {
    trips.emplace_back(t.row, t.col, t.value);
    if (t.row != t.col) trips.emplace_back(t.col, t.row, t.value);
  }
  for (int i = 0; i < s.order(); ++i) trips.emplace_back(i, i, -shift);
  SpCol m(s.order(), s.order());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

bool positive_definite(const SparseSymmetric& s, double shift) {
  Eigen::SimplicialLLT<SpCol> llt(to_eigen(s, shift));
  return llt.info() == Eigen::Success;
}

constexpr int kDenseLimit = 400;

}  // namespace

double lambda_min(const SparseSymmetric& s) {
  const int n = s.order();
  if (n == 0) return 0.0;
  if (n <= kDenseLimit) return sym_min_eig(s.to_dense());
  // bisection on the sign of the smallest eigenvalue of S - t I
  double bound = 0.0;
  std::vector<double> rows(static_cast<std::size_t>(n), 0.0);
  for (const auto& t : s.entries()) {
    rows[t.row] += std::abs(t.value);
    if (t.row != t.col) rows[t.col] += std::abs(t.value);
  }
  for (double r : rows) bound = std::max(bound, r);
  if (bound == 0.0) return 0.0;
  if (positive_definite(s, 0.0)) {
    double l = 0.0, h = bound * 1.01;
    for (int it = 0; it < 100 && h - l > 1e-12 * bound; ++it) {
      const double mid = 0.5 * (l + h);
      (positive_definite(s, mid) ? l : h) = mid;
    }
    return l;
  }
  // lambda_min <= 0: geometric bisection on its magnitude
  double lo = 1e-16 * bound, hi = bound * 1.01;
  if (positive_definite(s, -lo)) return -lo;
  for (int it = 0; it < 120 && hi > lo * (1.0 + 1e-12); ++it) {
    const double mid = std::sqrt(lo * hi);
    (positive_definite(s, -mid) ? hi : lo) = mid;
  }
  return -hi;
}

double spectral_norm(const SparseSymmetric& s) {
  const int n = s.order();
  if (n == 0) return 0.0;
  if (n <= kDenseLimit) {
    Eigen::SelfAdjointEigenSolver<Mat> es(s.to_dense(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  SparseSymmetric neg(n);
  for (const auto& t : s.entries()) neg.add(t.row, t.col, -t.value);
  return std::max(std::abs(lambda_min(s)), std::abs(lambda_min(neg)));
}

DimacsMetrics dimacs_metrics(const SdpProblem& sdp, const Mat& U, const Vec& y) {
  auto digits = [](double num, double den) {
    if (!(num > 0.0)) return 16.0;
    return std::min(16.0, -std::log10(num / den));
  };
  Vec r(sdp.m());
  double bnorm = 0.0, by = 0.0, sign_violation = 0.0;
  for (int i = 0; i < sdp.m(); ++i) {
    double ri = inner_lowrank(sdp.A[i], U) - sdp.b[i];
    if (sdp.sense[i] == Sense::Ge) {
      ri = std::min(ri, 0.0);
      sign_violation = std::max(sign_violation, -y(i));
    } else if (sdp.sense[i] == Sense::Le) {
      ri = std::max(ri, 0.0);
      sign_violation = std::max(sign_violation, y(i));
    }
    r(i) = ri;
    bnorm += sdp.b[i] * sdp.b[i];
    by += sdp.b[i] * y(i);
  }
  bnorm = std::sqrt(bnorm);
  DimacsMetrics m;
  m.pinf = digits(r.norm(), 1.0 + bnorm);
  const double lmax = -lambda_min(dual_slack(sdp, y));
  m.dinf = digits(std::max(lmax, sign_violation), 1.0 + spectral_norm(sdp.C));
  const double cx = inner_lowrank(sdp.C, U);
  m.gap = digits(cx - by, 1.0 + std::abs(cx) + std::abs(by));
  m.L = std::min({m.pinf, m.dinf, m.gap});
  return m;
}

}  // namespace sdpctc
