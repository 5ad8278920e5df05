#include "sdpctc/cones.hpp"

#include <cmath>
#include <limits>

namespace sdpctc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec soc_reflect(const Vec& x) {
  Vec y = -x;
  y(0) = x(0);
  return y;
}

// P(w) v = 2 w (w^T v) - det(w) J v
Vec soc_quad(const Vec& w, double det, const Vec& v) { return 2.0 * w.dot(v) * w - det * soc_reflect(v); }

double soc_max_step(const Vec& x, const Vec& dx) {
  const double a = soc_det(dx);
  const double b = 2.0 * (x(0) * dx(0) - x.tail(x.size() - 1).dot(dx.tail(dx.size() - 1)));
  const double c = soc_det(x);
  double best = kInf;
  auto consider = [&](double t) {
    if (t > 0.0 && x(0) + t * dx(0) >= 0.0) best = std::min(best, t);
  };
  if (std::abs(a) <= 1e-300) {
    if (b < 0.0) consider(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      if (q != 0.0) {
        consider(q / a);
        consider(c / q);
      }
    }
  }
  if (dx(0) < 0.0) best = std::min(best, -x(0) / dx(0));
  return best;
}

}  // namespace

double soc_det(const Vec& x) {
  const double r = x.tail(x.size() - 1).norm();
  return (x(0) - r) * (x(0) + r);
}

Vec soc_nt_point(const Vec& x, const Vec& s) {
  const double a = std::sqrt(soc_det(x));
  const double b = std::sqrt(soc_det(s));
  const Vec xb = x / a;
  const Vec sb = s / b;
  const double gamma = std::sqrt(0.5 * (1.0 + xb.dot(sb)));
  return std::sqrt(a / b) * (xb + soc_reflect(sb)) / (2.0 * gamma);
}

Mat psd_nt_point(const Mat& X, const Mat& S) {
  Eigen::LLT<Mat> lx(X), ls(S);
  if (lx.info() != Eigen::Success || ls.info() != Eigen::Success)
    throw Error(ErrorCode::NotInterior, "PSD block is not positive definite");
  const Mat lxm = lx.matrixL();
  const Mat lsm = ls.matrixL();
  Eigen::JacobiSVD<Mat> svd(lsm.transpose() * lxm, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec isq = svd.singularValues().cwiseSqrt().cwiseInverse();
  const Mat g = lxm * svd.matrixV() * isq.asDiagonal();
  return g * g.transpose();
}

void Cone::add(ConeKind kind, int size) {
  ConeSegment seg{kind, size, dim_};
  segs_.push_back(seg);
  dim_ += seg.dim();
}

double Cone::nu() const {
  double nu = 0.0;
  for (const auto& s : segs_) {
    switch (s.kind) {
      case ConeKind::SecondOrder: nu += 2.0 * soc_weight(); break;
      case ConeKind::Psd:
      case ConeKind::NonNeg: nu += s.size; break;
    }
  }
  return nu;
}

Vec Cone::identity() const {
  Vec e = Vec::Zero(dim_);
  for (const auto& s : segs_) {
    switch (s.kind) {
      case ConeKind::SecondOrder: e(s.offset) = std::sqrt(2.0 * soc_weight()); break;
      case ConeKind::Psd:
        for (int i = 0; i < s.size; ++i) e(s.offset + svec_index(s.size, i, i)) = 1.0;
        break;
      case ConeKind::NonNeg: e.segment(s.offset, s.size).setOnes(); break;
    }
  }
  return e;
}

bool Cone::is_interior(const Vec& x) const {
  for (const auto& s : segs_) {
    const Vec xs = x.segment(s.offset, s.dim());
    switch (s.kind) {
      case ConeKind::SecondOrder:
        if (!(xs(0) > 0.0 && soc_det(xs) > 0.0)) return false;
        break;
      case ConeKind::Psd: {
        Eigen::LLT<Mat> llt(smat_dense(xs));
        if (llt.info() != Eigen::Success) return false;
        break;
      }
      case ConeKind::NonNeg:
        if (!(xs.minCoeff() > 0.0)) return false;
        break;
    }
  }
  return true;
}

Vec Cone::gradient(const Vec& x) const {
  Vec g(dim_);
  for (const auto& s : segs_) {
    const Vec xs = x.segment(s.offset, s.dim());
    switch (s.kind) {
      case ConeKind::SecondOrder:
        g.segment(s.offset, s.dim()) = -2.0 * soc_weight() * soc_reflect(xs) / soc_det(xs);
        break;
      case ConeKind::Psd: {
        const Mat X = smat_dense(xs);
        Eigen::LLT<Mat> llt(X);
        const Mat inv = llt.solve(Mat::Identity(s.size, s.size));
        g.segment(s.offset, s.dim()) = -svec(inv);
        break;
      }
      case ConeKind::NonNeg: g.segment(s.offset, s.dim()) = -xs.cwiseInverse(); break;
    }
  }
  return g;
}

Scaling Cone::scaling_point(const Vec& x, const Vec& s) const {
  if (x.size() != dim_ || s.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "scaling point operands");
  Scaling out(segs_.size());
  for (std::size_t k = 0; k < segs_.size(); ++k) {
    const auto& seg = segs_[k];
    const Vec xs = x.segment(seg.offset, seg.dim());
    const Vec ss = s.segment(seg.offset, seg.dim());
    auto& sc = out[k];
    switch (seg.kind) {
      case ConeKind::SecondOrder: {
        if (!(xs(0) > 0.0 && ss(0) > 0.0 && soc_det(xs) > 0.0 && soc_det(ss) > 0.0))
          throw Error(ErrorCode::NotInterior, "second-order segment on the boundary");
        sc.w = std::sqrt(2.0 * soc_weight()) * soc_nt_point(xs, ss);
        sc.det = soc_det(sc.w);
        break;
      }
      case ConeKind::Psd: {
        const Mat X = smat_dense(xs);
        const Mat S = smat_dense(ss);
        Eigen::LLT<Mat> lx(X), ls(S);
        if (lx.info() != Eigen::Success || ls.info() != Eigen::Success)
          throw Error(ErrorCode::NotInterior, "PSD segment is not positive definite");
        const Mat lxm = lx.matrixL();
        const Mat lsm = ls.matrixL();
        Eigen::JacobiSVD<Mat> svd(lsm.transpose() * lxm, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Vec isq = svd.singularValues().cwiseSqrt().cwiseInverse();
        const Mat g = lxm * svd.matrixV() * isq.asDiagonal();
        const Mat h = lsm * svd.matrixU() * isq.asDiagonal();
        sc.W = g * g.transpose();
        sc.W_inv = h * h.transpose();
        break;
      }
      case ConeKind::NonNeg:
        if (!(xs.minCoeff() > 0.0 && ss.minCoeff() > 0.0))
          throw Error(ErrorCode::NotInterior, "orthant segment on the boundary");
        sc.w = (xs.array() / ss.array()).sqrt().matrix();
        break;
    }
  }
  return out;
}

Vec Cone::apply_hess(const Scaling& w, const Vec& v) const {
  Vec out(dim_);
  for (std::size_t k = 0; k < segs_.size(); ++k) {
    const auto& seg = segs_[k];
    const Vec vs = v.segment(seg.offset, seg.dim());
    switch (seg.kind) {
      case ConeKind::SecondOrder: {
        const Vec winv = soc_reflect(w[k].w) / w[k].det;
        out.segment(seg.offset, seg.dim()) = 2.0 * soc_weight() * soc_quad(winv, 1.0 / w[k].det, vs);
        break;
      }
      case ConeKind::Psd: {
        const Mat V = smat_dense(vs);
        out.segment(seg.offset, seg.dim()) = svec(Mat(w[k].W_inv * V * w[k].W_inv));
        break;
      }
      case ConeKind::NonNeg:
        out.segment(seg.offset, seg.dim()) = (vs.array() / w[k].w.array().square()).matrix();
        break;
    }
  }
  return out;
}

Vec Cone::apply_hess_inv_segment(const Scaling& w, int k, const Vec& vs) const {
  const auto& seg = segs_[static_cast<std::size_t>(k)];
  switch (seg.kind) {
    case ConeKind::SecondOrder: return soc_quad(w[k].w, w[k].det, vs) / (2.0 * soc_weight());
    case ConeKind::Psd: {
      const Mat V = smat_dense(vs);
      return svec(Mat(w[k].W * V * w[k].W));
    }
    case ConeKind::NonNeg: return (vs.array() * w[k].w.array().square()).matrix();
  }
  return vs;
}

Vec Cone::apply_hess_inv(const Scaling& w, const Vec& v) const {
  Vec out(dim_);
  for (std::size_t k = 0; k < segs_.size(); ++k) {
    const auto& seg = segs_[k];
    out.segment(seg.offset, seg.dim()) = apply_hess_inv_segment(w, static_cast<int>(k), v.segment(seg.offset, seg.dim()));
  }
  return out;
}

double Cone::max_step(const Vec& x, const Vec& dx) const {
  double alpha = kInf;
  for (const auto& seg : segs_) {
    const Vec xs = x.segment(seg.offset, seg.dim());
    const Vec ds = dx.segment(seg.offset, seg.dim());
    switch (seg.kind) {
      case ConeKind::SecondOrder: alpha = std::min(alpha, soc_max_step(xs, ds)); break;
      case ConeKind::Psd: {
        Eigen::LLT<Mat> llt(smat_dense(xs));
        if (llt.info() != Eigen::Success) return 0.0;
        const Mat l = llt.matrixL();
        Mat m = l.triangularView<Eigen::Lower>().solve(smat_dense(ds));
        m = l.triangularView<Eigen::Lower>().solve(Mat(m.transpose()));
        const double lmin = sym_min_eig(0.5 * (m + m.transpose()));
        if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
        break;
      }
      case ConeKind::NonNeg:
        for (int i = 0; i < seg.size; ++i)
          if (ds(i) < 0.0) alpha = std::min(alpha, -xs(i) / ds(i));
        break;
    }
  }
  return alpha;
}

}  // namespace sdpctc
