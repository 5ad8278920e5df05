#pragma once

#include <vector>

#include "sdpctc/linalg.hpp"

namespace sdpctc {

enum class ConeKind { SecondOrder, Psd, NonNeg };

/// How the second-order cone enters the barrier parameter. Unit: the cone
/// counts once with identity (1, 0, ...); Standard: twice with (sqrt 2, 0, ...).
enum class NuConvention { Unit, Standard };

struct ConeSegment {
  ConeKind kind;
  int size;    // SOC length, PSD order, or orthant length
  int offset;  // first coordinate in the stacked vector
  int dim() const { return kind == ConeKind::Psd ? svec_dim(size) : size; }
};

/// Scaling data for one segment.
struct SegmentScaling {
  Vec w;       // SOC / orthant scaling point
  double det = 0.0;
  Mat W;       // PSD scaling point
  Mat W_inv;
};

using Scaling = std::vector<SegmentScaling>;

/// Product of second-order, semidefinite and nonnegative cones.
/// The second-order barrier is -(nu_soc / 2) log(x0^2 - |x1|^2) up to a constant.
class Cone {
 public:
  Cone() = default;
  explicit Cone(NuConvention conv) : conv_(conv) {}

  void add(ConeKind kind, int size);
  const std::vector<ConeSegment>& segments() const { return segs_; }
  int dim() const { return dim_; }
  NuConvention convention() const { return conv_; }
  double soc_weight() const { return conv_ == NuConvention::Unit ? 0.5 : 1.0; }
  double nu() const;

  Vec identity() const;
  bool is_interior(const Vec& x) const;
  Vec gradient(const Vec& x) const;
  /// NT point w with hess F(w) x = s.
  Scaling scaling_point(const Vec& x, const Vec& s) const;
  Vec apply_hess(const Scaling& w, const Vec& v) const;
  Vec apply_hess_inv(const Scaling& w, const Vec& v) const;
  /// Applies hess F(w)^{-1} to the part of v lying in one segment.
  Vec apply_hess_inv_segment(const Scaling& w, int seg, const Vec& v_seg) const;
  /// Largest alpha with x + alpha dx in the closed cone (infinity if unbounded).
  double max_step(const Vec& x, const Vec& dx) const;

 private:
  NuConvention conv_ = NuConvention::Unit;
  std::vector<ConeSegment> segs_;
  int dim_ = 0;
};

/// Second-order cone helpers; det(x) = x0^2 - |x1|^2.
double soc_det(const Vec& x);
/// NT point of the unit-weight barrier -log det: P(w) s = x in Jordan algebra terms.
Vec soc_nt_point(const Vec& x, const Vec& s);
/// PSD NT point: W S W = X.
Mat psd_nt_point(const Mat& X, const Mat& S);

}  // namespace sdpctc
