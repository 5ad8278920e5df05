#include "sdpctc/reference.hpp"

#include <cmath>

namespace sdpctc {

ReferenceResult dense_reference_solve(const SdpProblem& sdp, const IpmOptions& opts, NuConvention conv) {
  if (sdp.n > 50) throw Error(ErrorCode::InvalidArgument, "dense reference is limited to order 50");
  const int n = sdp.n;
  const int d = svec_dim(n);
  int slacks = 0;
  for (auto s : sdp.sense) slacks += s != Sense::Eq;
  ConicProgram prog;
  prog.cone = Cone(conv);
  prog.cone.add(ConeKind::Psd, n);
  if (slacks > 0) prog.cone.add(ConeKind::NonNeg, slacks);
  auto svec_entries = [&](const SparseSymmetric& a, int row, std::vector<Eigen::Triplet<double>>& out) {
    for (const auto& t : a.entries())
      out.emplace_back(row, svec_index(n, t.row, t.col), (t.row == t.col ? 1.0 : M_SQRT2) * t.value);
  };
  std::vector<Eigen::Triplet<double>> trips;
  int slack = 0;
  for (int i = 0; i < sdp.m(); ++i) {
    svec_entries(sdp.A[i], i, trips);
    if (sdp.sense[i] != Sense::Eq) trips.emplace_back(i, d + slack++, sdp.sense[i] == Sense::Ge ? -1.0 : 1.0);
  }
  prog.M.resize(sdp.m(), prog.cone.dim());
  prog.M.setFromTriplets(trips.begin(), trips.end());
  prog.b = Eigen::Map<const Vec>(sdp.b.data(), sdp.m());
  prog.c = Vec::Zero(prog.cone.dim());
  for (const auto& t : sdp.C.entries())
    prog.c(svec_index(n, t.row, t.col)) += (t.row == t.col ? 1.0 : M_SQRT2) * t.value;

  DenseNormalSolver solver;
  ReferenceResult out;
  out.ipm = solve_hsde(prog, solver, opts);
  const auto& st = out.ipm.state;
  out.X = smat_dense(Vec(st.x.head(d) / st.tau));
  out.y = st.y / st.tau;
  out.objective = prog.c.head(d).dot(st.x.head(d)) / st.tau;
  return out;
}

}  // namespace sdpctc
