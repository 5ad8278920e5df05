#include "sdpctc/pipeline.hpp"

#include <chrono>
#include <iomanip>
#include "json.hpp"
#include <ostream>

namespace sdpctc {

namespace {
using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }
}  // namespace

Method parse_method(const std::string& s) {
  if (s == "ctc") return Method::Ctc;
  if (s == "dctc") return Method::Dctc;
  if (s == "dctc-aux") return Method::DctcAux;
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + s + "'");
}

CtcProblem convert(const SdpProblem& sdp, const PipelineOptions& opts, TreeDecomposition* td_out) {
  std::vector<const SparseSymmetric*> mats{&sdp.C};
  for (const auto& a : sdp.A) mats.push_back(&a);
  const Graph g = sparsity_graph(sdp.n, mats);
  TreeDecomposition td = decompose(g, opts.perm);
  Splitter splitter(td);
  const Split cs = splitter.split(sdp.C);
  std::vector<Split> as;
  as.reserve(sdp.A.size());
  for (const auto& a : sdp.A) {
    Split s = splitter.split(a);
    if (opts.network_flow_split && s.parts.size() > 1) {
      try {
        s = split_network_flow(a, g, td, splitter.partition());
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotNetworkFlow) throw;
      }
    }
    as.push_back(std::move(s));
  }
  CtcProblem ctc = build_ctc(sdp, td, cs, as);
  if (opts.method == Method::DctcAux) ctc = separate_with_aux(ctc);
  ctc = add_inequality_slacks(ctc);
  if (td_out) *td_out = td;
  return ctc;
}

PipelineResult solve_sdp(const SdpProblem& sdp, const PipelineOptions& opts) {
  PipelineResult res;
  auto t0 = Clock::now();
  res.ctc = convert(sdp, opts, &res.td);
  res.decompose_seconds = since(t0);
  const CtcProblem& ctc = res.ctc;

  t0 = Clock::now();
  if (opts.method == Method::Ctc) {
    const ConicProgram prog = direct_program(ctc, opts.nu);
    res.convert_seconds = since(t0);
    DenseNormalSolver solver;
    t0 = Clock::now();
    res.ipm = solve_hsde(prog, solver, opts.ipm);
    res.solve_seconds = since(t0);
    const auto& st = res.ipm.state;
    res.ctc_x = st.x / st.tau;
    res.ctc_y = st.y / st.tau;
  } else {
    const DualizedProgram dp = dualize(ctc, opts.nu);
    res.convert_seconds = since(t0);
    TreeNormalSolver solver(ctc);
    t0 = Clock::now();
    res.ipm = solve_hsde(dp.program, solver, opts.ipm);
    res.solve_seconds = since(t0);
    const auto& st = res.ipm.state;
    res.ctc_x = -st.y / st.tau;
    res.ctc_y = -st.x.segment(1, dp.f) / st.tau;
  }
  res.time_per_iter = res.ipm.iters > 0 ? res.solve_seconds / res.ipm.iters : 0.0;
  res.objective = ctc.c.dot(res.ctc_x);

  res.blocks.resize(ctc.blocks.size());
  for (std::size_t j = 0; j < ctc.blocks.size(); ++j) {
    const auto& b = ctc.blocks[j];
    res.blocks[j] = smat_dense(Vec(res.ctc_x.segment(b.offset, b.psd_dim())));
  }
  res.y = Vec(sdp.m());
  for (int i = 0; i < sdp.m(); ++i) res.y(i) = res.ctc_y(ctc.root_row[i]);
  if (opts.compute_metrics) {
    res.U = complete_low_rank(res.td, res.blocks);
    res.metrics = dimacs_metrics(sdp, res.U, res.y);
  }
  return res;
}

std::string metrics_json(const PipelineResult& r) {
  nlohmann::json j;
  j["pinf"] = r.metrics.pinf;
  j["dinf"] = r.metrics.dinf;
  j["gap"] = r.metrics.gap;
  j["L"] = r.metrics.L;
  j["iters"] = r.ipm.iters;
  j["time_per_iter_s"] = r.time_per_iter;
  j["omega"] = r.td.omega();
  j["ell"] = r.td.ell();
  return j.dump();
}

void write_solution(std::ostream& out, const Mat& U) {
  out << U.rows() << ' ' << U.cols() << '\n' << std::setprecision(17);
  for (int i = 0; i < U.rows(); ++i) {
    for (int k = 0; k < U.cols(); ++k) out << (k ? " " : "") << U(i, k);
    out << '\n';
  }
}

}  // namespace sdpctc
