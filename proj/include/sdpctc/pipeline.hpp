#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sdpctc/converter.hpp"
#include "sdpctc/ipm.hpp"
#include "sdpctc/recovery.hpp"

namespace sdpctc {

/// ctc: converted problem solved directly with a dense normal matrix.
/// dctc: dualized converted problem with the tree-structured normal matrix.
/// dctc-aux: as dctc, after splitting multi-bag constraints with auxiliaries.
enum class Method { Ctc, Dctc, DctcAux };

struct PipelineOptions {
  Method method = Method::Dctc;
  IpmOptions ipm;
  NuConvention nu = NuConvention::Unit;
  std::optional<std::vector<int>> perm;
  bool network_flow_split = false;
  bool compute_metrics = true;
};

struct PipelineResult {
  TreeDecomposition td;
  CtcProblem ctc;
  std::vector<Mat> blocks;  // X_j
  Mat U;
  Vec y;                    // multipliers of the original constraints
  Vec ctc_x;
  Vec ctc_y;
  double objective = 0.0;
  DimacsMetrics metrics;
  IpmResult ipm;
  double decompose_seconds = 0.0;
  double convert_seconds = 0.0;
  double solve_seconds = 0.0;
  double time_per_iter = 0.0;
};

/// Decomposes, splits and converts the problem (no solve).
CtcProblem convert(const SdpProblem& sdp, const PipelineOptions& opts, TreeDecomposition* td_out = nullptr);

PipelineResult solve_sdp(const SdpProblem& sdp, const PipelineOptions& opts);

Method parse_method(const std::string& s);
std::string metrics_json(const PipelineResult& r);
/// Header "n r", then the n rows of U.
void write_solution(std::ostream& out, const Mat& U);

}  // namespace sdpctc
