#pragma once

#include "sdpctc/ipm.hpp"
#include "sdpctc/problem.hpp"

namespace sdpctc {

struct ReferenceResult {
  Mat X;
  Vec y;
  double objective = 0.0;
  IpmResult ipm;
};

/// Solves the problem without conversion: one dense semidefinite block and a
/// dense normal matrix. Limited to order <= 50.
ReferenceResult dense_reference_solve(const SdpProblem& sdp, const IpmOptions& opts,
                                      NuConvention conv = NuConvention::Unit);

}  // namespace sdpctc
