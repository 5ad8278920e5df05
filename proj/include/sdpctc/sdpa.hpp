#pragma once

#include <iosfwd>
#include <string>

#include "sdpctc/problem.hpp"

namespace sdpctc {

/// Sparse SDPA (.dat-s) files: one semidefinite block, plus an optional LP
/// block whose coordinates act as private slacks of inequality constraints.
/// The problem is read as the SDPA dual  max F0 . Y  s.t.  Fi . Y = ci,
/// so C = -F0, A_i = F_i and b_i = c_i.
SdpProblem read_sdpa(std::istream& in);
SdpProblem read_sdpa_file(const std::string& path);
void write_sdpa(std::ostream& out, const SdpProblem& sdp);
void write_sdpa_file(const std::string& path, const SdpProblem& sdp);

}  // namespace sdpctc
