#pragma once

#include <vector>

#include "sdpctc/chordal.hpp"
#include "sdpctc/problem.hpp"

namespace sdpctc {

/// MAX k-CUT relaxation in minimization form: C = -(k-1)/(2k) L_w, X_ii = 1,
/// and X_ij >= -1/(k-1) on every edge when k > 2. The cut value is -objective.
SdpProblem gen_maxkcut(const Graph& g, int k);
SdpProblem gen_maxcut(const Graph& g);

/// Lovasz theta in minimization form over order n+1: C = [I 1; 1^T 0],
/// X_ij = 0 on edges, X_{n+1,n+1} = 1. theta = -objective.
SdpProblem gen_lovasz_theta(const Graph& g);

/// minimize tr(X) s.t. X[i, n+1] = b_i, i = 1..n (order n+1); its sparsity is a star.
SdpProblem gen_star(const std::vector<double>& b);

/// minimize C . X s.t. A . X = 1 with tridiagonal A, C (order = diagonal length).
SdpProblem gen_path_rayleigh(const std::vector<double>& a_diag, const std::vector<double>& a_off,
                             const std::vector<double>& c_diag, const std::vector<double>& c_off);

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);

}  // namespace sdpctc
