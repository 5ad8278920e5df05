#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "sdpctc/chordal.hpp"
#include "sdpctc/cones.hpp"
#include "sdpctc/problem.hpp"
#include "sdpctc/splitter.hpp"

namespace sdpctc {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

enum class VarKind { Psd, Aux, Slack };

/// Variables of one bag: svec(X_j), then auxiliary scalars, then slacks.
struct BlockVars {
  int order = 0;
  int aux = 0;
  int slack = 0;
  int offset = 0;
  int psd_dim() const { return svec_dim(order); }
  int size() const { return psd_dim() + aux + slack; }
};

struct CtcEntry {
  int block;
  VarKind kind;
  int local;
  double value;
};

enum class RowKind { Constraint, Overlap };

struct CtcRow {
  RowKind kind;
  int source;  // original constraint index, or child bag for overlap rows
  double rhs;
  std::vector<CtcEntry> entries;
};

struct AuxVar {
  int constraint;
  int child_bag;  // u_k for tree edge (k, p(k)); stored in block p(k)
  int block;
  int local;
};

/// Clique-tree converted problem: minimize c^T x  s.t.  G x = g, with x made
/// of per-bag variable segments.
struct CtcProblem {
  TreeDecomposition td;
  std::vector<BlockVars> blocks;
  std::vector<CtcEntry> objective;
  std::vector<CtcRow> rows;
  std::vector<Sense> sense;
  std::vector<int> root_row;  // row carrying b_i for each original constraint
  std::vector<AuxVar> aux;
  std::vector<int> slack_col;  // global column of the slack of constraint i, or -1

  // Filled by finalize().
  int dim = 0;
  Vec c;
  SpMat G;
  Vec g;
  std::vector<char> conic;  // per variable: lies in a cone (not a free auxiliary)

  void finalize();
  int column(const CtcEntry& e) const;
  int num_rows() const { return static_cast<int>(rows.size()); }
  /// Distinct blocks touched by a row, sorted.
  std::vector<int> row_blocks(int r) const;
  int num_overlap_rows() const;
};

/// Builds the converted problem from per-matrix splits; rejects splits that
/// do not sum back to the original matrices.
CtcProblem build_ctc(const SdpProblem& sdp, const TreeDecomposition& td, const Split& c_split,
                     const std::vector<Split>& a_splits);

/// Replaces each multi-block constraint by one single-block row per bag of its
/// connected support, coupled through auxiliary free scalars.
CtcProblem separate_with_aux(const CtcProblem& ctc);

/// Adds one nonnegative slack per inequality, in the block of its root row.
CtcProblem add_inequality_slacks(const CtcProblem& ctc);

/// Splits A = a_k e_k e_k^T + sum_j a_j (e_j e_k^T + e_k e_j^T) over the bags
/// covering the edges at k, dividing the diagonal weight evenly.
Split split_network_flow(const SparseSymmetric& a, const Graph& graph, const TreeDecomposition& td,
                         const UniquePartition& up);

/// Standard-form conic program: minimize c^T x  s.t.  M x = b,  x in cone.
struct ConicProgram {
  Cone cone;
  SpMat M;
  Vec b;
  Vec c;
};

/// Dualized problem in standard form. Its variable is [x0; x1; x2] with
/// (x0, x1) in a second-order cone and x2 the conic part of the converted dual
/// slack; its dual multiplier y equals minus the converted primal x.
struct DualizedProgram {
  ConicProgram program;
  std::vector<int> x2_index;  // converted variable -> coordinate of x2, or -1
  int f = 0;                  // number of converted rows
};

DualizedProgram dualize(const CtcProblem& ctc, NuConvention conv);

/// Converted problem solved directly as a standard-form program (no free
/// variables allowed).
ConicProgram direct_program(const CtcProblem& ctc, NuConvention conv);

}  // namespace sdpctc
