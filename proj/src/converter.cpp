#include "sdpctc/converter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace sdpctc {

int CtcProblem::column(const CtcEntry& e) const {
  const auto& b = blocks[e.block];
  switch (e.kind) {
    case VarKind::Psd: return b.offset + e.local;
    case VarKind::Aux: return b.offset + b.psd_dim() + e.local;
    case VarKind::Slack: return b.offset + b.psd_dim() + b.aux + e.local;
  }
  return -1;
}

std::vector<int> CtcProblem::row_blocks(int r) const {
  std::vector<int> out;
  for (const auto& e : rows[r].entries) out.push_back(e.block);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int CtcProblem::num_overlap_rows() const {
  int k = 0;
  for (const auto& r : rows) k += r.kind == RowKind::Overlap;
  return k;
}

void CtcProblem::finalize() {
  dim = 0;
  for (auto& b : blocks) {
    b.offset = dim;
    dim += b.size();
  }
  c = Vec::Zero(dim);
  for (const auto& e : objective) c(column(e)) += e.value;
  std::vector<Eigen::Triplet<double>> trips;
  g = Vec::Zero(num_rows());
  for (int r = 0; r < num_rows(); ++r) {
    g(r) = rows[r].rhs;
    for (const auto& e : rows[r].entries) trips.emplace_back(r, column(e), e.value);
  }
  G.resize(num_rows(), dim);
  G.setFromTriplets(trips.begin(), trips.end());
  G.makeCompressed();
  conic.assign(static_cast<std::size_t>(dim), 1);
  for (const auto& b : blocks)
    for (int k = 0; k < b.aux; ++k) conic[static_cast<std::size_t>(b.offset + b.psd_dim() + k)] = 0;
  slack_col.assign(sense.size(), -1);
  for (int i = 0; i < static_cast<int>(sense.size()); ++i) {
    if (sense[i] == Sense::Eq || root_row[i] < 0) continue;
    for (const auto& e : rows[root_row[i]].entries)
      if (e.kind == VarKind::Slack) slack_col[i] = column(e);
  }
}

namespace {

void check_split(const SparseSymmetric& m, const Split& split, const TreeDecomposition& td, const std::string& what) {
  std::map<std::pair<int, int>, double> want, got;
  for (const auto& t : m.entries())
    if (t.value != 0.0) want[{t.row, t.col}] += t.value;
  for (const auto& p : split.parts) {
    if (p.bag < 0 || p.bag >= td.ell()) throw Error(ErrorCode::InvalidSplit, what + ": unknown bag");
    const auto& bag = td.bags[p.bag];
    if (p.block.order() != static_cast<int>(bag.size()))
      throw Error(ErrorCode::InvalidSplit, what + ": block order differs from bag size");
    for (int r = 0; r < p.block.order(); ++r)
      for (int c = 0; c <= r; ++c)
        if (p.block(r, c) != 0.0) got[{std::max(bag[r], bag[c]), std::min(bag[r], bag[c])}] += p.block(r, c);
  }
  double scale = 0.0;
  for (const auto& [k, v] : want) scale = std::max(scale, std::abs(v));
  auto mismatch = [&](const std::map<std::pair<int, int>, double>& a, const std::map<std::pair<int, int>, double>& b) {
    for (const auto& [k, v] : a) {
      auto it = b.find(k);
      const double other = it == b.end() ? 0.0 : it->second;
      if (std::abs(v - other) > 1e-12 * (1.0 + scale)) return true;
    }
    return false;
  };
  if (mismatch(want, got) || mismatch(got, want))
    throw Error(ErrorCode::InvalidSplit, what + ": parts do not sum to the matrix");
}

void append_block_entries(std::vector<CtcEntry>& out, int bag, const DenseSym& blk) {
  const int k = blk.order();
  for (int c = 0; c < k; ++c)
    for (int r = c; r < k; ++r) {
      const double v = blk(r, c);
      if (v != 0.0) out.push_back({bag, VarKind::Psd, svec_index(k, r, c), (r == c ? 1.0 : M_SQRT2) * v});
    }
}

}  // namespace

CtcProblem build_ctc(const SdpProblem& sdp, const TreeDecomposition& td, const Split& c_split,
                     const std::vector<Split>& a_splits) {
  if (td.n != sdp.n) throw Error(ErrorCode::DimensionMismatch, "decomposition order differs from problem order");
  if (static_cast<int>(a_splits.size()) != sdp.m()) throw Error(ErrorCode::InvalidSplit, "one split per constraint");
  CtcProblem ctc;
  ctc.td = td;
  ctc.blocks.resize(td.bags.size());
  for (int j = 0; j < td.ell(); ++j) ctc.blocks[j].order = static_cast<int>(td.bags[j].size());
  check_split(sdp.C, c_split, td, "objective");
  for (const auto& p : c_split.parts) append_block_entries(ctc.objective, p.bag, p.block);
  ctc.sense = sdp.sense;
  ctc.root_row.assign(static_cast<std::size_t>(sdp.m()), -1);
  for (int i = 0; i < sdp.m(); ++i) {
    check_split(sdp.A[i], a_splits[i], td, "constraint " + std::to_string(i + 1));
    CtcRow row{RowKind::Constraint, i, sdp.b[i], {}};
    for (const auto& p : a_splits[i].parts) append_block_entries(row.entries, p.bag, p.block);
    ctc.root_row[i] = ctc.num_rows();
    ctc.rows.push_back(std::move(row));
  }
  for (int j = 0; j < td.ell(); ++j) {
    const int p = td.parent[j];
    if (p == j) continue;
    std::vector<int> common;
    std::set_intersection(td.bags[j].begin(), td.bags[j].end(), td.bags[p].begin(), td.bags[p].end(),
                          std::back_inserter(common));
    const int kj = ctc.blocks[j].order, kp = ctc.blocks[p].order;
    for (std::size_t a = 0; a < common.size(); ++a)
      for (std::size_t b = a; b < common.size(); ++b) {
        CtcRow row{RowKind::Overlap, j, 0.0, {}};
        row.entries.push_back({j, VarKind::Psd, svec_index(kj, td.local_index(j, common[b]), td.local_index(j, common[a])), 1.0});
        row.entries.push_back({p, VarKind::Psd, svec_index(kp, td.local_index(p, common[b]), td.local_index(p, common[a])), -1.0});
        ctc.rows.push_back(std::move(row));
      }
  }
  ctc.finalize();
  return ctc;
}

CtcProblem separate_with_aux(const CtcProblem& in) {
  CtcProblem out = in;
  out.rows.clear();
  out.aux.clear();
  const auto& td = in.td;
  const auto depth = depths(td);
  for (int r = 0; r < in.num_rows(); ++r) {
    const CtcRow& row = in.rows[r];
    const auto touched = in.row_blocks(r);
    if (row.kind != RowKind::Constraint || touched.size() <= 1) {
      if (row.kind == RowKind::Constraint && in.root_row[row.source] == r) out.root_row[row.source] = out.num_rows();
      out.rows.push_back(row);
      continue;
    }
    // support subtree: union of the tree paths joining the touched bags
    std::vector<char> in_w(td.bags.size(), 0);
    int top = touched.front();
    for (int t : touched) {
      int a = top, b = t;
      while (a != b) {
        if (depth[a] < depth[b]) std::swap(a, b);
        if (td.parent[a] == a) throw Error(ErrorCode::DisconnectedSupport, "bags lie in different trees");
        a = td.parent[a];
      }
      top = a;
    }
    std::vector<int> members;
    for (int t : touched)
      for (int v = t;; v = td.parent[v]) {
        if (in_w[v]) break;
        in_w[v] = 1;
        members.push_back(v);
        if (v == top) break;
        if (td.parent[v] == v) throw Error(ErrorCode::DisconnectedSupport, "support does not reach its root");
      }
    std::sort(members.begin(), members.end(), [&](int a, int b) {
      return depth[a] != depth[b] ? depth[a] < depth[b] : a < b;
    });
    std::map<int, CtcEntry> aux_of;  // child bag k -> u_k
    for (int k : members) {
      if (k == top) continue;
      const int p = td.parent[k];
      CtcEntry e{p, VarKind::Aux, out.blocks[p].aux++, 1.0};
      aux_of[k] = e;
      out.aux.push_back({row.source, k, p, e.local});
    }
    for (int j : members) {
      CtcRow piece{RowKind::Constraint, row.source, j == top ? row.rhs : 0.0, {}};
      for (const auto& e : row.entries)
        if (e.block == j) piece.entries.push_back(e);
      for (int k : members)
        if (k != top && td.parent[k] == j) piece.entries.push_back(aux_of[k]);
      if (j != top) {
        CtcEntry e = aux_of[j];
        e.value = -1.0;
        piece.entries.push_back(e);
      }
      if (j == top) out.root_row[row.source] = out.num_rows();
      out.rows.push_back(std::move(piece));
    }
  }
  out.finalize();
  return out;
}

CtcProblem add_inequality_slacks(const CtcProblem& in) {
  CtcProblem out = in;
  for (int i = 0; i < static_cast<int>(out.sense.size()); ++i) {
    if (out.sense[i] == Sense::Eq) continue;
    auto& row = out.rows[out.root_row[i]];
    const int blk = row.entries.empty() ? out.td.root() : row.entries.front().block;
    row.entries.push_back({blk, VarKind::Slack, out.blocks[blk].slack++, out.sense[i] == Sense::Ge ? -1.0 : 1.0});
  }
  out.finalize();
  return out;
}

Split split_network_flow(const SparseSymmetric& a, const Graph& graph, const TreeDecomposition& td,
                         const UniquePartition& up) {
  int center = -1;
  double diag = 0.0;
  std::vector<std::pair<int, double>> off;
  for (const auto& t : a.entries()) {
    if (t.value == 0.0) continue;
    if (t.row == t.col) {
      if (center >= 0 && center != t.row) throw Error(ErrorCode::NotNetworkFlow, "more than one diagonal entry");
      center = t.row;
      diag += t.value;
    }
  }
  for (const auto& t : a.entries()) {
    if (t.value == 0.0 || t.row == t.col) continue;
    if (center < 0) {
      // no diagonal: the centre is the vertex shared by every off-diagonal entry
      int shared_r = 0, shared_c = 0;
      for (const auto& u : a.entries())
        if (u.value != 0.0 && u.row != u.col) {
          shared_r += (u.row == t.row || u.col == t.row);
          shared_c += (u.row == t.col || u.col == t.col);
        }
      center = shared_r >= shared_c ? t.row : t.col;
    }
    const int other = t.row == center ? t.col : (t.col == center ? t.row : -1);
    if (other < 0) throw Error(ErrorCode::NotNetworkFlow, "off-diagonal entry away from the centre vertex");
    if (!graph.has_edge(center, other)) throw Error(ErrorCode::NotNetworkFlow, "off-diagonal entry is not a graph edge");
    off.push_back({other, t.value});
  }
  Split out;
  if (center < 0) return out;
  std::map<int, DenseSym> parts;
  const auto d = depths(td);
  auto bag_for = [&](int u, int v) {
    const int bu = up.owner[u], bv = up.owner[v];
    const int bag = d[bu] >= d[bv] ? bu : bv;
    if (!td.contains(bag, u) || !td.contains(bag, v)) throw Error(ErrorCode::UncoverableEntry, "edge is in no bag");
    return bag;
  };
  auto part = [&](int bag) -> DenseSym& {
    auto it = parts.find(bag);
    if (it == parts.end()) it = parts.emplace(bag, DenseSym(static_cast<int>(td.bags[bag].size()))).first;
    return it->second;
  };
  const auto& nbrs = graph.adj[center];
  if (nbrs.empty()) {
    const int bag = up.owner[center];
    const int lk = td.local_index(bag, center);
    part(bag).at(lk, lk) += diag;
  } else {
    const double share = diag / static_cast<double>(nbrs.size());
    for (int j : nbrs) {
      const int bag = bag_for(center, j);
      const int lk = td.local_index(bag, center);
      const int lj = td.local_index(bag, j);
      part(bag).at(lk, lk) += share;
      for (const auto& [o, v] : off)
        if (o == j) part(bag).at(lj, lk) += v;
    }
  }
  for (auto& [bag, blk] : parts) out.parts.push_back({bag, std::move(blk)});
  return out;
}

DualizedProgram dualize(const CtcProblem& ctc, NuConvention conv) {
  DualizedProgram dp;
  const int f = ctc.num_rows();
  const int d = ctc.dim;
  dp.f = f;
  Cone cone(conv);
  cone.add(ConeKind::SecondOrder, 1 + f);
  dp.x2_index.assign(static_cast<std::size_t>(d), -1);
  int x2 = 0;
  for (const auto& b : ctc.blocks) {
    if (b.order > 0) cone.add(ConeKind::Psd, b.order);
    if (b.slack > 0) cone.add(ConeKind::NonNeg, b.slack);
    for (int k = 0; k < b.psd_dim(); ++k) dp.x2_index[b.offset + k] = x2++;
    for (int k = 0; k < b.slack; ++k) dp.x2_index[b.offset + b.psd_dim() + b.aux + k] = x2++;
  }
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(ctc.G.nonZeros() + d));
  for (int r = 0; r < f; ++r)
    for (SpMat::InnerIterator it(ctc.G, r); it; ++it) trips.emplace_back(static_cast<int>(it.col()), 1 + r, -it.value());
  for (int v = 0; v < d; ++v)
    if (dp.x2_index[v] >= 0) trips.emplace_back(v, 1 + f + dp.x2_index[v], 1.0);
  auto& prog = dp.program;
  prog.cone = cone;
  prog.M.resize(d, cone.dim());
  prog.M.setFromTriplets(trips.begin(), trips.end());
  prog.M.makeCompressed();
  prog.b = ctc.c;
  prog.c = Vec::Zero(cone.dim());
  prog.c.segment(1, f) = ctc.g;
  return dp;
}

ConicProgram direct_program(const CtcProblem& ctc, NuConvention conv) {
  ConicProgram prog;
  Cone cone(conv);
  for (const auto& b : ctc.blocks) {
    if (b.aux > 0) throw Error(ErrorCode::StructureViolation, "free auxiliaries need the dualized form");
    if (b.order > 0) cone.add(ConeKind::Psd, b.order);
    if (b.slack > 0) cone.add(ConeKind::NonNeg, b.slack);
  }
  prog.cone = cone;
  prog.M = ctc.G;
  prog.b = ctc.g;
  prog.c = ctc.c;
  return prog;
}

}  // namespace sdpctc
