#include "sdpctc/generators.hpp"

namespace sdpctc {

SdpProblem gen_maxkcut(const Graph& g, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "k must be at least 2");
  SdpProblem sdp;
  sdp.n = g.n;
  sdp.C = SparseSymmetric(g.n);
  const double scale = -static_cast<double>(k - 1) / (2.0 * k);
  std::vector<double> deg(static_cast<std::size_t>(g.n), 0.0);
  for (const auto& e : g.edges) {
    deg[e.u] += e.weight;
    deg[e.v] += e.weight;
    sdp.C.add(e.v, e.u, -scale * e.weight);
  }
  for (int i = 0; i < g.n; ++i) sdp.C.add(i, i, scale * deg[i]);
  sdp.C.coalesce();
  for (int i = 0; i < g.n; ++i) {
    SparseSymmetric a(g.n);
    a.add(i, i, 1.0);
    sdp.add_constraint(std::move(a), 1.0);
  }
  if (k > 2)
    for (const auto& e : g.edges) {
      SparseSymmetric a(g.n);
      a.add(e.v, e.u, 0.5);
      sdp.add_constraint(std::move(a), -1.0 / (k - 1), Sense::Ge);
    }
  return sdp;
}

SdpProblem gen_maxcut(const Graph& g) { return gen_maxkcut(g, 2); }

SdpProblem gen_lovasz_theta(const Graph& g) {
  const int n = g.n;
  SdpProblem sdp;
  sdp.n = n + 1;
  sdp.C = SparseSymmetric(n + 1);
  for (int i = 0; i < n; ++i) {
    sdp.C.add(i, i, 1.0);
    sdp.C.add(n, i, 1.0);
  }
  sdp.C.coalesce();
  for (const auto& e : g.edges) {
    SparseSymmetric a(n + 1);
    a.add(e.v, e.u, 0.5);
    sdp.add_constraint(std::move(a), 0.0);
  }
  SparseSymmetric last(n + 1);
  last.add(n, n, 1.0);
  sdp.add_constraint(std::move(last), 1.0);
  return sdp;
}

SdpProblem gen_star(const std::vector<double>& b) {
  const int n = static_cast<int>(b.size());
  SdpProblem sdp;
  sdp.n = n + 1;
  sdp.C = SparseSymmetric(n + 1);
  for (int i = 0; i <= n; ++i) sdp.C.add(i, i, 1.0);
  for (int i = 0; i < n; ++i) {
    SparseSymmetric a(n + 1);
    a.add(n, i, 0.5);
    sdp.add_constraint(std::move(a), b[i]);
  }
  return sdp;
}

SdpProblem gen_path_rayleigh(const std::vector<double>& a_diag, const std::vector<double>& a_off,
                             const std::vector<double>& c_diag, const std::vector<double>& c_off) {
  const int n = static_cast<int>(a_diag.size());
  if (static_cast<int>(c_diag.size()) != n || static_cast<int>(a_off.size()) != n - 1 ||
      static_cast<int>(c_off.size()) != n - 1)
    throw Error(ErrorCode::DimensionMismatch, "tridiagonal data lengths");
  SdpProblem sdp;
  sdp.n = n;
  sdp.C = SparseSymmetric(n);
  SparseSymmetric a(n);
  for (int i = 0; i < n; ++i) {
    sdp.C.add(i, i, c_diag[i]);
    a.add(i, i, a_diag[i]);
    if (i + 1 < n) {
      sdp.C.add(i + 1, i, c_off[i]);
      a.add(i + 1, i, a_off[i]);
    }
  }
  sdp.add_constraint(std::move(a), 1.0);
  return sdp;
}

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, 1.0});
  return Graph::from_edges(n, e);
}

Graph cycle_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1.0});
  return Graph::from_edges(n, e);
}

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
  return Graph::from_edges(n, e);
}

Graph star_graph(int leaves) {
  std::vector<Edge> e;
  for (int i = 0; i < leaves; ++i) e.push_back({i, leaves, 1.0});
  return Graph::from_edges(leaves + 1, e);
}

}  // namespace sdpctc
