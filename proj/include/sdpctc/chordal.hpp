#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdpctc/linalg.hpp"

namespace sdpctc {

struct Edge {
  int u;
  int v;
  double weight = 1.0;
};

/// Undirected simple graph on vertices 0..n-1 with sorted adjacency lists.
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::vector<Edge> edges;  // u < v, insertion order

  explicit Graph(int order = 0) : n(order), adj(static_cast<std::size_t>(order)) {}
  static Graph from_edges(int n, const std::vector<Edge>& edges);

  std::size_t num_edges() const { return edges.size(); }
  bool has_edge(int u, int v) const;
};

/// Tree decomposition with bags of sorted 0-based vertices. parent[root] == root.
struct TreeDecomposition {
  int n = 0;
  std::vector<std::vector<int>> bags;
  std::vector<int> parent;

  int ell() const { return static_cast<int>(bags.size()); }
  int omega() const;
  int root() const;
  std::vector<std::vector<int>> children() const;
  bool contains(int bag, int vertex) const;
  /// Position of vertex inside a bag, or -1.
  int local_index(int bag, int vertex) const;
};

/// Union of the sparsity patterns of the given matrices; stored zeros count.
Graph sparsity_graph(int n, const std::vector<const SparseSymmetric*>& mats);

/// Minimum-degree elimination order; ties go to the smallest vertex index.
/// Entry k is the vertex eliminated k-th.
std::vector<int> min_degree_order(const Graph& g);

/// Elimination-tree bags J_j = {i : L[i,j] != 0} for the ordering, with
/// component roots chained so that the last vertex of the ordering is the root.
TreeDecomposition symbolic_factor(const Graph& g, const std::vector<int>& perm);

/// Absorbs every bag that is contained in a tree neighbour.
TreeDecomposition supernode_merge(const TreeDecomposition& td);

/// Empty when the decomposition is valid for g; otherwise one message per violation.
std::vector<std::string> validate(const Graph& g, const TreeDecomposition& td);

/// min_degree_order (or perm) -> symbolic_factor -> supernode_merge.
TreeDecomposition decompose(const Graph& g, const std::optional<std::vector<int>>& perm = std::nullopt);

/// Children-before-parents DFS postorder, visiting the smallest child index first.
std::vector<int> postorder(const TreeDecomposition& td);

/// Depth of each bag below the root.
std::vector<int> depths(const TreeDecomposition& td);

}  // namespace sdpctc
