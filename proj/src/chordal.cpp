#include "sdpctc/chordal.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

namespace sdpctc {

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
  Graph g(n);
  for (auto e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (e.u == e.v) continue;
    if (e.u > e.v) std::swap(e.u, e.v);
    if (g.has_edge(e.u, e.v)) continue;
    g.adj[e.u].insert(std::lower_bound(g.adj[e.u].begin(), g.adj[e.u].end(), e.v), e.v);
    g.adj[e.v].insert(std::lower_bound(g.adj[e.v].begin(), g.adj[e.v].end(), e.u), e.u);
    g.edges.push_back(e);
  }
  return g;
}

bool Graph::has_edge(int u, int v) const {
  const auto& a = adj[static_cast<std::size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

int TreeDecomposition::omega() const {
  int w = 0;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
  return w;
}

int TreeDecomposition::root() const {
  for (int j = 0; j < ell(); ++j)
    if (parent[j] == j) return j;
  return -1;
}

std::vector<std::vector<int>> TreeDecomposition::children() const {
  std::vector<std::vector<int>> ch(bags.size());
  for (int j = 0; j < ell(); ++j)
    if (parent[j] != j) ch[parent[j]].push_back(j);
  return ch;
}

bool TreeDecomposition::contains(int bag, int vertex) const {
  const auto& b = bags[bag];
  return std::binary_search(b.begin(), b.end(), vertex);
}

int TreeDecomposition::local_index(int bag, int vertex) const {
  const auto& b = bags[bag];
  auto it = std::lower_bound(b.begin(), b.end(), vertex);
  if (it == b.end() || *it != vertex) return -1;
  return static_cast<int>(it - b.begin());
}

Graph sparsity_graph(int n, const std::vector<const SparseSymmetric*>& mats) {
  std::vector<Edge> edges;
  for (const auto* m : mats) {
    if (m->order() != n) throw Error(ErrorCode::DimensionMismatch, "matrix order differs from graph order");
    for (const auto& t : m->entries())
      if (t.row != t.col) edges.push_back({t.col, t.row, 1.0});
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  return Graph::from_edges(n, edges);
}

std::vector<int> min_degree_order(const Graph& g) {
  const int n = g.n;
  std::vector<std::vector<int>> adj = g.adj;
  std::set<std::pair<int, int>> queue;
  for (int v = 0; v < n; ++v) queue.insert({static_cast<int>(adj[v].size()), v});
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<int> merged;
  while (!queue.empty()) {
    const int v = queue.begin()->second;
    queue.erase(queue.begin());
    order.push_back(v);
    const std::vector<int> nbrs = std::move(adj[v]);
    adj[v].clear();
    for (int u : nbrs) {
      queue.erase({static_cast<int>(adj[u].size()), u});
      merged.clear();
      std::set_union(adj[u].begin(), adj[u].end(), nbrs.begin(), nbrs.end(), std::back_inserter(merged));
      merged.erase(std::remove_if(merged.begin(), merged.end(), [&](int x) { return x == u || x == v; }),
                   merged.end());
      adj[u].swap(merged);
      queue.insert({static_cast<int>(adj[u].size()), u});
    }
  }
  return order;
}

TreeDecomposition symbolic_factor(const Graph& g, const std::vector<int>& perm) {
  const int n = g.n;
  if (static_cast<int>(perm.size()) != n) throw Error(ErrorCode::DimensionMismatch, "permutation length");
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    if (perm[k] < 0 || perm[k] >= n || pos[perm[k]] != -1)
      throw Error(ErrorCode::InvalidArgument, "not a permutation");
    pos[perm[k]] = k;
  }
  std::vector<std::vector<int>> structs(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(n));
  std::vector<int> par(static_cast<std::size_t>(n), -1);
  std::vector<int> mark(static_cast<std::size_t>(n), -1);
  for (int j = 0; j < n; ++j) {
    auto& s = structs[j];
    s.push_back(j);
    mark[j] = j;
    for (int u : g.adj[perm[j]]) {
      const int i = pos[u];
      if (i > j && mark[i] != j) {
        mark[i] = j;
        s.push_back(i);
      }
    }
    for (int c : kids[j])
      for (int i : structs[c])
        if (i > j && mark[i] != j) {
          mark[i] = j;
          s.push_back(i);
        }
    std::sort(s.begin(), s.end());
    if (s.size() > 1) {
      par[j] = s[1];
      kids[s[1]].push_back(j);
    }
  }
  TreeDecomposition td;
  td.n = n;
  td.bags.resize(static_cast<std::size_t>(n));
  td.parent.assign(static_cast<std::size_t>(n), 0);
  int prev_root = -1;
  for (int j = 0; j < n; ++j) {
    auto& b = td.bags[j];
    for (int i : structs[j]) b.push_back(perm[i]);
    std::sort(b.begin(), b.end());
    td.parent[j] = par[j] >= 0 ? par[j] : j;
    if (par[j] < 0) {
      if (prev_root >= 0) td.parent[prev_root] = j;
      prev_root = j;
    }
  }
  return td;
}

static bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

TreeDecomposition supernode_merge(const TreeDecomposition& td) {
  const int ell = td.ell();
  std::vector<int> parent = td.parent;
  std::vector<std::vector<int>> kids = td.children();
  std::vector<char> alive(static_cast<std::size_t>(ell), 1);
  auto replace_child = [&](int p, int from, int to) {
    for (auto& k : kids[p])
      if (k == from) k = to;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int p = 0; p < ell; ++p) {
      if (!alive[p]) continue;
      // parent bag inside a child: the child takes the parent's place
      int absorber = -1;
      for (int c : kids[p])
        if (is_subset(td.bags[p], td.bags[c]) && c > absorber) absorber = c;
      if (absorber >= 0) {
        const int c = absorber;
        const bool was_root = parent[p] == p;
        parent[c] = was_root ? c : parent[p];
        if (!was_root) replace_child(parent[p], p, c);
        for (int k : kids[p])
          if (k != c) {
            parent[k] = c;
            kids[c].push_back(k);
          }
        kids[p].clear();
        alive[p] = 0;
        changed = true;
        continue;
      }
      // child bag inside the parent: fold it in
      for (std::size_t idx = 0; idx < kids[p].size();) {
        const int c = kids[p][idx];
        if (is_subset(td.bags[c], td.bags[p])) {
          kids[p].erase(kids[p].begin() + static_cast<std::ptrdiff_t>(idx));
          for (int k : kids[c]) {
            parent[k] = p;
            kids[p].push_back(k);
          }
          kids[c].clear();
          alive[c] = 0;
          changed = true;
        } else {
          ++idx;
        }
      }
    }
  }
  std::vector<int> remap(static_cast<std::size_t>(ell), -1);
  TreeDecomposition out;
  out.n = td.n;
  for (int j = 0; j < ell; ++j)
    if (alive[j]) {
      remap[j] = out.ell();
      out.bags.push_back(td.bags[j]);
    }
  out.parent.resize(out.bags.size());
  for (int j = 0; j < ell; ++j)
    if (alive[j]) out.parent[remap[j]] = remap[parent[j]];
  return out;
}

std::vector<std::string> validate(const Graph& g, const TreeDecomposition& td) {
  std::vector<std::string> issues;
  const int ell = td.ell();
  if (static_cast<int>(td.parent.size()) != ell) {
    issues.push_back("parent array length differs from bag count");
    return issues;
  }
  int roots = 0;
  for (int j = 0; j < ell; ++j) {
    if (td.parent[j] < 0 || td.parent[j] >= ell) {
      issues.push_back("bag " + std::to_string(j) + " has invalid parent");
      return issues;
    }
    if (td.parent[j] == j) ++roots;
    if (!std::is_sorted(td.bags[j].begin(), td.bags[j].end()))
      issues.push_back("bag " + std::to_string(j) + " is not sorted");
  }
  if (roots != 1) issues.push_back("tree has " + std::to_string(roots) + " roots");
  for (int j = 0; j < ell; ++j) {
    int v = j;
    for (int steps = 0; td.parent[v] != v; ++steps) {
      if (steps > ell) {
        issues.push_back("parent map has a cycle through bag " + std::to_string(j));
        return issues;
      }
      v = td.parent[v];
    }
  }
  std::vector<std::vector<int>> holders(static_cast<std::size_t>(g.n));
  for (int j = 0; j < ell; ++j)
    for (int v : td.bags[j]) {
      if (v < 0 || v >= g.n) {
        issues.push_back("bag " + std::to_string(j) + " holds unknown vertex");
        return issues;
      }
      holders[v].push_back(j);
    }
  for (int v = 0; v < g.n; ++v) {
    if (holders[v].empty()) {
      issues.push_back("vertex " + std::to_string(v) + " is in no bag");
      continue;
    }
    int tops = 0;
    for (int j : holders[v])
      if (td.parent[j] == j || !td.contains(td.parent[j], v)) ++tops;
    if (tops != 1) issues.push_back("bags holding vertex " + std::to_string(v) + " are not connected");
  }
  for (const auto& e : g.edges) {
    const auto& hu = holders[e.u].size() <= holders[e.v].size() ? holders[e.u] : holders[e.v];
    const int other = holders[e.u].size() <= holders[e.v].size() ? e.v : e.u;
    bool covered = false;
    for (int j : hu)
      if (td.contains(j, other)) {
        covered = true;
        break;
      }
    if (!covered) issues.push_back("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not covered");
  }
  return issues;
}

TreeDecomposition decompose(const Graph& g, const std::optional<std::vector<int>>& perm) {
  const std::vector<int> order = perm ? *perm : min_degree_order(g);
  return supernode_merge(symbolic_factor(g, order));
}

std::vector<int> postorder(const TreeDecomposition& td) {
  const auto kids = td.children();  // already in increasing index order
  std::vector<int> out;
  out.reserve(td.bags.size());
  const int r = td.root();
  if (r < 0) return out;
  std::vector<std::pair<int, std::size_t>> stack{{r, 0}};
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < kids[v].size()) {
      const int c = kids[v][next++];
      stack.push_back({c, 0});
    } else {
      out.push_back(v);
      stack.pop_back();
    }
  }
  return out;
}

std::vector<int> depths(const TreeDecomposition& td) {
  std::vector<int> d(td.bags.size(), -1);
  for (int j = 0; j < td.ell(); ++j) {
    std::vector<int> path;
    int v = j;
    while (d[v] < 0 && td.parent[v] != v) {
      path.push_back(v);
      v = td.parent[v];
    }
    if (d[v] < 0) d[v] = 0;
    int base = d[v];
    for (auto it = path.rbegin(); it != path.rend(); ++it) d[*it] = ++base;
  }
  return d;
}

}  // namespace sdpctc
