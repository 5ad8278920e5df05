#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "sdpctc/block_cholesky.hpp"
#include "sdpctc/chordal.hpp"
#include "sdpctc/linalg.hpp"
#include "sdpctc/problem.hpp"

namespace testkit {

using sdpctc::Mat;
using sdpctc::Vec;

inline Mat random_sym(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = nd(rng);
  return m;
}

inline Mat random_pd(int n, std::mt19937_64& rng, double shift = 0.5) {
  std::normal_distribution<double> nd;
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = nd(rng);
  return g * g.transpose() / n + shift * Mat::Identity(n, n);
}

/// Orthonormal Q with svec(X) = Q vec(X), built from the basis definition.
inline Mat svec_basis(int n) {
  const int d = n * (n + 1) / 2;
  Mat q = Mat::Zero(d, n * n);
  int row = 0;
  for (int c = 0; c < n; ++c)
    for (int r = c; r < n; ++r, ++row) {
      if (r == c) {
        q(row, c * n + r) = 1.0;
      } else {
        q(row, c * n + r) = std::sqrt(0.5);
        q(row, r * n + c) = std::sqrt(0.5);
      }
    }
  return q;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

/// Parent array of a uniformly grown random tree rooted at the last index.
inline std::vector<int> random_tree(int ell, std::mt19937_64& rng) {
  std::vector<int> parent(static_cast<std::size_t>(ell));
  parent[ell - 1] = ell - 1;
  for (int j = ell - 2; j >= 0; --j) {
    std::uniform_int_distribution<int> pick(j + 1, ell - 1);
    parent[j] = pick(rng);
  }
  return parent;
}

/// Random connected graph: a random tree plus extra edges.
inline sdpctc::Graph random_graph(int n, int extra, std::mt19937_64& rng) {
  std::vector<sdpctc::Edge> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edges.push_back({pick(rng), v, 1.0});
  }
  std::uniform_int_distribution<int> any(0, n - 1);
  for (int k = 0; k < extra; ++k) {
    int u = any(rng), v = any(rng);
    if (u != v) edges.push_back({std::min(u, v), std::max(u, v), 1.0});
  }
  return sdpctc::Graph::from_edges(n, edges);
}

/// Smallest number of bags covering every nonzero of m, by enumeration.
inline int brute_force_cover(const sdpctc::SparseSymmetric& m, const sdpctc::TreeDecomposition& td) {
  std::vector<std::pair<int, int>> nz;
  for (const auto& t : m.entries())
    if (t.value != 0.0) nz.push_back({t.row, t.col});
  const int ell = td.ell();
  int best = ell + 1;
  for (unsigned mask = 0; mask < (1u << ell); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size >= best) continue;
    bool ok = true;
    for (auto [r, c] : nz) {
      bool hit = false;
      for (int j = 0; j < ell && !hit; ++j)
        hit = (mask >> j & 1u) && td.contains(j, r) && td.contains(j, c);
      if (!hit) {
        ok = false;
        break;
      }
    }
    if (ok) best = size;
  }
  return best;
}

/// Number of block pairs (a, b) that become nonzero in the Cholesky factor of a
/// block matrix with the given pattern, eliminated in the given order, but are
/// zero in the matrix itself.
inline int block_fill(const std::vector<std::set<int>>& pattern, const std::vector<int>& order) {
  const int n = static_cast<int>(pattern.size());
  std::vector<std::set<int>> adj = pattern;
  std::vector<char> gone(static_cast<std::size_t>(n), 0);
  int fill = 0;
  for (int v : order) {
    std::vector<int> nb;
    for (int u : adj[v])
      if (!gone[u] && u != v) nb.push_back(u);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (!adj[nb[a]].count(nb[b])) {
          adj[nb[a]].insert(nb[b]);
          adj[nb[b]].insert(nb[a]);
          ++fill;
        }
    gone[v] = 1;
  }
  return fill;
}

inline sdpctc::SparseSymmetric sparse_from_dense(const Mat& m, double tol = 0.0) {
  sdpctc::SparseSymmetric s(static_cast<int>(m.rows()));
  for (int c = 0; c < m.cols(); ++c)
    for (int r = c; r < m.rows(); ++r)
      if (std::abs(m(r, c)) > tol) s.add(r, c, m(r, c));
  return s;
}

/// Random problem whose constraints each live inside one clique of a chordal
/// pattern: X_ii = 1 for all i, plus entry and clique constraints fitted to a
/// random correlation matrix, so both primal and dual are strictly feasible.
inline sdpctc::SdpProblem random_separable_instance(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> extra_d(0, n);
  const sdpctc::Graph g = random_graph(n, extra_d(rng), rng);
  const sdpctc::TreeDecomposition td = sdpctc::decompose(g);
  Mat x0 = random_pd(n, rng, 1.0);
  const Vec dsq = x0.diagonal().cwiseSqrt().cwiseInverse();
  x0 = dsq.asDiagonal() * x0 * dsq.asDiagonal();
  std::normal_distribution<double> nd;
  sdpctc::SdpProblem sdp;
  sdp.n = n;
  sdp.C = sdpctc::SparseSymmetric(n);
  for (int i = 0; i < n; ++i) sdp.C.add(i, i, 1.0 + std::abs(nd(rng)));
  for (const auto& e : g.edges) sdp.C.add(e.v, e.u, nd(rng));
  sdp.C.coalesce();
  for (int i = 0; i < n; ++i) {
    sdpctc::SparseSymmetric a(n);
    a.add(i, i, 1.0);
    sdp.add_constraint(std::move(a), 1.0);
  }
  std::uniform_int_distribution<int> coin(0, 2);
  for (const auto& e : g.edges) {
    if (coin(rng) != 0) continue;
    sdpctc::SparseSymmetric a(n);
    a.add(e.v, e.u, 0.5);
    sdp.add_constraint(std::move(a), x0(e.v, e.u));
  }
  for (int j = 0; j < td.ell(); ++j) {
    const auto& bag = td.bags[j];
    if (bag.size() < 2 || coin(rng) != 0) continue;
    sdpctc::SparseSymmetric a(n);
    for (std::size_t p = 0; p < bag.size(); ++p)
      for (std::size_t q = 0; q < p; ++q) a.add(bag[p], bag[q], nd(rng));
    a.coalesce();
    sdp.add_constraint(a, a.dot(x0));
  }
  return sdp;
}

inline sdpctc::BlockTreeMatrix random_tree_matrix(int ell, int max_order, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> od(1, max_order);
  std::vector<int> sizes(static_cast<std::size_t>(ell));
  for (auto& s : sizes) s = od(rng);
  // shuffle labels so the tree is not already in topological order
  std::vector<int> parent = random_tree(ell, rng);
  std::vector<int> label(static_cast<std::size_t>(ell));
  for (int i = 0; i < ell; ++i) label[i] = i;
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<int> relabeled(static_cast<std::size_t>(ell));
  for (int i = 0; i < ell; ++i) relabeled[label[i]] = label[parent[i]];
  sdpctc::BlockTreeMatrix h(sizes, relabeled);
  std::normal_distribution<double> nd;
  for (int j = 0; j < ell; ++j) {
    if (relabeled[j] == j) continue;
    for (int r = 0; r < h.off[j].rows(); ++r)
      for (int c = 0; c < h.off[j].cols(); ++c) h.off[j](r, c) = nd(rng);
  }
  // diagonally dominant blocks keep H positive definite
  for (int j = 0; j < ell; ++j) {
    h.diag[j] = random_pd(sizes[j], rng);
    double row_mass = 0.0;
    for (int k = 0; k < ell; ++k) {
      if (relabeled[k] == j && k != j) row_mass += h.off[k].cwiseAbs().sum();
      if (k == j && relabeled[j] != j) row_mass += h.off[j].cwiseAbs().sum();
    }
    h.diag[j].diagonal().array() += row_mass;
  }
  return h;
}

inline std::vector<std::set<int>> block_pattern(const sdpctc::BlockTreeMatrix& h) {
  std::vector<std::set<int>> pat(static_cast<std::size_t>(h.num_blocks()));
  for (int j = 0; j < h.num_blocks(); ++j) {
    pat[j].insert(j);
    if (h.parent[j] != j) {
      pat[j].insert(h.parent[j]);
      pat[h.parent[j]].insert(j);
    }
  }
  return pat;
}

inline int nonzero_lower_blocks(const Mat& l, const std::vector<int>& sizes_in_order) {
  std::vector<int> off(sizes_in_order.size() + 1, 0);
  for (std::size_t k = 0; k < sizes_in_order.size(); ++k) off[k + 1] = off[k] + sizes_in_order[k];
  int count = 0;
  for (std::size_t a = 0; a < sizes_in_order.size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (l.block(off[a], off[b], sizes_in_order[a], sizes_in_order[b]).cwiseAbs().maxCoeff() > 0.0) ++count;
  return count;
}

}  // namespace testkit
