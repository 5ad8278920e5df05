#include "sdpctc/graph_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace sdpctc {

namespace {

std::string at_line(int line) { return "line " + std::to_string(line); }

bool next_content_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  if (!next_content_line(in, line, lineno)) throw Error(ErrorCode::ParseError, "missing graph header");
  std::istringstream hs(line);
  long n = -1, m = -1;
  if (!(hs >> n >> m) || n < 0 || m < 0) throw Error(ErrorCode::ParseError, at_line(lineno) + ": bad header");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long k = 0; k < m; ++k) {
    if (!next_content_line(in, line, lineno))
      throw Error(ErrorCode::ParseError, "expected " + std::to_string(m) + " edges, found " + std::to_string(k));
    std::istringstream ls(line);
    long u = 0, v = 0;
    double w = 1.0;
    if (!(ls >> u >> v)) throw Error(ErrorCode::ParseError, at_line(lineno) + ": bad edge");
    if (!(ls >> w)) w = 1.0;
    if (u < 1 || v < 1 || u > n || v > n) throw Error(ErrorCode::ParseError, at_line(lineno) + ": vertex out of range");
    edges.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1), w});
  }
  return Graph::from_edges(static_cast<int>(n), edges);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << g.n << ' ' << g.edges.size() << '\n';
  out << std::setprecision(17);
  for (const auto& e : g.edges) {
    out << e.u + 1 << ' ' << e.v + 1;
    if (e.weight != 1.0) out << ' ' << e.weight;
    out << '\n';
  }
}

std::vector<int> read_permutation(std::istream& in, int n) {
  std::vector<int> perm;
  long v = 0;
  while (in >> v) {
    if (v < 1 || v > n) throw Error(ErrorCode::ParseError, "permutation entry out of range");
    perm.push_back(static_cast<int>(v - 1));
  }
  if (!in.eof()) throw Error(ErrorCode::ParseError, "non-numeric permutation entry");
  if (static_cast<int>(perm.size()) != n) throw Error(ErrorCode::ParseError, "permutation has wrong length");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int p : perm) {
    if (seen[p]) throw Error(ErrorCode::ParseError, "permutation repeats a vertex");
    seen[p] = 1;
  }
  return perm;
}

std::vector<int> read_permutation_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  return read_permutation(in, n);
}

void write_decomposition(std::ostream& out, const TreeDecomposition& td) {
  for (int j = 0; j < td.ell(); ++j) {
    out << j + 1 << ' ' << td.parent[j] + 1 << ' ' << td.bags[j].size() << " :";
    for (int v : td.bags[j]) out << ' ' << v + 1;
    out << '\n';
  }
}

}  // namespace sdpctc
