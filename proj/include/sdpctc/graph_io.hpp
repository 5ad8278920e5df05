#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sdpctc/chordal.hpp"

namespace sdpctc {

/// Text graph: header "n m", then m lines "u v [w]" with 1-based endpoints.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);

/// Whitespace-separated 1-based vertex order.
std::vector<int> read_permutation(std::istream& in, int n);
std::vector<int> read_permutation_file(const std::string& path, int n);

/// One line per bag: "j p(j) |J_j| : members", all 1-based.
void write_decomposition(std::ostream& out, const TreeDecomposition& td);

}  // namespace sdpctc
