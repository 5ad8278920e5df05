#pragma once

#include <vector>

#include "sdpctc/chordal.hpp"
#include "sdpctc/linalg.hpp"

namespace sdpctc {

/// U_j = J_j \ J_p(j) (U_root = J_root); owner[k] is the unique bag with k in U_j.
struct UniquePartition {
  std::vector<int> owner;
  std::vector<std::vector<int>> members;
};

UniquePartition build_unique_partition(const TreeDecomposition& td);

struct SplitPart {
  int bag;
  DenseSym block;  // indexed by positions inside the bag
};

/// Minimum-cardinality edge-cover split of one matrix. Parts are listed in
/// the topological order in which the bags were chosen.
struct Split {
  std::vector<SplitPart> parts;
  std::vector<int> bags() const;
};

class Splitter {
 public:
  explicit Splitter(const TreeDecomposition& td);

  Split split(const SparseSymmetric& m) const;
  bool is_partially_separable(const SparseSymmetric& m) const { return split(m).parts.size() <= 1; }

  const TreeDecomposition& td() const { return td_; }
  const UniquePartition& partition() const { return partition_; }
  /// Position of each bag in the children-first postorder.
  const std::vector<int>& topo_rank() const { return rank_; }

 private:
  const TreeDecomposition& td_;
  UniquePartition partition_;
  std::vector<int> rank_;
};

}  // namespace sdpctc
