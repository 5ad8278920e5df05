#include "sdpctc/splitter.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace sdpctc {

std::vector<int> Split::bags() const {
  std::vector<int> out;
  for (const auto& p : parts) out.push_back(p.bag);
  return out;
}

UniquePartition build_unique_partition(const TreeDecomposition& td) {
  UniquePartition up;
  up.owner.assign(static_cast<std::size_t>(td.n), -1);
  up.members.resize(td.bags.size());
  for (int j = 0; j < td.ell(); ++j) {
    const int p = td.parent[j];
    for (int v : td.bags[j])
      if (p == j || !td.contains(p, v)) {
        up.members[j].push_back(v);
        up.owner[v] = j;
      }
  }
  return up;
}

Splitter::Splitter(const TreeDecomposition& td) : td_(td), partition_(build_unique_partition(td)) {
  rank_.assign(td.bags.size(), 0);
  const auto order = postorder(td);
  for (std::size_t k = 0; k < order.size(); ++k) rank_[order[k]] = static_cast<int>(k);
}

namespace {

std::uint64_t pair_key(int r, int c) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(r)) << 32) | static_cast<std::uint32_t>(c);
}

}  // namespace

Split Splitter::split(const SparseSymmetric& m) const {
  if (m.order() != td_.n) throw Error(ErrorCode::DimensionMismatch, "matrix order differs from decomposition");
  struct Item {
    int row, col, top;
    double value;
  };
  std::vector<Item> items;
  items.reserve(m.nnz());
  for (const auto& t : m.entries()) {
    if (t.value == 0.0) continue;
    const int ur = partition_.owner[t.row];
    const int uc = partition_.owner[t.col];
    const int top = rank_[ur] <= rank_[uc] ? ur : uc;
    if (!td_.contains(top, t.row) || !td_.contains(top, t.col))
      throw Error(ErrorCode::UncoverableEntry, "entry (" + std::to_string(t.row + 1) + "," +
                                                   std::to_string(t.col + 1) + ") is in no bag");
    items.push_back({t.row, t.col, top, t.value});
  }
  std::vector<int> candidates;
  for (const auto& it : items) candidates.push_back(it.top);
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) { return rank_[a] < rank_[b]; });
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::unordered_map<int, std::vector<int>> by_top;
  for (int k = 0; k < static_cast<int>(items.size()); ++k) by_top[items[k].top].push_back(k);

  std::vector<char> done(items.size(), 0);
  std::size_t remaining = items.size();
  std::unordered_map<std::uint64_t, std::vector<int>> by_pair;
  bool pair_index_built = false;

  Split out;
  for (int j : candidates) {
    bool needed = false;
    for (int k : by_top[j])
      if (!done[k]) {
        needed = true;
        break;
      }
    if (!needed) continue;
    const auto& bag = td_.bags[j];
    SplitPart part{j, DenseSym(static_cast<int>(bag.size()))};
    auto absorb = [&](int k) {
      const auto& it = items[k];
      part.block.at(td_.local_index(j, it.row), td_.local_index(j, it.col)) += it.value;
      done[k] = 1;
      --remaining;
    };
    const std::size_t pairs = bag.size() * (bag.size() + 1) / 2;
    if (remaining > 4 * pairs) {
      if (!pair_index_built) {
        for (int k = 0; k < static_cast<int>(items.size()); ++k) by_pair[pair_key(items[k].row, items[k].col)].push_back(k);
        pair_index_built = true;
      }
      for (std::size_t a = 0; a < bag.size(); ++a)
        for (std::size_t b = 0; b <= a; ++b) {
          auto f = by_pair.find(pair_key(bag[a], bag[b]));
          if (f == by_pair.end()) continue;
          for (int k : f->second)
            if (!done[k]) absorb(k);
        }
    } else {
      for (int k = 0; k < static_cast<int>(items.size()); ++k)
        if (!done[k] && td_.contains(j, items[k].row) && td_.contains(j, items[k].col)) absorb(k);
    }
    out.parts.push_back(std::move(part));
    if (remaining == 0) break;
  }
  return out;
}

}  // namespace sdpctc
