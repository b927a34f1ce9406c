#pragma once

#include <vector>

namespace simfvs {

using ElementId = int;

/// Universe plus a family of sets, optionally split into groups whose sets are
/// pairwise disjoint (the partitioned hitting set shape). Plain hitting set
/// instances use a single group.
struct SetSystem {
  int universe_size = 0;  // elements are 0..universe_size-1
  std::vector<std::vector<std::vector<ElementId>>> groups;
  int k = 0;

  int num_groups() const { return static_cast<int>(groups.size()); }
  int num_sets() const {
    int n = 0;
    for (const auto& g : groups) n += static_cast<int>(g.size());
    return n;
  }
  std::vector<std::vector<ElementId>> all_sets() const {
    std::vector<std::vector<ElementId>> out;
    for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
    return out;
  }
  /// Sets inside one group must be pairwise disjoint.
  bool groups_pairwise_disjoint() const;
};

}  // namespace simfvs
