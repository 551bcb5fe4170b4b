#pragma once

#include <cstddef>
#include <vector>

#include "mixclust/errors.hpp"

namespace mixclust {

// Flat labeling: n labels in [0, k), every cluster non-empty.
struct ClusterAssignment {
  std::vector<int> labels;
  int k = 0;

  static ClusterAssignment from_labels(std::vector<int> labels);
  std::size_t size() const { return labels.size(); }
  std::vector<std::vector<std::size_t>> clusters() const;
};

// Binary recursion tree of bi-partition splits. Nodes are stored flat; the
// root is node 0. Internal nodes record the gap, tolerance and iteration at
// which their split fired; every node carries its vertex index set.
struct ClusterTree {
  struct Node {
    std::vector<std::size_t> indices;  // sorted global vertex ids
    int left = -1;
    int right = -1;
    double gap = 0.0;
    double eps = 0.0;
    std::size_t t = 0;
    bool is_leaf() const { return left < 0; }
  };

  std::vector<Node> nodes;

  // Leaves in discovery (depth-first, left before right) order.
  std::vector<int> leaf_order() const;
  ClusterAssignment to_assignment(std::size_t n) const;
};

}  // namespace mixclust
