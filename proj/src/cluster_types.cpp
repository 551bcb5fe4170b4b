#include "mixclust/cluster_types.hpp"

#include <algorithm>

namespace mixclust {

ClusterAssignment ClusterAssignment::from_labels(std::vector<int> labels) {
  if (labels.empty()) throw validation_error("cluster assignment: empty labeling");
  int max_label = -1;
  for (int l : labels) {
    if (l < 0) throw validation_error("cluster assignment: negative label");
    max_label = std::max(max_label, l);
  }
  std::vector<bool> seen(static_cast<std::size_t>(max_label) + 1, false);
  for (int l : labels) seen[static_cast<std::size_t>(l)] = true;
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw validation_error("cluster assignment: empty cluster label");
  return {std::move(labels), max_label + 1};
}

std::vector<std::vector<std::size_t>> ClusterAssignment::clusters() const {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < labels.size(); ++i)
    out[static_cast<std::size_t>(labels[i])].push_back(i);
  return out;
}

std::vector<int> ClusterTree::leaf_order() const {
  std::vector<int> order;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    const Node& node = nodes[static_cast<std::size_t>(id)];
    if (node.is_leaf()) {
      order.push_back(id);
    } else {
      stack.push_back(node.right);  // left visited first
      stack.push_back(node.left);
    }
  }
  return order;
}

ClusterAssignment ClusterTree::to_assignment(std::size_t n) const {
  std::vector<int> labels(n, -1);
  int next = 0;
  for (int id : leaf_order()) {
    for (std::size_t v : nodes[static_cast<std::size_t>(id)].indices) labels[v] = next;
    ++next;
  }
  for (int l : labels)
    if (l < 0) throw guard_error("cluster tree: leaves do not cover all vertices");
  return ClusterAssignment{std::move(labels), next};
}

}  // namespace mixclust
