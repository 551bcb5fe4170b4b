#pragma once

#include <vector>

#include "mixclust/cluster_types.hpp"
#include "mixclust/similarity.hpp"

namespace mixclust {

// |V_i ∩ V'_j| counts with marginals.
struct ContingencyTable {
  std::size_t rows = 0, cols = 0, n = 0;
  std::vector<std::size_t> counts;  // rows x cols, row-major
  std::vector<std::size_t> row_marginals;
  std::vector<std::size_t> col_marginals;

  static ContingencyTable build(const ClusterAssignment& a, const ClusterAssignment& b);
  std::size_t at(std::size_t i, std::size_t j) const { return counts[i * cols + j]; }
};

// k-way normalized cut: sum_i cut(V_i, V - V_i) / a(V_i).
double ncut(const SimilarityMatrix& w, const ClusterAssignment& assignment);

// Mutual information in nats.
double mutual_information(const ClusterAssignment& a, const ClusterAssignment& b);
double entropy(const ClusterAssignment& a);

// MI / sqrt(H(a) H(b)); when either entropy is 0 the quotient is undefined
// and the value is 1 for identical partitions, 0 otherwise.
double nmi(const ClusterAssignment& a, const ClusterAssignment& b);

// True iff the partitions are identical as set families (label-permutation
// invariant).
bool exact_recovery(const ClusterAssignment& a, const ClusterAssignment& truth);

}  // namespace mixclust
