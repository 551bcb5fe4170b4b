#pragma once

// Shared fixtures: the printed 6-vertex two-block example, the 10-vertex toy
// walkthrough matrix (symmetrized), clique unions, and small random graphs.

#include <cstdint>
#include <random>
#include <vector>

#include "mixclust/cluster_types.hpp"
#include "mixclust/point_set.hpp"
#include "mixclust/similarity.hpp"

namespace mixclust::testing {

// Two weakly coupled 3-vertex blocks with integer weights; degrees
// (74, 52, 82, 67, 58, 73), cut weight 8 between the blocks.
inline SimilarityMatrix example_two_block() {
  std::vector<SimilarityMatrix::Triplet> t = {
      {0, 1, 20}, {0, 2, 50}, {0, 3, 1}, {0, 4, 2}, {0, 5, 1},
      {1, 2, 30}, {1, 4, 1},  {1, 5, 1},
      {2, 3, 1},  {2, 5, 1},
      {3, 4, 25}, {3, 5, 40},
      {4, 5, 30},
  };
  return SimilarityMatrix::from_triplets(6, std::move(t));
}

inline ClusterAssignment example_two_block_partition() {
  return ClusterAssignment::from_labels({0, 0, 0, 1, 1, 1});
}

// Row-stochastic 10-vertex walkthrough matrix with three planted groups
// {0,1,2}, {3,4,5,6}, {7,8,9}. Not symmetric as printed.
inline std::vector<std::vector<double>> toy_rows() {
  return {
      {0, .5, .45, .025, .025, 0, 0, 0, 0, 0},
      {.4, 0, .55, 0, 0, 0, .05, 0, 0, 0},
      {.3, .7, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, .01, 0, 0, .3, .4, .28, 0, .01, 0},
      {0, 0, 0, .4, 0, .3, .3, 0, 0, 0},
      {0, 0, .1, .25, .25, 0, .4, 0, 0, 0},
      {.01, 0, 0, .4, .3, .27, 0, .02, 0, 0},
      {0, .01, 0, 0, 0, 0, 0, 0, .5, .49},
      {0, 0, 0, .02, 0, 0, 0, .49, 0, .49},
      {0, 0, 0, 0, 0, 0, 0, .7, .3, 0},
  };
}

// Symmetrized toy matrix: w_ij = (m_ij + m_ji) / 2.
inline SimilarityMatrix toy_matrix() {
  auto rows = toy_rows();
  std::vector<SimilarityMatrix::Triplet> t;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i + 1; j < 10; ++j) {
      const double w = (rows[i][j] + rows[j][i]) / 2.0;
      if (w > 0.0) t.push_back({i, j, w});
    }
  return SimilarityMatrix::from_triplets(10, std::move(t));
}

inline ClusterAssignment toy_partition() {
  return ClusterAssignment::from_labels({0, 0, 0, 1, 1, 1, 1, 2, 2, 2});
}

// Disjoint union of `count` unit-weight cliques of `size` vertices each.
inline SimilarityMatrix clique_union(std::size_t count, std::size_t size) {
  std::vector<SimilarityMatrix::Triplet> t;
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t base = c * size;
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j) t.push_back({base + i, base + j, 1.0});
  }
  return SimilarityMatrix::from_triplets(count * size, std::move(t));
}

inline ClusterAssignment clique_labels(std::size_t count, std::size_t size) {
  std::vector<int> labels(count * size);
  for (std::size_t v = 0; v < labels.size(); ++v)
    labels[v] = static_cast<int>(v / size);
  return ClusterAssignment::from_labels(std::move(labels));
}

// Random connected-in-expectation two-block graph: dense unit edges within
// blocks (prob in_p), sparse weak cross edges (prob cross_p, weight
// cross_w). Guarantees positive degrees by wiring a path within each block.
inline SimilarityMatrix random_two_block(std::size_t n, std::uint64_t seed,
                                         double in_p = 0.6, double cross_p = 0.05,
                                         double cross_w = 0.2) {
  const std::size_t half = n / 2;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same = (i < half) == (j < half);
      if (same && uni(rng) < in_p) dense[i][j] = 1.0;
      if (!same && uni(rng) < cross_p) dense[i][j] = cross_w;
    }
  for (std::size_t i = 0; i + 1 < half; ++i) dense[i][i + 1] = 1.0;
  for (std::size_t i = half; i + 1 < n; ++i) dense[i][i + 1] = 1.0;
  std::vector<SimilarityMatrix::Triplet> t;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (dense[i][j] > 0.0) t.push_back({i, j, dense[i][j]});
  return SimilarityMatrix::from_triplets(n, std::move(t));
}

inline ClusterAssignment two_block_partition(std::size_t n) {
  std::vector<int> labels(n, 1);
  for (std::size_t i = 0; i < n / 2; ++i) labels[i] = 0;
  return ClusterAssignment::from_labels(std::move(labels));
}

inline PointSet make_points(std::vector<double> coords, std::size_t d) {
  const std::size_t n = coords.size() / d;
  return PointSet(n, d, std::move(coords));
}

// Positive vector normalized to sum 1, for the convergence-bound checks.
inline std::vector<double> random_probability_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  std::vector<double> x(n);
  double sum = 0.0;
  for (double& v : x) sum += (v = uni(rng));
  for (double& v : x) v /= sum;
  return x;
}

}  // namespace mixclust::testing
