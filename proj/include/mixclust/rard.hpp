#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "mixclust/cluster_types.hpp"
#include "mixclust/mixing.hpp"
#include "mixclust/point_set.hpp"

namespace mixclust {

struct RardConfig {
  double eps0 = 1e-3;
  // 0 resolves to eps0 / 2^10 at run time.
  double eps_min = 0.0;
  std::size_t t_max = 2000;
  double b = 1.0;
  double alpha = 1.0;
  std::uint64_t seed = 0;

  double resolved_eps_min() const { return eps_min > 0.0 ? eps_min : eps0 / 1024.0; }
  void validate() const;
};

struct GapReport {
  std::vector<double> sorted_x;
  std::vector<double> gaps;                 // gaps[i] = 0 or >= b/(2n)
  std::optional<std::size_t> argmax;        // smallest index of the largest nonzero gap
};

// Gap criterion on the sorted iterate: a consecutive difference counts only
// when it reaches b/(2n), with n the current vector length.
GapReport find_gap(std::vector<double> x, double b);

// Per-call initial agent values. Arguments are the recursion call counter (in
// discovery order) and the global vertex id, so a consistent relabeling of
// the graph permutes the draws with it.
using AgentInitializer = std::function<double(std::size_t call_id, std::size_t vertex)>;

AgentInitializer default_agent_initializer(std::uint64_t seed, double b);

// Recursive gap-based bi-partitioning. Each call draws fresh agents, runs the
// mixing process to the current tolerance, and either splits at the largest
// gap (recursing with the tolerance reset to eps0) or halves the tolerance on
// the same trajectory until eps_min or t_max declares a leaf. Zero-degree
// vertices within a subgraph split off as singleton leaves.
std::pair<ClusterTree, ClusterAssignment> rard_cluster(
    const SimilarityMatrix& w, const RardConfig& cfg,
    const AgentInitializer& init = nullptr);

// Same recursion, but the stopping rule uses oracle eigenvalues of the
// current subgraph: run t steps with max_{l>k} |1 - alpha lambda_l|^t <= eps,
// k clipped to the subgraph size. Oracle-scale only; used to compare the two
// stopping rules in tests.
ClusterAssignment rard_cluster_theoretical(const SimilarityMatrix& w, double eps,
                                           std::size_t k_hint, const RardConfig& cfg);

// Mixing applied to the point coordinates themselves, then k-means on the
// transformed rows. Kept for the documented failure mode on nested clusters.
ClusterAssignment prd_cluster(const PointSet& points, const SimilarityMatrix& w,
                              std::size_t k, const RardConfig& cfg);

namespace detail {

struct KMeansResult {
  std::vector<int> labels;
  double wcss;
};

// Lloyd iterations with farthest-point seeding, 100 iteration cap,
// `restarts` restarts keeping the best within-cluster sum of squares.
KMeansResult kmeans(const std::vector<double>& rows, std::size_t n, std::size_t d,
                    std::size_t k, std::uint64_t seed, std::size_t restarts = 10);

}  // namespace detail

}  // namespace mixclust
