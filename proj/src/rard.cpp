#include "mixclust/rard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "mixclust/oracle.hpp"

namespace mixclust {

void RardConfig::validate() const {
  if (eps0 <= 0.0) throw validation_error("rard config: eps0 must be positive");
  if (resolved_eps_min() > eps0)
    throw validation_error("rard config: eps_min must not exceed eps0");
  if (t_max < 2) throw validation_error("rard config: t_max must be at least 2");
  if (b <= 0.0) throw validation_error("rard config: b must be positive");
  if (alpha < 0.0 || alpha > 1.0)
    throw validation_error("rard config: alpha must lie in [0, 1]");
}

GapReport find_gap(std::vector<double> x, double b) {
  GapReport report;
  std::sort(x.begin(), x.end());
  report.sorted_x = std::move(x);
  const std::size_t n = report.sorted_x.size();
  if (n < 2) return report;  // a single element is a leaf

  const double threshold = b / (2.0 * static_cast<double>(n));
  report.gaps.resize(n - 1, 0.0);
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double diff = report.sorted_x[i + 1] - report.sorted_x[i];
    if (diff >= threshold) {
      report.gaps[i] = diff;
      if (diff > best) {
        best = diff;
        report.argmax = i;
      }
    }
  }
  return report;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double hash_unit(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

AgentInitializer default_agent_initializer(std::uint64_t seed, double b) {
  return [seed, b](std::size_t call_id, std::size_t vertex) {
    return b * hash_unit(seed, call_id, vertex);
  };
}

namespace {

struct RardDriver {
  const RardConfig& cfg;
  const AgentInitializer& init;
  double eps_min;
  ClusterTree tree;
  std::size_t call_counter = 0;

  int new_node(std::vector<std::size_t> indices) {
    tree.nodes.push_back({});
    tree.nodes.back().indices = std::move(indices);
    return static_cast<int>(tree.nodes.size() - 1);
  }

  int run(const SimilarityMatrix& sub, const std::vector<std::size_t>& global) {
    int node_id = new_node(global);
    if (global.size() == 1) return node_id;

    // Vertices isolated within this subgraph become singleton leaves before
    // the operator is built.
    auto degenerate = sub.zero_degree_vertices();
    if (!degenerate.empty()) {
      const std::size_t local = degenerate.front();
      std::vector<std::size_t> rest_local;
      for (std::size_t i = 0; i < sub.size(); ++i)
        if (i != local) rest_local.push_back(i);
      int left = new_node({global[local]});
      SimilarityMatrix rest = sub.extract_subgraph(rest_local);
      std::vector<std::size_t> rest_global;
      for (std::size_t i : rest_local) rest_global.push_back(global[i]);
      int right = run(rest, rest_global);
      tree.nodes[static_cast<std::size_t>(node_id)].left = left;
      tree.nodes[static_cast<std::size_t>(node_id)].right = right;
      tree.nodes[static_cast<std::size_t>(node_id)].eps = cfg.eps0;
      return node_id;
    }

    const std::size_t call_id = call_counter++;
    MixingOperator op(sub, cfg.alpha);
    MixingState state;
    state.x.resize(global.size());
    for (std::size_t i = 0; i < global.size(); ++i) state.x[i] = init(call_id, global[i]);

    double eps = cfg.eps0;
    while (true) {
      run_until_tolerance(op, state, eps, cfg.t_max);
      GapReport gap = find_gap(state.x, cfg.b);
      if (gap.argmax) {
        split(node_id, sub, global, state, gap, eps);
        return node_id;
      }
      if (eps <= eps_min || state.t >= cfg.t_max) {  // leaf
        tree.nodes[static_cast<std::size_t>(node_id)].eps = eps;
        tree.nodes[static_cast<std::size_t>(node_id)].t = state.t;
        return node_id;
      }
      eps /= 2.0;
    }
  }

  void split(int node_id, const SimilarityMatrix& sub,
             const std::vector<std::size_t>& global, const MixingState& state,
             const GapReport& gap, double eps) {
    std::vector<std::size_t> order(global.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return state.x[a] != state.x[b] ? state.x[a] < state.x[b] : global[a] < global[b];
    });

    const std::size_t cut = *gap.argmax + 1;  // first `cut` sorted entries go left
    std::vector<std::size_t> left_local(order.begin(),
                                        order.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<std::size_t> right_local(order.begin() + static_cast<std::ptrdiff_t>(cut),
                                         order.end());
    std::sort(left_local.begin(), left_local.end());
    std::sort(right_local.begin(), right_local.end());

    auto to_global = [&](const std::vector<std::size_t>& local) {
      std::vector<std::size_t> out;
      out.reserve(local.size());
      for (std::size_t i : local) out.push_back(global[i]);
      return out;
    };

    SimilarityMatrix left_sub = sub.extract_subgraph(left_local);
    SimilarityMatrix right_sub = sub.extract_subgraph(right_local);
    int left = run(left_sub, to_global(left_local));
    int right = run(right_sub, to_global(right_local));

    ClusterTree::Node& node = tree.nodes[static_cast<std::size_t>(node_id)];
    node.left = left;
    node.right = right;
    node.gap = gap.gaps[*gap.argmax];
    node.eps = eps;
    node.t = state.t;
  }
};

}  // namespace

std::pair<ClusterTree, ClusterAssignment> rard_cluster(const SimilarityMatrix& w,
                                                       const RardConfig& cfg,
                                                       const AgentInitializer& init) {
  cfg.validate();
  AgentInitializer actual = init ? init : default_agent_initializer(cfg.seed, cfg.b);
  RardDriver driver{cfg, actual, cfg.resolved_eps_min()};
  std::vector<std::size_t> all(w.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  driver.run(w, all);
  ClusterAssignment assignment = driver.tree.to_assignment(w.size());
  return {std::move(driver.tree), std::move(assignment)};
}

namespace {

struct TheoreticalDriver {
  const RardConfig& cfg;
  double eps;
  std::size_t k_hint;
  AgentInitializer init;
  ClusterTree tree;
  std::size_t call_counter = 0;

  int new_node(std::vector<std::size_t> indices) {
    tree.nodes.push_back({});
    tree.nodes.back().indices = std::move(indices);
    return static_cast<int>(tree.nodes.size() - 1);
  }

  int run(const SimilarityMatrix& sub, const std::vector<std::size_t>& global) {
    int node_id = new_node(global);
    if (global.size() == 1) return node_id;

    auto degenerate = sub.zero_degree_vertices();
    if (!degenerate.empty()) {
      const std::size_t local = degenerate.front();
      std::vector<std::size_t> rest_local;
      for (std::size_t i = 0; i < sub.size(); ++i)
        if (i != local) rest_local.push_back(i);
      int left = new_node({global[local]});
      std::vector<std::size_t> rest_global;
      for (std::size_t i : rest_local) rest_global.push_back(global[i]);
      SimilarityMatrix rest = sub.extract_subgraph(rest_local);
      int right = run(rest, rest_global);
      tree.nodes[static_cast<std::size_t>(node_id)].left = left;
      tree.nodes[static_cast<std::size_t>(node_id)].right = right;
      return node_id;
    }

    const std::size_t n = sub.size();
    EigenReport eig = eigen_decompose(sub);
    const std::size_t k = std::min(k_hint, n - 1);
    const double rho = std::abs(1.0 - cfg.alpha * eig.lambdas[k]);  // lambda_{k+1}

    std::size_t steps = cfg.t_max;
    if (rho <= 0.0) {
      steps = 1;
    } else if (rho < 1.0) {
      steps = static_cast<std::size_t>(std::ceil(std::log(eps) / std::log(rho)));
      steps = std::clamp<std::size_t>(steps, 1, cfg.t_max);
    }

    const std::size_t call_id = call_counter++;
    MixingOperator op(sub, cfg.alpha);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = init(call_id, global[i]);
    for (std::size_t t = 0; t < steps; ++t) x = op.apply(x);

    GapReport gap = find_gap(x, cfg.b);
    if (!gap.argmax) return node_id;  // leaf

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return x[a] != x[b] ? x[a] < x[b] : global[a] < global[b];
    });
    const std::size_t cut = *gap.argmax + 1;
    std::vector<std::size_t> left_local(order.begin(),
                                        order.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<std::size_t> right_local(order.begin() + static_cast<std::ptrdiff_t>(cut),
                                         order.end());
    std::sort(left_local.begin(), left_local.end());
    std::sort(right_local.begin(), right_local.end());

    auto to_global = [&](const std::vector<std::size_t>& local) {
      std::vector<std::size_t> out;
      for (std::size_t i : local) out.push_back(global[i]);
      return out;
    };
    SimilarityMatrix left_sub = sub.extract_subgraph(left_local);
    SimilarityMatrix right_sub = sub.extract_subgraph(right_local);
    int left = run(left_sub, to_global(left_local));
    int right = run(right_sub, to_global(right_local));
    ClusterTree::Node& node = tree.nodes[static_cast<std::size_t>(node_id)];
    node.left = left;
    node.right = right;
    node.gap = gap.gaps[*gap.argmax];
    node.t = steps;
    return node_id;
  }
};

}  // namespace

ClusterAssignment rard_cluster_theoretical(const SimilarityMatrix& w, double eps,
                                           std::size_t k_hint, const RardConfig& cfg) {
  cfg.validate();
  if (eps <= 0.0) throw validation_error("rard theoretical: eps must be positive");
  if (k_hint < 1) throw validation_error("rard theoretical: k_hint must be positive");
  TheoreticalDriver driver{cfg, eps, k_hint, default_agent_initializer(cfg.seed, cfg.b)};
  std::vector<std::size_t> all(w.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  driver.run(w, all);
  return driver.tree.to_assignment(w.size());
}

namespace detail {

namespace {

double row_distance_sq(const std::vector<double>& rows, std::size_t d, std::size_t i,
                       const std::vector<double>& centroid, std::size_t c) {
  double s = 0.0;
  for (std::size_t t = 0; t < d; ++t) {
    const double diff = rows[i * d + t] - centroid[c * d + t];
    s += diff * diff;
  }
  return s;
}

}  // namespace

KMeansResult kmeans(const std::vector<double>& rows, std::size_t n, std::size_t d,
                    std::size_t k, std::uint64_t seed, std::size_t restarts) {
  if (k < 1 || k > n) throw validation_error("kmeans: require 1 <= k <= n");

  KMeansResult best{{}, std::numeric_limits<double>::infinity()};
  for (std::size_t r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(splitmix64(seed) ^ r);
    std::vector<double> centroids(k * d);
    std::vector<std::size_t> chosen;

    // farthest-point seeding from a random first point
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    chosen.push_back(pick(rng));
    while (chosen.size() < k) {
      std::size_t far = 0;
      double far_dist = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (std::size_t c : chosen) {
          double s = 0.0;
          for (std::size_t t = 0; t < d; ++t) {
            const double diff = rows[i * d + t] - rows[c * d + t];
            s += diff * diff;
          }
          nearest = std::min(nearest, s);
        }
        if (nearest > far_dist) {
          far_dist = nearest;
          far = i;
        }
      }
      chosen.push_back(far);
    }
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t t = 0; t < d; ++t) centroids[c * d + t] = rows[chosen[c] * d + t];

    std::vector<int> labels(n, 0);
    for (std::size_t iter = 0; iter < 100; ++iter) {
      bool changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        int best_c = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
          const double dist = row_distance_sq(rows, d, i, centroids, c);
          if (dist < best_d) {
            best_d = dist;
            best_c = static_cast<int>(c);
          }
        }
        if (labels[i] != best_c) {
          labels[i] = best_c;
          changed = true;
        }
      }

      std::vector<double> sums(k * d, 0.0);
      std::vector<std::size_t> counts(k, 0);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = static_cast<std::size_t>(labels[i]);
        ++counts[c];
        for (std::size_t t = 0; t < d; ++t) sums[c * d + t] += rows[i * d + t];
      }
      for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) {
          // re-seed an emptied centroid from the farthest point
          std::size_t far = 0;
          double far_dist = -1.0;
          for (std::size_t i = 0; i < n; ++i) {
            const double dist = row_distance_sq(
                rows, d, i, centroids, static_cast<std::size_t>(labels[i]));
            if (dist > far_dist) {
              far_dist = dist;
              far = i;
            }
          }
          for (std::size_t t = 0; t < d; ++t) centroids[c * d + t] = rows[far * d + t];
          changed = true;
          continue;
        }
        for (std::size_t t = 0; t < d; ++t)
          centroids[c * d + t] = sums[c * d + t] / static_cast<double>(counts[c]);
      }
      if (!changed) break;
    }

    double wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      wcss += row_distance_sq(rows, d, i, centroids, static_cast<std::size_t>(labels[i]));
    if (wcss < best.wcss) best = {labels, wcss};
  }

  // compact the label range; reseeding can leave holes
  std::vector<int> remap(k, -1);
  int next = 0;
  for (int& l : best.labels) {
    if (remap[static_cast<std::size_t>(l)] < 0) remap[static_cast<std::size_t>(l)] = next++;
    l = remap[static_cast<std::size_t>(l)];
  }
  return best;
}

}  // namespace detail

ClusterAssignment prd_cluster(const PointSet& points, const SimilarityMatrix& w,
                              std::size_t k, const RardConfig& cfg) {
  cfg.validate();
  if (points.size() != w.size())
    throw validation_error("prd: point count and graph size differ");
  if (k < 1) throw validation_error("prd: k must be positive");

  MixingOperator op(w, cfg.alpha);
  const std::size_t n = points.size();
  const std::size_t d = points.dim();

  std::vector<double> cols(n * d);  // column-major for per-dimension kernels
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < d; ++t) cols[t * n + i] = points.row(i)[t];

  std::vector<double> next(n * d);
  double y_prev = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t t = 0; t < cfg.t_max; ++t) {
    for (std::size_t c = 0; c < d; ++c)
      op.apply(std::span<const double>(cols.data() + c * n, n),
               std::span<double>(next.data() + c * n, n));
    double diff_sq = 0.0;
    for (std::size_t i = 0; i < n * d; ++i) {
      const double diff = next[i] - cols[i];
      diff_sq += diff * diff;
    }
    const double y = std::sqrt(diff_sq);
    cols.swap(next);
    if (!std::isnan(y_prev) && std::abs(y - y_prev) <= cfg.eps0) break;
    y_prev = y;
  }

  std::vector<double> rows(n * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < d; ++t) rows[i * d + t] = cols[t * n + i];

  auto result = detail::kmeans(rows, n, d, k, cfg.seed);
  return ClusterAssignment::from_labels(std::move(result.labels));
}

}  // namespace mixclust
