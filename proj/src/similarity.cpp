#include "mixclust/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace mixclust {

SimilarityMatrix SimilarityMatrix::from_triplets(std::size_t n,
                                                 std::vector<Triplet> entries,
                                                 bool allow_diagonal) {
  std::vector<Triplet> full;
  full.reserve(entries.size() * 2);
  for (const Triplet& t : entries) {
    if (t.i >= n || t.j >= n)
      throw validation_error("similarity: vertex index out of range");
    if (t.w < 0.0 || !std::isfinite(t.w))
      throw validation_error("similarity: weight must be finite and non-negative");
    if (t.i == t.j) {
      if (!allow_diagonal)
        throw validation_error("similarity: self-loop on vertex " + std::to_string(t.i));
      full.push_back(t);
    } else {
      full.push_back(t);
      full.push_back({t.j, t.i, t.w});
    }
  }
  std::sort(full.begin(), full.end(), [](const Triplet& a, const Triplet& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < full.size(); ++k) {
    if (full[k].i == full[k - 1].i && full[k].j == full[k - 1].j)
      throw validation_error("similarity: duplicate edge (" + std::to_string(full[k].i) +
                             ", " + std::to_string(full[k].j) + ")");
  }

  SimilarityMatrix m;
  m.n_ = n;
  m.row_ptr_.assign(n + 1, 0);
  m.cols_.reserve(full.size());
  m.vals_.reserve(full.size());
  for (const Triplet& t : full) ++m.row_ptr_[t.i + 1];
  for (std::size_t i = 0; i < n; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  for (const Triplet& t : full) {
    m.cols_.push_back(t.j);
    m.vals_.push_back(t.w);
  }
  m.degrees_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (double v : m.row_vals(i)) d += v;
    m.degrees_[i] = d;
  }
  return m;
}

double SimilarityMatrix::at(std::size_t i, std::size_t j) const {
  auto cols = row_cols(i);
  auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return vals_[row_ptr_[i] + static_cast<std::size_t>(it - cols.begin())];
}

std::vector<std::size_t> SimilarityMatrix::zero_degree_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_; ++i)
    if (degrees_[i] <= 0.0) out.push_back(i);
  return out;
}

void SimilarityMatrix::require_positive_degrees(const char* context) const {
  auto bad = zero_degree_vertices();
  if (!bad.empty())
    throw validation_error(std::string(context) + ": degenerate graph, vertex " +
                           std::to_string(bad.front()) + " has zero degree");
}

SimilarityMatrix SimilarityMatrix::extract_subgraph(
    std::span<const std::size_t> index_set) const {
  if (index_set.empty()) throw validation_error("extract_subgraph: empty index set");
  std::vector<std::size_t> inverse(n_, std::numeric_limits<std::size_t>::max());
  for (std::size_t k = 0; k < index_set.size(); ++k) {
    std::size_t v = index_set[k];
    if (v >= n_) throw validation_error("extract_subgraph: index out of range");
    if (k > 0 && index_set[k] <= index_set[k - 1])
      throw validation_error("extract_subgraph: index set must be strictly increasing");
    inverse[v] = k;
  }

  SimilarityMatrix m;
  m.n_ = index_set.size();
  m.row_ptr_.assign(m.n_ + 1, 0);
  for (std::size_t k = 0; k < index_set.size(); ++k) {
    auto cols = row_cols(index_set[k]);
    for (std::size_t c : cols)
      if (inverse[c] != std::numeric_limits<std::size_t>::max()) ++m.row_ptr_[k + 1];
  }
  for (std::size_t k = 0; k < m.n_; ++k) m.row_ptr_[k + 1] += m.row_ptr_[k];
  m.cols_.resize(m.row_ptr_.back());
  m.vals_.resize(m.row_ptr_.back());
  m.degrees_.assign(m.n_, 0.0);
  for (std::size_t k = 0; k < index_set.size(); ++k) {
    auto cols = row_cols(index_set[k]);
    auto vals = row_vals(index_set[k]);
    std::size_t pos = m.row_ptr_[k];
    double d = 0.0;
    for (std::size_t e = 0; e < cols.size(); ++e) {
      std::size_t mapped = inverse[cols[e]];
      if (mapped == std::numeric_limits<std::size_t>::max()) continue;
      m.cols_[pos] = mapped;
      m.vals_[pos] = vals[e];
      d += vals[e];
      ++pos;
    }
    m.degrees_[k] = d;
  }
  return m;
}

std::vector<std::vector<double>> SimilarityMatrix::to_dense() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_, 0.0));
  for (std::size_t i = 0; i < n_; ++i) {
    auto cols = row_cols(i);
    auto vals = row_vals(i);
    for (std::size_t e = 0; e < cols.size(); ++e) out[i][cols[e]] = vals[e];
  }
  return out;
}

SimilarityMatrix build_gaussian_graph(const PointSet& points, double sigma, double delta) {
  if (sigma <= 0.0) throw validation_error("gaussian graph: sigma must be positive");
  if (delta < 0.0) throw validation_error("gaussian graph: delta must be non-negative");
  const std::size_t n = points.size();
  const double inv = 1.0 / (2.0 * sigma * sigma);
  const double cutoff_sq = delta > 0.0 ? delta * delta : std::numeric_limits<double>::infinity();

  std::vector<SimilarityMatrix::Triplet> trip;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d2 = points.squared_distance(i, j);
      if (d2 == 0.0) continue;  // distinct coincident points carry weight 0
      if (d2 > cutoff_sq) continue;
      trip.push_back({i, j, std::exp(-d2 * inv)});
    }
  }
  auto w = SimilarityMatrix::from_triplets(n, std::move(trip));
  w.require_positive_degrees("gaussian graph");
  return w;
}

namespace {

// Indices of the p nearest neighbors of i, ties toward the lower index.
std::vector<std::size_t> nearest_neighbors(const PointSet& points, std::size_t i,
                                           std::size_t p) {
  const std::size_t n = points.size();
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    dist.emplace_back(points.squared_distance(i, j), j);
  }
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(p),
                    dist.end());
  std::vector<std::size_t> out(p);
  for (std::size_t k = 0; k < p; ++k) out[k] = dist[k].second;
  return out;
}

}  // namespace

SimilarityMatrix build_pnn_graph(const PointSet& points, std::size_t p) {
  const std::size_t n = points.size();
  if (p < 1 || p >= n)
    throw validation_error("p-NN graph: require 1 <= p < n");

  std::vector<std::vector<std::size_t>> nn(n);
  for (std::size_t i = 0; i < n; ++i) nn[i] = nearest_neighbors(points, i, p);

  std::vector<SimilarityMatrix::Triplet> trip;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : nn[i]) {
      const std::size_t a = std::min(i, j);
      const std::size_t b = std::max(i, j);
      trip.push_back({a, b, 1.0});
    }
  }
  // union symmetrization: the same edge may come from both endpoints
  std::sort(trip.begin(), trip.end(),
            [](const auto& x, const auto& y) { return x.i != y.i ? x.i < y.i : x.j < y.j; });
  trip.erase(std::unique(trip.begin(), trip.end(),
                         [](const auto& x, const auto& y) { return x.i == y.i && x.j == y.j; }),
             trip.end());
  return SimilarityMatrix::from_triplets(n, std::move(trip));
}

SimilarityMatrix build_epsilon_graph(const PointSet& points, double epsilon) {
  if (epsilon <= 0.0) throw validation_error("epsilon graph: epsilon must be positive");
  const std::size_t n = points.size();
  const double eps_sq = epsilon * epsilon;
  std::vector<SimilarityMatrix::Triplet> trip;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points.squared_distance(i, j) <= eps_sq) trip.push_back({i, j, 1.0});
  auto w = SimilarityMatrix::from_triplets(n, std::move(trip));
  w.require_positive_degrees("epsilon graph");
  return w;
}

SimilarityMatrix build_graph(const PointSet& points, const GraphConfig& cfg) {
  switch (cfg.kind) {
    case GraphConfig::Kind::gaussian:
      return build_gaussian_graph(points, cfg.sigma, cfg.delta);
    case GraphConfig::Kind::p_nearest:
      return build_pnn_graph(points, cfg.p);
    case GraphConfig::Kind::epsilon:
      return build_epsilon_graph(points, cfg.epsilon);
  }
  throw validation_error("build_graph: unknown graph kind");
}

SimilarityMatrix load_edge_list(std::istream& in) {
  std::vector<SimilarityMatrix::Triplet> trip;
  std::size_t max_vertex = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long i, j;
    double w;
    if (!(ls >> i)) continue;  // blank or comment-only line
    if (!(ls >> j >> w))
      throw validation_error("edge list line " + std::to_string(lineno) +
                             ": expected `i j w`");
    std::string rest;
    if (ls >> rest)
      throw validation_error("edge list line " + std::to_string(lineno) +
                             ": trailing tokens");
    if (i < 0 || j < 0)
      throw validation_error("edge list line " + std::to_string(lineno) +
                             ": negative vertex index");
    if (i == j)
      throw validation_error("edge list line " + std::to_string(lineno) + ": self-loop");
    if (w <= 0.0 || !std::isfinite(w))
      throw validation_error("edge list line " + std::to_string(lineno) +
                             ": weight must be positive");
    trip.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), w});
    max_vertex = std::max(max_vertex, static_cast<std::size_t>(std::max(i, j)));
  }
  if (trip.empty()) throw validation_error("edge list: no edges");

  // detect duplicates including mirrored listings before symmetrizing
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  keys.reserve(trip.size());
  for (auto& t : trip) keys.emplace_back(std::min(t.i, t.j), std::max(t.i, t.j));
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw validation_error("edge list: duplicate edge");

  auto w = SimilarityMatrix::from_triplets(max_vertex + 1, std::move(trip));
  w.require_positive_degrees("edge list");
  return w;
}

void save_edge_list(const SimilarityMatrix& w, std::ostream& out) {
  out.precision(17);
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto cols = w.row_cols(i);
    auto vals = w.row_vals(i);
    for (std::size_t e = 0; e < cols.size(); ++e)
      if (cols[e] > i) out << i << ' ' << cols[e] << ' ' << vals[e] << '\n';
  }
}

}  // namespace mixclust
