#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mixclust/point_set.hpp"

namespace mixclust {

// Symmetric sparse non-negative weight matrix in CSR layout with cached
// per-vertex degrees d_i = sum_j w_ij. Graph builders produce a zero
// diagonal; diagonal entries are permitted so block-ideal matrices with
// adjusted diagonals can reuse the same kernels.
class SimilarityMatrix {
 public:
  struct Triplet {
    std::size_t i, j;
    double w;
  };

  // Builds from an upper-or-mixed triplet list; every (i,j) with i != j is
  // mirrored. Duplicate (i,j) pairs are rejected.
  static SimilarityMatrix from_triplets(std::size_t n, std::vector<Triplet> entries,
                                        bool allow_diagonal = false);

  std::size_t size() const { return n_; }
  std::size_t nnz() const { return cols_.size(); }

  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  std::span<const double> row_vals(std::size_t i) const {
    return {vals_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }

  const std::vector<double>& degrees() const { return degrees_; }
  double degree(std::size_t i) const { return degrees_[i]; }

  double at(std::size_t i, std::size_t j) const;  // O(log row nnz)

  // Vertices with zero degree. Non-empty matrices of this kind are rejected
  // by the mixing operator but arise legitimately from subgraph extraction.
  std::vector<std::size_t> zero_degree_vertices() const;

  // Throws validation_error naming a vertex if any degree is zero.
  void require_positive_degrees(const char* context) const;

  // Induced subgraph on a strictly increasing index set; degrees are
  // recomputed from the retained entries only.
  SimilarityMatrix extract_subgraph(std::span<const std::size_t> index_set) const;

  std::vector<std::vector<double>> to_dense() const;

 private:
  SimilarityMatrix() = default;

  std::size_t n_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<double> vals_;
  std::vector<double> degrees_;
};

struct GraphConfig {
  enum class Kind { gaussian, p_nearest, epsilon };
  Kind kind = Kind::p_nearest;
  double sigma = 1.0;
  double delta = 0.0;       // 0 means no sparsification for the gaussian kernel
  std::size_t p = 4;
  double epsilon = 1.0;
};

// w_ij = exp(-||v_i - v_j||^2 / 2 sigma^2), with edges at distance > delta
// removed. delta <= 0 disables sparsification. Distinct coincident points get
// weight 0 by the similarity-function convention, even though exp(0) = 1.
SimilarityMatrix build_gaussian_graph(const PointSet& points, double sigma, double delta);

// Unweighted union p-nearest-neighbor graph; distance ties break toward the
// lower vertex index.
SimilarityMatrix build_pnn_graph(const PointSet& points, std::size_t p);

// Unweighted graph connecting pairs with ||v_i - v_j|| <= epsilon (inclusive).
SimilarityMatrix build_epsilon_graph(const PointSet& points, double epsilon);

SimilarityMatrix build_graph(const PointSet& points, const GraphConfig& cfg);

// Edge-list format: whitespace-separated `i j w` triples, 0-based indices,
// one per line; `#` starts a comment.
SimilarityMatrix load_edge_list(std::istream& in);
void save_edge_list(const SimilarityMatrix& w, std::ostream& out);

}  // namespace mixclust
