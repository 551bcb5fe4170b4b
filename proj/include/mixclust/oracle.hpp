#pragma once

#include <cstddef>
#include <vector>

#include "mixclust/cluster_types.hpp"
#include "mixclust/similarity.hpp"

namespace mixclust {

// Largest matrix the dense eigen-oracle accepts. Keeps the oracle out of
// production clustering paths.
inline constexpr std::size_t kOracleMaxSize = 512;

// Small dense symmetric-friendly matrix, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> multiply(const std::vector<double>& x) const;
  DenseMatrix multiply(const DenseMatrix& other) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

// Eigenpairs of the normalized Laplacian L = I - D^-1/2 W D^-1/2, ascending.
struct EigenReport {
  std::vector<double> lambdas;
  DenseMatrix phis;  // eigenvectors as columns, aligned with lambdas
  double residual = 0.0;
};

DenseMatrix normalized_laplacian(const SimilarityMatrix& w);

// Cyclic Jacobi rotations on a dense symmetric matrix; ascending eigenvalues
// with column-aligned eigenvectors.
EigenReport jacobi_eigen(const DenseMatrix& symmetric);

EigenReport eigen_decompose(const SimilarityMatrix& w);

// W = W* + E with W* block-diagonal per the partition, the off-block row
// sums folded into the diagonal of W*, and E symmetric with zero row sums.
// W and W* share the degree vector.
struct IdealDecomposition {
  SimilarityMatrix w_star;
  DenseMatrix e;
  ClusterAssignment partition;
};

IdealDecomposition ideal_split(const SimilarityMatrix& w,
                               const ClusterAssignment& partition);

// Max entrywise |L - (L* - D^-1/2 E D^-1/2)|; algebraically zero.
double lemma1_check(const SimilarityMatrix& w, const IdealDecomposition& decomp);

struct BoundCheck {
  std::size_t t = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::vector<double> c;
};

// Convergence of M^t x0 toward the span of the component characteristic
// vectors on an exactly block-diagonal matrix, against the spectral-tail
// bound. x0 must be entrywise positive and sum to 1.
std::vector<BoundCheck> theorem1_bound_check(const SimilarityMatrix& w_star,
                                             const ClusterAssignment& partition,
                                             const std::vector<double>& x0, double alpha,
                                             std::size_t t_begin, std::size_t t_end);

// Perturbed-case analogue: W = W* + E, block indicator i is paired with the
// i-th perturbed eigenpair (sign toward the perturbed vector), and the bound
// picks up the eigenvector perturbation norms. When the first k eigenvalues of L are not separated
// from lambda_{k+1}, the hypotheses fail: the result is empty and
// `hypothesis_ok`, when given, is set false.
std::vector<BoundCheck> theorem2_bound_check(const SimilarityMatrix& w,
                                             const ClusterAssignment& partition,
                                             const std::vector<double>& x0, double alpha,
                                             std::size_t t_begin, std::size_t t_end,
                                             bool* hypothesis_ok = nullptr);

// Recursive Fiedler bi-partitioning with the threshold chosen to minimize the
// 2-way normalized cut; splits greedily until k leaves. Small-scale reference.
ClusterAssignment ncut_reference_cluster(const SimilarityMatrix& w, std::size_t k);

}  // namespace mixclust
