#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "mixclust/cluster_types.hpp"
#include "mixclust/point_set.hpp"
#include "mixclust/similarity.hpp"

namespace mixclust {

struct SbmParams {
  std::size_t n = 1000;
  std::size_t k = 2;
  double p = 0.5;       // in-block edge probability
  double q = 0.01;      // cross-block edge probability
  std::uint64_t seed = 0;
};

// Undirected unweighted stochastic block model with ground-truth labels.
// The first n mod k blocks get one extra vertex.
std::pair<SimilarityMatrix, ClusterAssignment> generate_sbm(const SbmParams& params);

std::vector<std::size_t> sbm_block_sizes(std::size_t n, std::size_t k);

struct GaussianComponent {
  std::array<double, 2> mean;
  std::array<double, 4> covariance;  // row-major 2x2, symmetric positive definite
  std::size_t count;
};

struct GaussianMixtureSpec {
  std::vector<GaussianComponent> components;  // defaults to the five-blob mixture
  std::uint64_t seed = 0;

  static GaussianMixtureSpec defaults(std::uint64_t seed = 0);
};

PointSet generate_gaussian_mixture(const GaussianMixtureSpec& spec);

// Two interlocking half-annuli, n_total/2 points each, radial jitter 0.1.
PointSet generate_two_crescents(std::size_t n_total, std::uint64_t seed);

// Two half-ellipses (axes 4 x 2) separated vertically by 1.0, jitter 0.1.
PointSet generate_half_ellipses(std::size_t n_total, std::uint64_t seed);

// Two concentric rings (radii 1 and 3), balanced labels; the nested-cluster
// shape that point-space diffusion cannot separate.
PointSet generate_two_rings(std::size_t n_total, std::uint64_t seed);

}  // namespace mixclust
