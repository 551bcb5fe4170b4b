#include "mixclust/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace mixclust {

std::vector<std::size_t> sbm_block_sizes(std::size_t n, std::size_t k) {
  std::vector<std::size_t> sizes(k, n / k);
  for (std::size_t i = 0; i < n % k; ++i) ++sizes[i];
  return sizes;
}

namespace {

std::pair<SimilarityMatrix, ClusterAssignment> sample_sbm(const SbmParams& params,
                                                          std::uint64_t seed) {
  const std::size_t n = params.n;
  auto sizes = sbm_block_sizes(n, params.k);
  std::vector<int> labels(n);
  {
    std::size_t v = 0;
    for (std::size_t b = 0; b < params.k; ++b)
      for (std::size_t i = 0; i < sizes[b]; ++i) labels[v++] = static_cast<int>(b);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<SimilarityMatrix::Triplet> trip;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double prob = labels[i] == labels[j] ? params.p : params.q;
      if (uni(rng) < prob) trip.push_back({i, j, 1.0});
    }
  }
  return {SimilarityMatrix::from_triplets(n, std::move(trip)),
          ClusterAssignment::from_labels(std::move(labels))};
}

}  // namespace

std::pair<SimilarityMatrix, ClusterAssignment> generate_sbm(const SbmParams& params) {
  if (params.n < 2) throw validation_error("sbm: need at least 2 vertices");
  if (params.k < 1 || params.k > params.n)
    throw validation_error("sbm: require 1 <= k <= n");
  if (!(params.q >= 0.0 && params.q < params.p && params.p <= 1.0))
    throw validation_error("sbm: require 0 <= q < p <= 1");

  auto result = sample_sbm(params, params.seed);
  if (result.first.zero_degree_vertices().empty()) return result;
  // one re-sample guards tiny-n misuse
  result = sample_sbm(params, params.seed ^ 0x6a09e667f3bcc909ULL);
  result.first.require_positive_degrees("sbm");
  return result;
}

GaussianMixtureSpec GaussianMixtureSpec::defaults(std::uint64_t seed) {
  GaussianMixtureSpec spec;
  spec.seed = seed;
  spec.components = {
      {{-5.0, -5.0}, {0.5, 0.0, 0.0, 0.5}, 100},
      {{0.0, 0.0}, {3.5, 0.0, 0.0, 3.5}, 1000},
      {{6.0, -6.0}, {2.0, 0.0, 0.0, 2.0}, 300},
      {{-6.0, 6.0}, {1.0, 0.0, 0.0, 1.0}, 200},
      {{5.0, 5.0}, {1.0, -0.5, -0.5, 1.5}, 400},
  };
  return spec;
}

PointSet generate_gaussian_mixture(const GaussianMixtureSpec& spec) {
  if (spec.components.empty())
    throw validation_error("gaussian mixture: no components");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> coords;
  std::vector<int> labels;
  int component_id = 0;
  for (const GaussianComponent& comp : spec.components) {
    if (comp.count == 0) throw validation_error("gaussian mixture: zero sample count");
    const double a = comp.covariance[0];
    const double b = comp.covariance[1];
    const double b2 = comp.covariance[2];
    const double c = comp.covariance[3];
    if (std::abs(b - b2) > 1e-12)
      throw validation_error("gaussian mixture: covariance must be symmetric");
    // Cholesky factor; failure means the covariance is not positive definite
    if (a <= 0.0) throw validation_error("gaussian mixture: covariance not PD");
    const double l11 = std::sqrt(a);
    const double l21 = b / l11;
    const double rem = c - l21 * l21;
    if (rem <= 0.0) throw validation_error("gaussian mixture: covariance not PD");
    const double l22 = std::sqrt(rem);

    for (std::size_t i = 0; i < comp.count; ++i) {
      const double z1 = gauss(rng);
      const double z2 = gauss(rng);
      coords.push_back(comp.mean[0] + l11 * z1);
      coords.push_back(comp.mean[1] + l21 * z1 + l22 * z2);
      labels.push_back(component_id);
    }
    ++component_id;
  }
  const std::size_t n = labels.size();
  return PointSet(n, 2, std::move(coords), std::move(labels));
}

PointSet generate_two_crescents(std::size_t n_total, std::uint64_t seed) {
  if (n_total < 4 || n_total % 2 != 0)
    throw validation_error("two crescents: n_total must be even and >= 4");
  const std::size_t half = n_total / 2;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);

  std::vector<double> coords;
  std::vector<int> labels;
  for (std::size_t i = 0; i < half; ++i) {
    const double theta = angle(rng);
    const double r = 1.0 + jitter(rng);
    coords.push_back(r * std::cos(theta));
    coords.push_back(r * std::sin(theta));
    labels.push_back(0);
  }
  // mirrored across the x axis and offset by (1, -0.5)
  for (std::size_t i = 0; i < half; ++i) {
    const double theta = angle(rng);
    const double r = 1.0 + jitter(rng);
    coords.push_back(1.0 + r * std::cos(theta));
    coords.push_back(-0.5 - r * std::sin(theta));
    labels.push_back(1);
  }
  return PointSet(n_total, 2, std::move(coords), std::move(labels));
}

PointSet generate_half_ellipses(std::size_t n_total, std::uint64_t seed) {
  if (n_total < 4 || n_total % 2 != 0)
    throw validation_error("half ellipses: n_total must be even and >= 4");
  const std::size_t half = n_total / 2;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);

  std::vector<double> coords;
  std::vector<int> labels;
  for (std::size_t i = 0; i < half; ++i) {
    const double theta = angle(rng);
    const double scale = 1.0 + jitter(rng);
    coords.push_back(4.0 * scale * std::cos(theta));
    coords.push_back(2.0 * scale * std::sin(theta));
    labels.push_back(0);
  }
  // mirrored downward and offset by (4, -1) so the half ellipses interlock
  // like the crescents while staying separable by a horizontal line
  for (std::size_t i = 0; i < half; ++i) {
    const double theta = angle(rng);
    const double scale = 1.0 + jitter(rng);
    coords.push_back(4.0 + 4.0 * scale * std::cos(theta));
    coords.push_back(-1.0 - 2.0 * scale * std::sin(theta));
    labels.push_back(1);
  }
  return PointSet(n_total, 2, std::move(coords), std::move(labels));
}

PointSet generate_two_rings(std::size_t n_total, std::uint64_t seed) {
  if (n_total < 4 || n_total % 2 != 0)
    throw validation_error("two rings: n_total must be even and >= 4");
  const std::size_t half = n_total / 2;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);

  std::vector<double> coords;
  std::vector<int> labels;
  for (std::size_t i = 0; i < n_total; ++i) {
    const bool outer = i >= half;
    const double theta = angle(rng);
    const double r = (outer ? 3.0 : 1.0) + jitter(rng);
    coords.push_back(r * std::cos(theta));
    coords.push_back(r * std::sin(theta));
    labels.push_back(outer ? 1 : 0);
  }
  return PointSet(n_total, 2, std::move(coords), std::move(labels));
}

}  // namespace mixclust
