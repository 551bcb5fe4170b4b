#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "mixclust/metrics.hpp"

using namespace mixclust;
using mixclust::testing::clique_labels;
using mixclust::testing::clique_union;
using mixclust::testing::example_two_block;
using mixclust::testing::example_two_block_partition;

namespace {

ClusterAssignment labels(std::vector<int> l) {
  return ClusterAssignment::from_labels(std::move(l));
}

ClusterAssignment random_labels(std::size_t n, int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::vector<int> l(n);
  for (std::size_t i = 0; i < n; ++i)
    l[i] = i < static_cast<std::size_t>(k) ? static_cast<int>(i) : pick(rng);
  return ClusterAssignment::from_labels(std::move(l));
}

}  // namespace

TEST_CASE("ncut: zero for block partitions of block-diagonal graphs") {
  SimilarityMatrix w = clique_union(3, 4);
  CHECK(ncut(w, clique_labels(3, 4)) == 0.0);
}

TEST_CASE("ncut: zero for the all-in-one partition") {
  SimilarityMatrix w = example_two_block();
  CHECK(ncut(w, labels({0, 0, 0, 0, 0, 0})) == 0.0);
}

TEST_CASE("ncut: six-vertex example against hand-computed value") {
  // cut weight between the blocks is 8; volumes are 208 and 198
  SimilarityMatrix w = example_two_block();
  const double want = 8.0 / 208.0 + 8.0 / 198.0;
  CHECK(ncut(w, example_two_block_partition()) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("contingency table: counts and marginals") {
  ContingencyTable t =
      ContingencyTable::build(labels({0, 0, 1, 1}), labels({0, 1, 0, 1}));
  CHECK(t.n == 4);
  CHECK(t.rows == 2);
  CHECK(t.cols == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(t.row_marginals[i] == 2);
    CHECK(t.col_marginals[i] == 2);
    for (std::size_t j = 0; j < 2; ++j) CHECK(t.at(i, j) == 1);
  }
}

TEST_CASE("nmi: identical clusterings score 1") {
  ClusterAssignment a = labels({0, 0, 1, 1, 2});
  CHECK(nmi(a, a) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nmi: crossed pairs on four points are independent") {
  // {0,1}|{2,3} vs {0,2}|{1,3}: every joint cell is 1/4 = product of marginals
  CHECK(nmi(labels({0, 0, 1, 1}), labels({0, 1, 0, 1})) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("nmi: label permutation scores 1") {
  CHECK(nmi(labels({0, 0, 1, 1, 2}), labels({2, 2, 0, 0, 1})) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nmi: zero-entropy convention") {
  ClusterAssignment one = labels({0, 0, 0});
  CHECK(nmi(one, one) == 1.0);                     // identical degenerate partitions
  CHECK(nmi(one, labels({0, 0, 1})) == 0.0);       // degenerate vs split
  CHECK(nmi(labels({0, 1, 2}), one) == 0.0);       // symmetric case
}

TEST_CASE("nmi: length mismatch rejected") {
  CHECK_THROWS_AS(nmi(labels({0, 1}), labels({0, 1, 1})), validation_error);
}

TEST_CASE("exact_recovery: permutation invariant, sensitive to one move") {
  ClusterAssignment truth = labels({0, 0, 1, 1, 2, 2});
  CHECK(exact_recovery(truth, truth));
  CHECK(exact_recovery(labels({1, 1, 2, 2, 0, 0}), truth));
  CHECK_FALSE(exact_recovery(labels({0, 0, 1, 2, 2, 2}), truth));
}

TEST_CASE("property: nmi symmetry, range, and permutation invariance") {
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ClusterAssignment a = random_labels(60, 4, seed);
    ClusterAssignment b = random_labels(60, 3, seed + 1000);
    const double ab = nmi(a, b);
    CHECK(std::abs(ab - nmi(b, a)) <= 1e-12);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0 + 1e-12);

    // permute a's label names
    std::vector<int> perm(static_cast<std::size_t>(a.k));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> renamed(a.labels.size());
    for (std::size_t i = 0; i < renamed.size(); ++i)
      renamed[i] = perm[static_cast<std::size_t>(a.labels[i])];
    CHECK(std::abs(nmi(labels(std::move(renamed)), b) - ab) <= 1e-12);
  }
}

TEST_CASE("property: ncut adds across disconnected components") {
  // union of the six-vertex example and a shifted copy of it
  SimilarityMatrix part = example_two_block();
  std::vector<SimilarityMatrix::Triplet> trip;
  for (std::size_t copy = 0; copy < 2; ++copy)
    for (std::size_t i = 0; i < 6; ++i) {
      auto cols = part.row_cols(i);
      auto vals = part.row_vals(i);
      for (std::size_t s = 0; s < cols.size(); ++s)
        if (cols[s] > i) trip.push_back({copy * 6 + i, copy * 6 + cols[s], vals[s]});
    }
  SimilarityMatrix both = SimilarityMatrix::from_triplets(12, std::move(trip));
  ClusterAssignment split4 = labels({0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3});
  const double single = ncut(part, example_two_block_partition());
  CHECK(ncut(both, split4) == doctest::Approx(2.0 * single).epsilon(1e-12));
}
