#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "mixclust/rard.hpp"

namespace mixclust {

struct SweepRow {
  double eps0;
  std::size_t cluster_count;
  double ncut;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  // Index into rows of the first rung whose successor reports the same
  // cluster count; -1 when no consecutive pair agrees.
  std::ptrdiff_t recommended = -1;
};

// Default ladder: eps0 halved per rung over 12 rungs.
std::vector<double> default_eps0_ladder(double eps0 = 1e-1, std::size_t rungs = 12);

// Runs the recursive clustering once per ladder rung (strictly decreasing
// tolerances) and recommends the first tolerance where the cluster count
// stabilizes across consecutive rungs.
SweepResult sweep_eps0(const SimilarityMatrix& w, const std::vector<double>& ladder,
                       const RardConfig& cfg);

void write_sweep_csv(const SweepResult& result, std::ostream& out);

}  // namespace mixclust
