#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mixclust/rard.hpp"
#include "mixclust/synth.hpp"

namespace mixclust {

struct ExperimentGrid {
  std::vector<std::size_t> n_values;
  std::vector<std::size_t> k_values;
  std::vector<double> q_values;
  double p = 0.5;
  std::size_t repetitions = 50;
  std::uint64_t seed = 0;
};

struct RecoveryRow {
  std::size_t n, k;
  double q;
  std::uint64_t seed;
  bool recovered;
  double nmi;
  double seconds;
  std::size_t total_iterations;
};

// Per (n, k, q, rep): generate an SBM, cluster it, score recovery. Timing
// covers operator construction and clustering, not graph generation.
std::vector<RecoveryRow> run_recovery_sweep(const ExperimentGrid& grid,
                                            const RardConfig& cfg);
void write_recovery_csv(const std::vector<RecoveryRow>& rows, std::ostream& out);

struct ScalingRow {
  std::size_t n, k;
  double p, q;
  double median_seconds;
  std::size_t repetitions;
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  double log_log_slope;  // fitted log(time) vs log(n)
};

// Scales p and q with n so expected in- and cross-block degrees stay fixed
// at their values for the first n.
ScalingResult run_scaling_bench(const std::vector<std::size_t>& n_values, std::size_t k,
                                double p, double q, std::size_t repetitions,
                                const RardConfig& cfg, std::uint64_t seed);
void write_scaling_csv(const ScalingResult& result, std::ostream& out);

// Total mixing iterations across all recursive calls, summed over tree nodes.
std::size_t count_tree_iterations(const ClusterTree& tree);

}  // namespace mixclust
