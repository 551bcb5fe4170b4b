#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mixclust/similarity.hpp"

namespace mixclust {

// Lazy-random-walk operator M = (1-alpha) I + alpha D^-1 W, applied as a
// streaming sparse kernel. Never materialized densely.
class MixingOperator {
 public:
  MixingOperator(const SimilarityMatrix& w, double alpha);

  const SimilarityMatrix& matrix() const { return *w_; }
  double alpha() const { return alpha_; }
  std::size_t size() const { return w_->size(); }

  // y = (1-alpha) x + alpha D^-1 W x, one pass over the sparse entries.
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(const std::vector<double>& x) const;

  // (sum_i d_i x_i) / (sum_i d_i); invariant under apply since d^T M = d^T.
  double d_weighted_mean(std::span<const double> x) const;

 private:
  const SimilarityMatrix* w_;
  double alpha_;
  std::vector<double> inverse_degrees_;
};

struct InitSpec {
  double b = 1.0;
  std::uint64_t seed = 0;
};

struct MixingState {
  std::vector<double> x;
  std::size_t t = 0;
  // ||x^t - x^{t-1}||_2; NaN until the first step has run.
  double y = std::numeric_limits<double>::quiet_NaN();
};

// n i.i.d. uniform draws from [0, b), seeded and reproducible.
MixingState init_agents(std::size_t n, const InitSpec& spec);

enum class StopReason { tolerance, iteration_cap };

struct RunResult {
  StopReason reason;
};

struct TraceRow {
  std::size_t t;
  double y;
  double delta_y;
};

// Advances the state until |y^{t+1} - y^t| <= eps or t reaches t_max. The
// tolerance comparison needs two y values, so at least two steps run. Iterates
// on a double buffer; `trace`, when given, collects (t, y, |dy|) per step.
RunResult run_until_tolerance(const MixingOperator& op, MixingState& state, double eps,
                              std::size_t t_max, std::vector<TraceRow>* trace = nullptr);

}  // namespace mixclust
