#include "mixclust/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mixclust {

MixingOperator::MixingOperator(const SimilarityMatrix& w, double alpha)
    : w_(&w), alpha_(alpha) {
  if (alpha < 0.0 || alpha > 1.0)
    throw validation_error("mixing operator: alpha must lie in [0, 1]");
  w.require_positive_degrees("mixing operator");
  inverse_degrees_.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) inverse_degrees_[i] = 1.0 / w.degree(i);
}

void MixingOperator::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = w_->size();
  if (x.size() != n || y.size() != n)
    throw validation_error("mixing operator: vector length mismatch");

  // Output stays inside [min x, max x]: each row of M is a convex
  // combination, and the clamp removes the last-ulp rounding slack.
  double lo = x[0], hi = x[0];
  for (double v : x) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  const double keep = 1.0 - alpha_;
  for (std::size_t i = 0; i < n; ++i) {
    auto cols = w_->row_cols(i);
    auto vals = w_->row_vals(i);
    double acc = 0.0;
    for (std::size_t e = 0; e < cols.size(); ++e) acc += vals[e] * x[cols[e]];
    double out = keep * x[i] + alpha_ * acc * inverse_degrees_[i];
    y[i] = std::clamp(out, lo, hi);
  }
}

std::vector<double> MixingOperator::apply(const std::vector<double>& x) const {
  std::vector<double> y(x.size());
  apply(std::span<const double>(x), std::span<double>(y));
  return y;
}

double MixingOperator::d_weighted_mean(std::span<const double> x) const {
  double num = 0.0, den = 0.0;
  const auto& d = w_->degrees();
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += d[i] * x[i];
    den += d[i];
  }
  return num / den;
}

MixingState init_agents(std::size_t n, const InitSpec& spec) {
  if (n < 1) throw validation_error("init_agents: n must be at least 1");
  if (spec.b <= 0.0) throw validation_error("init_agents: b must be positive");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> uni(0.0, spec.b);
  MixingState state;
  state.x.resize(n);
  for (double& v : state.x) v = uni(rng);
  return state;
}

RunResult run_until_tolerance(const MixingOperator& op, MixingState& state, double eps,
                              std::size_t t_max, std::vector<TraceRow>* trace) {
  if (eps <= 0.0) throw validation_error("run_until_tolerance: eps must be positive");
  const std::size_t n = op.size();
  std::vector<double> next(n);
  bool have_prev_y = !std::isnan(state.y);

  while (state.t < t_max) {
    op.apply(state.x, next);
    double diff_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = next[i] - state.x[i];
      diff_sq += d * d;
    }
    const double y_new = std::sqrt(diff_sq);
    state.x.swap(next);
    ++state.t;
    const double delta = have_prev_y ? std::abs(y_new - state.y)
                                     : std::numeric_limits<double>::quiet_NaN();
    if (trace) trace->push_back({state.t, y_new, delta});
    const bool prev = have_prev_y;
    const double y_old = state.y;
    state.y = y_new;
    have_prev_y = true;
    if (prev && std::abs(y_new - y_old) <= eps) return {StopReason::tolerance};
  }
  return {StopReason::iteration_cap};
}

}  // namespace mixclust
