#include "mixclust/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "mixclust/metrics.hpp"

namespace mixclust {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::uint64_t cell_seed(std::uint64_t base, std::size_t a, std::size_t b, std::size_t c,
                        std::size_t rep) {
  std::uint64_t h = base;
  for (std::uint64_t v : {static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b),
                          static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(rep)}) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace

std::size_t count_tree_iterations(const ClusterTree& tree) {
  std::size_t total = 0;
  for (const auto& node : tree.nodes) total += node.t;
  return total;
}

std::vector<RecoveryRow> run_recovery_sweep(const ExperimentGrid& grid,
                                            const RardConfig& cfg) {
  if (grid.repetitions < 1 || grid.n_values.empty() || grid.k_values.empty() ||
      grid.q_values.empty())
    throw validation_error("recovery sweep: empty grid axis");

  std::vector<RecoveryRow> rows;
  for (std::size_t ni = 0; ni < grid.n_values.size(); ++ni) {
    for (std::size_t ki = 0; ki < grid.k_values.size(); ++ki) {
      for (std::size_t qi = 0; qi < grid.q_values.size(); ++qi) {
        for (std::size_t rep = 0; rep < grid.repetitions; ++rep) {
          const std::uint64_t seed = cell_seed(grid.seed, ni, ki, qi, rep);
          SbmParams params{grid.n_values[ni], grid.k_values[ki], grid.p,
                           grid.q_values[qi], seed};
          auto [w, truth] = generate_sbm(params);

          RardConfig run_cfg = cfg;
          run_cfg.seed = seed;
          const double start = now_seconds();
          auto [tree, assignment] = rard_cluster(w, run_cfg);
          const double elapsed = now_seconds() - start;

          rows.push_back({params.n, params.k, params.q, seed,
                          exact_recovery(assignment, truth), nmi(assignment, truth),
                          elapsed, count_tree_iterations(tree)});
        }
      }
    }
  }
  return rows;
}

void write_recovery_csv(const std::vector<RecoveryRow>& rows, std::ostream& out) {
  out << "n,k,q,seed,recovered,nmi,seconds,total_iterations\n";
  for (const auto& r : rows)
    out << r.n << ',' << r.k << ',' << r.q << ',' << r.seed << ','
        << (r.recovered ? 1 : 0) << ',' << r.nmi << ',' << r.seconds << ','
        << r.total_iterations << '\n';
}

ScalingResult run_scaling_bench(const std::vector<std::size_t>& n_values, std::size_t k,
                                double p, double q, std::size_t repetitions,
                                const RardConfig& cfg, std::uint64_t seed) {
  if (n_values.empty()) throw validation_error("scaling bench: empty n list");
  if (repetitions < 1) throw validation_error("scaling bench: need repetitions >= 1");

  const double base_n = static_cast<double>(n_values.front());
  const double in_degree = p * (base_n / static_cast<double>(k) - 1.0);
  const double cross_degree = q * (base_n - base_n / static_cast<double>(k));

  ScalingResult result;
  for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
    const double n = static_cast<double>(n_values[ni]);
    // keep expected degrees fixed across n
    const double pn = std::min(1.0, in_degree / (n / static_cast<double>(k) - 1.0));
    const double qn = std::min(pn * 0.999, cross_degree / (n - n / static_cast<double>(k)));

    std::vector<double> times;
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
      const std::uint64_t s = cell_seed(seed, ni, k, 0, rep);
      SbmParams params{n_values[ni], k, pn, qn, s};
      auto [w, truth] = generate_sbm(params);
      RardConfig run_cfg = cfg;
      run_cfg.seed = s;
      const double start = now_seconds();
      auto [tree, assignment] = rard_cluster(w, run_cfg);
      times.push_back(now_seconds() - start);
      (void)truth;
    }
    std::sort(times.begin(), times.end());
    const double median = times[times.size() / 2];
    result.rows.push_back({n_values[ni], k, pn, qn, median, repetitions});
  }

  // least-squares slope of log(median time) vs log(n)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(result.rows.size());
  for (const auto& r : result.rows) {
    const double x = std::log(static_cast<double>(r.n));
    const double y = std::log(std::max(r.median_seconds, 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  result.log_log_slope =
      m > 1 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
  return result;
}

void write_scaling_csv(const ScalingResult& result, std::ostream& out) {
  out << "n,k,p,q,median_seconds,repetitions\n";
  for (const auto& r : result.rows)
    out << r.n << ',' << r.k << ',' << r.p << ',' << r.q << ',' << r.median_seconds
        << ',' << r.repetitions << '\n';
  out << "# log-log slope: " << result.log_log_slope << '\n';
}

}  // namespace mixclust
