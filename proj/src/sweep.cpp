#include "mixclust/sweep.hpp"

#include <ostream>

#include "mixclust/metrics.hpp"

namespace mixclust {

std::vector<double> default_eps0_ladder(double eps0, std::size_t rungs) {
  if (eps0 <= 0.0 || rungs == 0)
    throw validation_error("eps0 ladder: need eps0 > 0 and at least one rung");
  std::vector<double> ladder(rungs);
  for (std::size_t i = 0; i < rungs; ++i, eps0 *= 0.5) ladder[i] = eps0;
  return ladder;
}

SweepResult sweep_eps0(const SimilarityMatrix& w, const std::vector<double>& ladder,
                       const RardConfig& cfg) {
  if (ladder.empty()) throw validation_error("eps0 ladder: empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] <= 0.0) throw validation_error("eps0 ladder: entries must be positive");
    if (i > 0 && ladder[i] >= ladder[i - 1])
      throw validation_error("eps0 ladder: must be strictly decreasing");
  }

  SweepResult result;
  for (double eps0 : ladder) {
    RardConfig run_cfg = cfg;
    run_cfg.eps0 = eps0;
    run_cfg.eps_min = 0.0;  // re-derive eps_min from this rung's eps0
    auto [tree, assignment] = rard_cluster(w, run_cfg);
    result.rows.push_back(
        {eps0, static_cast<std::size_t>(assignment.k), ncut(w, assignment)});
  }
  for (std::size_t i = 0; i + 1 < result.rows.size(); ++i) {
    if (result.rows[i].cluster_count == result.rows[i + 1].cluster_count) {
      result.recommended = static_cast<std::ptrdiff_t>(i);
      break;
    }
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "eps0,clusters,ncut,recommended\n";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    out << r.eps0 << ',' << r.cluster_count << ',' << r.ncut << ','
        << (static_cast<std::ptrdiff_t>(i) == result.recommended ? 1 : 0) << '\n';
  }
  if (result.recommended < 0) out << "# no recommendation: cluster count never stabilized\n";
}

}  // namespace mixclust
