#include "mixclust/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mixclust/mixing.hpp"

namespace mixclust {

std::vector<double> DenseMatrix::multiply(const std::vector<double>& x) const {
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += data_[i * cols_ + j] * x[j];
    y[i] = acc;
  }
  return y;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const {
  DenseMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t l = 0; l < cols_; ++l) {
      const double a = data_[i * cols_ + l];
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += a * other(l, j);
    }
  return out;
}

DenseMatrix normalized_laplacian(const SimilarityMatrix& w) {
  w.require_positive_degrees("normalized laplacian");
  const std::size_t n = w.size();
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(w.degree(i));

  DenseMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    l(i, i) = 1.0;
    auto cols = w.row_cols(i);
    auto vals = w.row_vals(i);
    for (std::size_t e = 0; e < cols.size(); ++e)
      l(i, cols[e]) -= vals[e] * inv_sqrt[i] * inv_sqrt[cols[e]];
  }
  return l;
}

EigenReport jacobi_eigen(const DenseMatrix& symmetric) {
  const std::size_t n = symmetric.rows();
  if (n != symmetric.cols()) throw validation_error("jacobi: matrix must be square");
  if (n > kOracleMaxSize)
    throw guard_error("jacobi: matrix exceeds the oracle size guard");

  DenseMatrix a = symmetric;
  DenseMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  if (scale == 0.0) scale = 1.0;
  const double stop = 1e-14 * scale;

  bool converged = (n == 1);
  for (std::size_t sweep = 0; sweep < 100 && !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        off = std::max(off, std::abs(a(p, q)));
        if (std::abs(a(p, q)) <= stop) continue;

        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
    if (off <= stop) converged = true;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  EigenReport report;
  report.lambdas.resize(n);
  report.phis = DenseMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    report.lambdas[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) report.phis(i, j) = v(i, order[j]);
  }

  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = report.phis(i, j);
    std::vector<double> lv = symmetric.multiply(col);
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = lv[i] - report.lambdas[j] * col[i];
      norm_sq += r * r;
    }
    residual = std::max(residual, std::sqrt(norm_sq));
  }
  report.residual = residual;
  if (residual > 1e-9 * std::max(1.0, scale))
    throw guard_error("jacobi: failed to reach the residual target in 100 sweeps");
  return report;
}

EigenReport eigen_decompose(const SimilarityMatrix& w) {
  if (w.size() > kOracleMaxSize)
    throw guard_error("eigen oracle: matrix exceeds the size guard");
  return jacobi_eigen(normalized_laplacian(w));
}

IdealDecomposition ideal_split(const SimilarityMatrix& w,
                               const ClusterAssignment& partition) {
  const std::size_t n = w.size();
  if (n > kOracleMaxSize)
    throw guard_error("ideal split: matrix exceeds the oracle size guard");
  if (partition.labels.size() != n)
    throw validation_error("ideal split: partition does not cover all vertices");

  std::vector<SimilarityMatrix::Triplet> trip;
  DenseMatrix e(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto cols = w.row_cols(i);
    auto vals = w.row_vals(i);
    double diagonal = 0.0;
    for (std::size_t idx = 0; idx < cols.size(); ++idx) {
      const std::size_t j = cols[idx];
      if (j == i) {
        diagonal += vals[idx];
      } else if (partition.labels[i] == partition.labels[j]) {
        if (j > i) trip.push_back({i, j, vals[idx]});
      } else {
        // fold the removed cross-block weight into the diagonal so degrees match
        diagonal += vals[idx];
        e(i, j) = vals[idx];
        e(i, i) -= vals[idx];
      }
    }
    if (diagonal > 0.0) trip.push_back({i, i, diagonal});
  }

  IdealDecomposition decomp{SimilarityMatrix::from_triplets(n, std::move(trip), true),
                            std::move(e), partition};
  return decomp;
}

double lemma1_check(const SimilarityMatrix& w, const IdealDecomposition& decomp) {
  const std::size_t n = w.size();
  DenseMatrix l = normalized_laplacian(w);
  DenseMatrix l_star = normalized_laplacian(decomp.w_star);
  std::vector<double> inv_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(w.degree(i));

  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double ebar = decomp.e(i, j) * inv_sqrt[i] * inv_sqrt[j];
      dev = std::max(dev, std::abs(l(i, j) - (l_star(i, j) - ebar)));
    }
  return dev;
}

namespace {

struct PartitionData {
  std::size_t k;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<double> volumes;       // 1^T D chi_i
  std::vector<double> coefficients;  // chi_i^T D x0 / volume_i
  double degree_ratio;               // max sqrt d / min sqrt d
};

PartitionData partition_data(const SimilarityMatrix& w, const ClusterAssignment& partition,
                             const std::vector<double>& x0) {
  PartitionData pd;
  pd.k = static_cast<std::size_t>(partition.k);
  pd.blocks = partition.clusters();
  pd.volumes.assign(pd.k, 0.0);
  pd.coefficients.assign(pd.k, 0.0);
  for (std::size_t c = 0; c < pd.k; ++c) {
    for (std::size_t v : pd.blocks[c]) {
      pd.volumes[c] += w.degree(v);
      pd.coefficients[c] += w.degree(v) * x0[v];
    }
    pd.coefficients[c] /= pd.volumes[c];
  }
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (double d : w.degrees()) {
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  pd.degree_ratio = std::sqrt(dmax) / std::sqrt(dmin);
  return pd;
}

void check_probability_vector(const std::vector<double>& x0, std::size_t n) {
  if (x0.size() != n) throw validation_error("bound check: x0 length mismatch");
  double sum = 0.0;
  for (double v : x0) {
    if (v <= 0.0) throw validation_error("bound check: x0 must be entrywise positive");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw validation_error("bound check: x0 must sum to 1");
}

// Shared evaluator: iterates M (built from `w`) and compares against the
// characteristic-vector combination with per-cluster decay factors
// (1 - alpha lambda_tilde_i)^t, against perturbation_term + tail^t, all
// scaled by the degree ratio.
std::vector<BoundCheck> evaluate_bound(const SimilarityMatrix& w,
                                       const PartitionData& pd,
                                       const std::vector<double>& x0, double alpha,
                                       const std::vector<double>& lambda_tilde,
                                       double perturbation_term, double tail_rate,
                                       std::size_t t_begin, std::size_t t_end) {
  MixingOperator op(w, alpha);
  const std::size_t n = w.size();
  std::vector<double> x = x0;
  std::vector<BoundCheck> out;

  for (std::size_t t = 0; t <= t_end; ++t) {
    if (t >= t_begin) {
      BoundCheck check;
      check.t = t;
      check.c.resize(pd.k);
      std::vector<double> target(n, 0.0);
      for (std::size_t c = 0; c < pd.k; ++c) {
        check.c[c] =
            std::pow(1.0 - alpha * lambda_tilde[c], static_cast<double>(t)) *
            pd.coefficients[c];
        for (std::size_t v : pd.blocks[c]) target[v] = check.c[c];
      }
      double norm_sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double r = x[i] - target[i];
        norm_sq += r * r;
      }
      check.lhs = std::sqrt(norm_sq);
      check.rhs = (perturbation_term + std::pow(tail_rate, static_cast<double>(t))) *
                  pd.degree_ratio;
      out.push_back(std::move(check));
    }
    if (t < t_end) x = op.apply(x);
  }
  return out;
}

}  // namespace

std::vector<BoundCheck> theorem1_bound_check(const SimilarityMatrix& w_star,
                                             const ClusterAssignment& partition,
                                             const std::vector<double>& x0, double alpha,
                                             std::size_t t_begin, std::size_t t_end) {
  const std::size_t n = w_star.size();
  if (n > kOracleMaxSize)
    throw guard_error("theorem1 check: matrix exceeds the oracle size guard");
  check_probability_vector(x0, n);
  if (partition.labels.size() != n)
    throw validation_error("theorem1 check: partition does not cover all vertices");

  // hypothesis: exactly block-diagonal per the partition
  for (std::size_t i = 0; i < n; ++i) {
    auto cols = w_star.row_cols(i);
    for (std::size_t j : cols)
      if (partition.labels[i] != partition.labels[j])
        throw validation_error("theorem1 check: matrix has cross-block entries");
  }

  EigenReport eig = eigen_decompose(w_star);
  PartitionData pd = partition_data(w_star, partition, x0);

  double tail = 0.0;
  for (std::size_t i = pd.k; i < n; ++i)
    tail = std::max(tail, std::abs(1.0 - alpha * eig.lambdas[i]));

  std::vector<double> lambda_tilde(pd.k, 0.0);  // exact zeros in the ideal case
  return evaluate_bound(w_star, pd, x0, alpha, lambda_tilde, 0.0, tail, t_begin, t_end);
}

std::vector<BoundCheck> theorem2_bound_check(const SimilarityMatrix& w,
                                             const ClusterAssignment& partition,
                                             const std::vector<double>& x0, double alpha,
                                             std::size_t t_begin, std::size_t t_end,
                                             bool* hypothesis_ok) {
  const std::size_t n = w.size();
  if (n > kOracleMaxSize)
    throw guard_error("theorem2 check: matrix exceeds the oracle size guard");
  check_probability_vector(x0, n);
  if (hypothesis_ok) *hypothesis_ok = true;

  IdealDecomposition decomp = ideal_split(w, partition);

  double e_max = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e_max = std::max(e_max, std::abs(decomp.e(i, j)));
  if (e_max == 0.0) {
    // no perturbation: identical to the ideal-case check
    return theorem1_bound_check(w, partition, x0, alpha, t_begin, t_end);
  }

  EigenReport eig = eigen_decompose(w);
  PartitionData pd = partition_data(w, partition, x0);
  const std::size_t k = pd.k;

  // separation hypothesis: first k eigenvalues distinct from lambda_{k+1}
  if (k >= n || eig.lambdas[k] - eig.lambdas[k - 1] < 1e-8) {
    if (hypothesis_ok) *hypothesis_ok = false;
    return {};
  }

  // ideal zero-eigenspace basis phi*_j = D^{1/2} chi_j / ||D^{1/2} chi_j||
  DenseMatrix phi_star(n, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t v : pd.blocks[c])
      phi_star(v, c) = std::sqrt(w.degree(v)) / std::sqrt(pd.volumes[c]);

  // Pair block indicator i with perturbed eigenvector i directly, sign chosen
  // so phi_star_i^T phi_i >= 0. The same basis must feed both the target
  // coefficients and the perturbation norms: rotating the ideal basis toward
  // the perturbed one shrinks ||phi_tilde|| but the per-block target then no
  // longer matches it, and the bound stops being an upper bound.
  double perturbation_term = 0.0;
  std::vector<double> lambda_tilde(k);
  for (std::size_t c = 0; c < k; ++c) {
    lambda_tilde[c] = eig.lambdas[c];
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += phi_star(i, c) * eig.phis(i, c);
    const double sign = dot >= 0.0 ? 1.0 : -1.0;
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double diff = eig.phis(i, c) - sign * phi_star(i, c);
      norm_sq += diff * diff;
    }
    const double phi_tilde_norm = std::sqrt(norm_sq);
    perturbation_term += 2.0 * phi_tilde_norm + phi_tilde_norm * phi_tilde_norm;
  }

  double tail = 0.0;
  for (std::size_t i = k; i < n; ++i)
    tail = std::max(tail, std::abs(1.0 - alpha * eig.lambdas[i]));

  return evaluate_bound(w, pd, x0, alpha, lambda_tilde, perturbation_term, tail,
                        t_begin, t_end);
}

namespace {

struct LeafSplit {
  double value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> left;   // global ids
  std::vector<std::size_t> right;
};

// Best 2-way normalized-cut split of an induced subgraph, thresholding the
// degree-mapped Fiedler vector at every sorted position.
LeafSplit best_fiedler_split(const SimilarityMatrix& w,
                             const std::vector<std::size_t>& global) {
  LeafSplit best;
  const std::size_t n = global.size();
  if (n < 2) return best;

  SimilarityMatrix sub = w.extract_subgraph(global);

  auto degenerate = sub.zero_degree_vertices();
  if (!degenerate.empty()) {
    // isolated vertex: free split
    best.value = 0.0;
    best.left = {global[degenerate.front()]};
    for (std::size_t i = 0; i < n; ++i)
      if (i != degenerate.front()) best.right.push_back(global[i]);
    return best;
  }

  EigenReport eig = eigen_decompose(sub);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i)
    y[i] = eig.phis(i, 1) / std::sqrt(sub.degree(i));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return y[a] != y[b] ? y[a] < y[b] : global[a] < global[b];
  });

  const double total_volume =
      std::accumulate(sub.degrees().begin(), sub.degrees().end(), 0.0);

  std::vector<char> in_left(n, 0);
  double vol_left = 0.0;
  double cut = 0.0;
  for (std::size_t pos = 0; pos + 1 < n; ++pos) {
    const std::size_t v = order[pos];
    in_left[v] = 1;
    vol_left += sub.degree(v);
    auto cols = sub.row_cols(v);
    auto vals = sub.row_vals(v);
    for (std::size_t e = 0; e < cols.size(); ++e)
      cut += in_left[cols[e]] ? -vals[e] : vals[e];

    const double vol_right = total_volume - vol_left;
    if (vol_left <= 0.0 || vol_right <= 0.0) continue;
    const double value = cut / vol_left + cut / vol_right;
    if (value < best.value) {
      best.value = value;
      best.left.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(pos + 1));
      best.right.assign(order.begin() + static_cast<std::ptrdiff_t>(pos + 1), order.end());
      for (std::size_t& idx : best.left) idx = global[idx];
      for (std::size_t& idx : best.right) idx = global[idx];
      std::sort(best.left.begin(), best.left.end());
      std::sort(best.right.begin(), best.right.end());
    }
  }
  return best;
}

}  // namespace

ClusterAssignment ncut_reference_cluster(const SimilarityMatrix& w, std::size_t k) {
  const std::size_t n = w.size();
  if (n > kOracleMaxSize)
    throw guard_error("ncut reference: matrix exceeds the oracle size guard");
  if (k < 1 || k > n) throw validation_error("ncut reference: require 1 <= k <= n");

  std::vector<std::vector<std::size_t>> leaves;
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  leaves.push_back(std::move(all));

  while (leaves.size() < k) {
    std::size_t pick = leaves.size();
    LeafSplit pick_split;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (leaves[i].size() < 2) continue;
      LeafSplit split = best_fiedler_split(w, leaves[i]);
      if (split.value < pick_split.value) {
        pick_split = std::move(split);
        pick = i;
      }
    }
    if (pick == leaves.size())
      throw validation_error("ncut reference: cannot split further");
    leaves[pick] = std::move(pick_split.left);
    leaves.push_back(std::move(pick_split.right));
  }

  std::vector<int> labels(n, -1);
  for (std::size_t c = 0; c < leaves.size(); ++c)
    for (std::size_t v : leaves[c]) labels[v] = static_cast<int>(c);
  return ClusterAssignment::from_labels(std::move(labels));
}

}  // namespace mixclust
