#include "mixclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mixclust {

ContingencyTable ContingencyTable::build(const ClusterAssignment& a,
                                         const ClusterAssignment& b) {
  if (a.labels.size() != b.labels.size())
    throw validation_error("contingency table: clustering length mismatch");
  ContingencyTable table;
  table.rows = static_cast<std::size_t>(a.k);
  table.cols = static_cast<std::size_t>(b.k);
  table.n = a.labels.size();
  table.counts.assign(table.rows * table.cols, 0);
  table.row_marginals.assign(table.rows, 0);
  table.col_marginals.assign(table.cols, 0);
  for (std::size_t i = 0; i < table.n; ++i) {
    const auto r = static_cast<std::size_t>(a.labels[i]);
    const auto c = static_cast<std::size_t>(b.labels[i]);
    ++table.counts[r * table.cols + c];
    ++table.row_marginals[r];
    ++table.col_marginals[c];
  }
  return table;
}

double ncut(const SimilarityMatrix& w, const ClusterAssignment& assignment) {
  if (assignment.labels.size() != w.size())
    throw validation_error("ncut: assignment does not cover all vertices");
  const auto k = static_cast<std::size_t>(assignment.k);
  std::vector<double> volume(k, 0.0);
  std::vector<double> cut(k, 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto ci = static_cast<std::size_t>(assignment.labels[i]);
    volume[ci] += w.degree(i);
    auto cols = w.row_cols(i);
    auto vals = w.row_vals(i);
    for (std::size_t e = 0; e < cols.size(); ++e)
      if (static_cast<std::size_t>(assignment.labels[cols[e]]) != ci) cut[ci] += vals[e];
  }
  double total = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    if (volume[c] <= 0.0) throw validation_error("ncut: cluster with zero volume");
    total += cut[c] / volume[c];
  }
  return total;
}

double mutual_information(const ClusterAssignment& a, const ClusterAssignment& b) {
  ContingencyTable table = ContingencyTable::build(a, b);
  const double n = static_cast<double>(table.n);
  double mi = 0.0;
  for (std::size_t i = 0; i < table.rows; ++i) {
    for (std::size_t j = 0; j < table.cols; ++j) {
      const std::size_t joint = table.at(i, j);
      if (joint == 0) continue;  // 0 log 0 = 0
      const double pij = static_cast<double>(joint) / n;
      const double pi = static_cast<double>(table.row_marginals[i]) / n;
      const double pj = static_cast<double>(table.col_marginals[j]) / n;
      mi += pij * std::log(pij / (pi * pj));
    }
  }
  return mi;
}

double entropy(const ClusterAssignment& a) {
  const double n = static_cast<double>(a.labels.size());
  std::vector<std::size_t> counts(static_cast<std::size_t>(a.k), 0);
  for (int l : a.labels) ++counts[static_cast<std::size_t>(l)];
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

double nmi(const ClusterAssignment& a, const ClusterAssignment& b) {
  if (a.labels.size() != b.labels.size())
    throw validation_error("nmi: clustering length mismatch");
  const double ha = entropy(a);
  const double hb = entropy(b);
  if (ha == 0.0 || hb == 0.0) return exact_recovery(a, b) ? 1.0 : 0.0;
  const double value = mutual_information(a, b) / std::sqrt(ha * hb);
  // tiny negative or >1 excursions are pure roundoff
  return std::clamp(value, 0.0, 1.0);
}

bool exact_recovery(const ClusterAssignment& a, const ClusterAssignment& truth) {
  if (a.labels.size() != truth.labels.size())
    throw validation_error("exact_recovery: clustering length mismatch");
  if (a.k != truth.k) return false;
  std::map<int, int> forward;
  std::map<int, int> backward;
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    const int x = a.labels[i];
    const int y = truth.labels[i];
    auto [fit, finserted] = forward.emplace(x, y);
    if (!finserted && fit->second != y) return false;
    auto [bit, binserted] = backward.emplace(y, x);
    if (!binserted && bit->second != x) return false;
  }
  return true;
}

}  // namespace mixclust
