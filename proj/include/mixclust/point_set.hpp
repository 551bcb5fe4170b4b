#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mixclust/errors.hpp"

namespace mixclust {

// A set of n points in d dimensions, row-major, with optional ground-truth labels.
class PointSet {
 public:
  PointSet(std::size_t n, std::size_t d, std::vector<double> coords,
           std::optional<std::vector<int>> labels = std::nullopt)
      : n_(n), d_(d), coords_(std::move(coords)), labels_(std::move(labels)) {
    if (n_ == 0) throw validation_error("PointSet: need at least one point");
    if (coords_.size() != n_ * d_)
      throw validation_error("PointSet: coordinate count does not match n*d");
    for (double c : coords_)
      if (!std::isfinite(c)) throw validation_error("PointSet: non-finite coordinate");
    if (labels_) {
      if (labels_->size() != n_)
        throw validation_error("PointSet: label count does not match n");
      for (int l : *labels_)
        if (l < 0) throw validation_error("PointSet: negative label");
    }
  }

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }

  std::span<const double> row(std::size_t i) const {
    return {coords_.data() + i * d_, d_};
  }
  const std::vector<double>& coords() const { return coords_; }

  bool has_labels() const { return labels_.has_value(); }
  const std::vector<int>& labels() const { return *labels_; }

  double squared_distance(std::size_t i, std::size_t j) const {
    const double* a = coords_.data() + i * d_;
    const double* b = coords_.data() + j * d_;
    double s = 0.0;
    for (std::size_t t = 0; t < d_; ++t) {
      const double diff = a[t] - b[t];
      s += diff * diff;
    }
    return s;
  }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<double> coords_;
  std::optional<std::vector<int>> labels_;
};

}  // namespace mixclust
