#pragma once

#include <iosfwd>
#include <string>

#include "mixclust/cluster_types.hpp"
#include "mixclust/point_set.hpp"

namespace mixclust {

// Headerless CSV, one point per row; when `label_col_last` the final integer
// column carries ground-truth labels. LF or CRLF line endings.
PointSet load_points_csv(std::istream& in, bool label_col_last = false);
void save_points_csv(const PointSet& points, std::ostream& out,
                     bool include_labels = false);

// One integer label per line.
ClusterAssignment load_labels(std::istream& in);
void save_labels(const ClusterAssignment& assignment, std::ostream& out);

PointSet load_points_file(const std::string& path, bool label_col_last = false);
ClusterAssignment load_labels_file(const std::string& path);

}  // namespace mixclust
