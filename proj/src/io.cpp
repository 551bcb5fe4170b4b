#include "mixclust/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace mixclust {

PointSet load_points_csv(std::istream& in, bool label_col_last) {
  std::vector<double> coords;
  std::vector<int> labels;
  std::size_t dim = 0;
  std::size_t n = 0;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<double> fields;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
          ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
        fields.push_back(v);
      } catch (const std::exception&) {
        throw validation_error("points csv line " + std::to_string(lineno) +
                               ": bad number `" + cell + "`");
      }
    }
    const std::size_t need = label_col_last ? 2 : 1;
    if (fields.size() < need)
      throw validation_error("points csv line " + std::to_string(lineno) +
                             ": too few columns");
    const std::size_t d = fields.size() - (label_col_last ? 1 : 0);
    if (dim == 0)
      dim = d;
    else if (d != dim)
      throw validation_error("points csv line " + std::to_string(lineno) +
                             ": inconsistent column count");
    for (std::size_t c = 0; c < dim; ++c) coords.push_back(fields[c]);
    if (label_col_last) {
      const double raw = fields.back();
      if (raw != std::floor(raw))
        throw validation_error("points csv line " + std::to_string(lineno) +
                               ": non-integer label");
      labels.push_back(static_cast<int>(raw));
    }
    ++n;
  }
  if (n == 0) throw validation_error("points csv: no rows");
  if (label_col_last) return PointSet(n, dim, std::move(coords), std::move(labels));
  return PointSet(n, dim, std::move(coords));
}

void save_points_csv(const PointSet& points, std::ostream& out, bool include_labels) {
  out.precision(17);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto row = points.row(i);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << row[c];
    }
    if (include_labels) out << ',' << points.labels()[i];
    out << '\n';
  }
}

ClusterAssignment load_labels(std::istream& in) {
  std::vector<int> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      const int v = std::stoi(line, &used);
      if (used != line.size()) throw std::invalid_argument(line);
      labels.push_back(v);
    } catch (const std::exception&) {
      throw validation_error("labels line " + std::to_string(lineno) + ": bad label `" +
                             line + "`");
    }
  }
  return ClusterAssignment::from_labels(std::move(labels));
}

void save_labels(const ClusterAssignment& assignment, std::ostream& out) {
  for (int l : assignment.labels) out << l << '\n';
}

PointSet load_points_file(const std::string& path, bool label_col_last) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open points file: " + path);
  return load_points_csv(in, label_col_last);
}

ClusterAssignment load_labels_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open labels file: " + path);
  return load_labels(in);
}

}  // namespace mixclust
