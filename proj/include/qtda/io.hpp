#pragma once

// CSV readers/writers shared by the CLI and the pipelines. All numbers are
// written in shortest round-trip form so repeated runs are byte-identical.

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qtda/complex.hpp"

namespace qtda {

struct LabeledRow {
  int label = 0;
  std::vector<double> values;
};

std::string format_double(double x);

// Comma-separated reals, one row per line; blank lines ignored.
std::vector<std::vector<double>> read_csv_rows(std::istream& in, bool skip_header = false);
std::vector<std::vector<double>> read_csv_file(const std::string& path, bool skip_header = false);

PointCloud read_point_cloud_csv(std::istream& in, bool skip_header = false);
PointCloud read_point_cloud_file(const std::string& path, bool skip_header = false);
void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud);

// Square matrix, one row per line.
Eigen::MatrixXd read_matrix_csv(std::istream& in);
Eigen::MatrixXd read_matrix_file(const std::string& path);

// `label,v1,v2,...` per row.
std::vector<LabeledRow> read_labeled_csv(std::istream& in, bool skip_header = false);
std::vector<LabeledRow> read_labeled_file(const std::string& path, bool skip_header = false);
void write_labeled_csv(std::ostream& out, const std::vector<LabeledRow>& rows);

}  // namespace qtda
