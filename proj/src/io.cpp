#include "qtda/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qtda/errors.hpp"

namespace qtda {

namespace {

double parse_double(std::string_view field, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ArgumentError("line " + std::to_string(line) + ": '" + std::string(field) + "' is not a number");
  }
  return value;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

std::vector<std::vector<double>> read_csv_rows(std::istream& in, bool skip_header) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  if (skip_header && std::getline(in, line)) ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_double(rest.substr(0, comma), lineno));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<double>> read_csv_file(const std::string& path, bool skip_header) {
  auto in = open(path);
  return read_csv_rows(in, skip_header);
}

PointCloud read_point_cloud_csv(std::istream& in, bool skip_header) {
  return PointCloud(read_csv_rows(in, skip_header));
}

PointCloud read_point_cloud_file(const std::string& path, bool skip_header) {
  auto in = open(path);
  return read_point_cloud_csv(in, skip_header);
}

void write_point_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  for (const auto& p : cloud.points()) {
    for (std::size_t d = 0; d < p.size(); ++d) out << (d ? "," : "") << format_double(p[d]);
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  const auto rows = read_csv_rows(in);
  if (rows.empty()) throw ArgumentError("matrix file is empty");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) throw ArgumentError("matrix must be square");
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
  auto in = open(path);
  return read_matrix_csv(in);
}

std::vector<LabeledRow> read_labeled_csv(std::istream& in, bool skip_header) {
  std::vector<LabeledRow> out;
  for (auto& row : read_csv_rows(in, skip_header)) {
    if (row.size() < 2) throw ArgumentError("labeled rows need a label and at least one value");
    const double label = row.front();
    if (label != std::floor(label)) throw ArgumentError("labels must be integers");
    out.push_back({static_cast<int>(label), std::vector<double>(row.begin() + 1, row.end())});
  }
  return out;
}

std::vector<LabeledRow> read_labeled_file(const std::string& path, bool skip_header) {
  auto in = open(path);
  return read_labeled_csv(in, skip_header);
}

void write_labeled_csv(std::ostream& out, const std::vector<LabeledRow>& rows) {
  for (const auto& r : rows) {
    out << r.label;
    for (double v : r.values) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace qtda
