#include "weinstein/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "weinstein/report.hpp"

namespace weinstein {

void write_node_csv(const std::filesystem::path& path, const HalfSpaceGrid& grid,
                    const std::vector<std::string>& names, const std::vector<std::span<const double>>& columns) {
  if (names.size() != columns.size()) throw std::invalid_argument("write_node_csv: names and columns differ in count");
  for (const auto& c : columns) {
    if (c.size() != grid.size()) throw std::invalid_argument("write_node_csv: column size does not match grid");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (int i = 0; i < grid.dim(); ++i) out << (i ? "," : "") << 'x' << i + 1;
  for (const std::string& n : names) out << ',' << n;
  out << '\n';
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point x = grid.node(k);
    for (int i = 0; i < grid.dim(); ++i) out << (i ? "," : "") << format_double(x[i]);
    for (const auto& c : columns) out << ',' << format_double(c[k]);
    out << '\n';
  }
  if (!out) throw IoError("write failed: '" + path.string() + "'");
}

void write_grid_csv(const std::filesystem::path& path, const RealField& f, const std::string& name) {
  write_node_csv(path, f.grid(), {name}, {f.values()});
}

namespace {

std::vector<double> split_numbers(const std::string& line, const std::string& where) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::size_t stop = comma == std::string::npos ? line.size() : comma;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(line.data() + start, line.data() + stop, v);
    if (ec != std::errc() || ptr != line.data() + stop) throw IoError(where + ": malformed number");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// Sorted distinct values of an axis, merging values closer than a relative 1e-9.
std::vector<double> distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || std::fabs(x - out.back()) > 1e-9 * std::max(1.0, std::fabs(x))) out.push_back(x);
  }
  return out;
}

}  // namespace

RealField read_grid_csv(const std::filesystem::path& path, const WeinsteinParams& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  const int d = params.d();
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
  {
    std::istringstream header(line);
    std::string cell;
    for (int i = 0; i < d; ++i) {
      if (!std::getline(header, cell, ',') || cell != "x" + std::to_string(i + 1)) {
        throw IoError(path.string() + ": header must start with x1..x" + std::to_string(d));
      }
    }
    if (!std::getline(header, cell, ',')) throw IoError(path.string() + ": no value column");
  }

  std::vector<std::vector<double>> coords(static_cast<std::size_t>(d));
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto row = split_numbers(line, path.string() + ":" + std::to_string(line_no));
    if (static_cast<int>(row.size()) < d + 1) throw IoError(path.string() + ":" + std::to_string(line_no) + ": too few columns");
    for (int i = 0; i < d; ++i) coords[static_cast<std::size_t>(i)].push_back(row[static_cast<std::size_t>(i)]);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(path.string() + ": no data rows");

  std::vector<int> counts;
  std::vector<double> half_widths;
  double depth = 0.0;
  for (int i = 0; i < d; ++i) {
    const auto axis = distinct(coords[static_cast<std::size_t>(i)]);
    if (axis.size() < 2) throw IoError(path.string() + ": axis x" + std::to_string(i + 1) + " needs two nodes");
    const double h = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
    counts.push_back(static_cast<int>(axis.size()));
    if (i + 1 < d) {
      half_widths.push_back(axis.back() + 0.5 * h);
    } else {
      depth = axis.back() + 0.5 * h;
    }
  }
  GridPtr grid;
  try {
    grid = std::make_shared<const HalfSpaceGrid>(params, half_widths, depth, counts);
  } catch (const std::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
  if (rows.size() != grid->size()) throw IoError(path.string() + ": row count does not fill a tensor grid");

  std::vector<double> values(grid->size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Point expect = grid->node(k);
    for (int i = 0; i < d; ++i) {
      const double got = rows[k][static_cast<std::size_t>(i)];
      if (std::fabs(got - expect[i]) > 1e-9 * std::max(1.0, std::fabs(expect[i]))) {
        throw IoError(path.string() + ": row " + std::to_string(k + 2) + " is not a node of the rebuilt grid");
      }
    }
    values[k] = rows[k][static_cast<std::size_t>(d)];
  }
  try {
    return RealField(grid, std::move(values));
  } catch (const std::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace weinstein
