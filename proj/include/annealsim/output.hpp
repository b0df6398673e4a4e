#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace annealsim {

/// Writes to a sibling temporary and renames over `path`, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Shortest round-trippable decimal form of a double.
std::string format_double(double value);

struct Heatmap {
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  /// values[row][col]; row indexes y, col indexes x.
  std::vector<std::vector<double>> values;
};

struct LineSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<LineSeries> series;
  bool log2_y = false;
};

std::string render_svg(const Heatmap& map);
std::string render_svg(const LineChart& chart);

}  // namespace annealsim
