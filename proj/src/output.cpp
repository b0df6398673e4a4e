#include "annealsim/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <system_error>

#include <fmt/format.h>

namespace annealsim {

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 100, kTop = 40, kBottom = 60;

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Viridis-like ramp from a handful of anchor colours.
std::string colour(double t) {
  static constexpr double anchors[][3] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0) * 4.0;
  const int k = std::min(3, static_cast<int>(t));
  const double f = t - k;
  int rgb[3];
  for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(anchors[k][c] + f * (anchors[k + 1][c] - anchors[k][c])));
  return fmt::format("#{:02x}{:02x}{:02x}", rgb[0], rgb[1], rgb[2]);
}

std::string frame(const std::string& title, const std::string& x_label, const std::string& y_label, double x_min,
                  double x_max, double y_min, double y_max) {
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  std::string out;
  out += fmt::format("<text x=\"{}\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n", kWidth / 2,
                     escape(title));
  out += fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft, kTop, plot_w,
      plot_h);
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">{}</text>\n", kLeft + plot_w / 2,
                     kHeight - 15, escape(x_label));
  out += fmt::format(
      "<text x=\"18\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{}</text>\n",
      kTop + plot_h / 2, kTop + plot_h / 2, escape(y_label));
  for (int k = 0; k <= 4; ++k) {
    const double fx = k / 4.0;
    out += fmt::format("<text x=\"{:.1f}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{:.4g}</text>\n",
                       kLeft + fx * plot_w, kTop + plot_h + 16, x_min + fx * (x_max - x_min));
    out += fmt::format("<text x=\"{}\" y=\"{:.1f}\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 6,
                       kTop + plot_h - fx * plot_h + 4, y_min + fx * (y_max - y_min));
  }
  return out;
}

std::string open_svg() {
  return fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
                     kWidth, kHeight, kWidth, kHeight);
}

}  // namespace

std::string render_svg(const Heatmap& map) {
  if (map.values.empty() || map.values.front().empty()) throw std::invalid_argument("heatmap has no data");
  const std::size_t rows = map.values.size(), cols = map.values.front().size();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& row : map.values) {
    if (row.size() != cols) throw std::invalid_argument("heatmap rows differ in length");
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  const double cw = plot_w / static_cast<double>(cols), ch = plot_h / static_cast<double>(rows);

  std::string out = open_svg();
  out += fmt::format("<!-- extent x=[{},{}) y=[{},{}) -->\n", format_double(map.x_min), format_double(map.x_max),
                     format_double(map.y_min), format_double(map.y_max));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                         kLeft + static_cast<double>(c) * cw, kTop + plot_h - static_cast<double>(r + 1) * ch,
                         cw + 0.05, ch + 0.05, colour((map.values[r][c] - lo) / span));
    }
  }
  for (int k = 0; k <= 20; ++k) {
    const double t = k / 20.0;
    out += fmt::format("<rect x=\"{}\" y=\"{:.2f}\" width=\"16\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                       kWidth - kRight + 20, kTop + plot_h * (1 - t) - plot_h / 20, plot_h / 20 + 0.05, colour(t));
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">{:.4g}</text>\n", kWidth - kRight + 40, kTop + 8, hi);
  out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">{:.4g}</text>\n", kWidth - kRight + 40, kTop + plot_h, lo);
  out += frame(map.title, map.x_label, map.y_label, map.x_min, map.x_max, map.y_min, map.y_max);
  out += "</svg>\n";
  return out;
}

std::string render_svg(const LineChart& chart) {
  if (chart.series.empty()) throw std::invalid_argument("line chart has no series");
  auto transform_y = [&](double y) { return chart.log2_y ? std::log2(y) : y; };
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo, y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : chart.series) {
    if (s.x.size() != s.y.size()) throw std::invalid_argument("series x/y lengths differ");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double y = transform_y(s.y[i]);
      if (!std::isfinite(y)) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!std::isfinite(x_lo)) throw std::invalid_argument("line chart has no finite points");
  if (x_hi == x_lo) x_hi = x_lo + 1;
  if (y_hi == y_lo) {
    y_hi += 0.5;
    y_lo -= 0.5;
  }
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  std::string out = open_svg();
  for (std::size_t k = 0; k < chart.series.size(); ++k) {
    const auto& s = chart.series[k];
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double y = transform_y(s.y[i]);
      if (!std::isfinite(y)) continue;
      points += fmt::format("{:.2f},{:.2f} ", kLeft + (s.x[i] - x_lo) / (x_hi - x_lo) * plot_w,
                            kTop + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h);
    }
    const std::string stroke =
        colour(chart.series.size() == 1 ? 0.3 : static_cast<double>(k) / static_cast<double>(chart.series.size() - 1));
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"><title>{}</title></polyline>\n",
                       stroke, points, escape(s.name));
  }
  out += frame(chart.title, chart.x_label, chart.log2_y ? "log2 " + chart.y_label : chart.y_label, x_lo, x_hi, y_lo,
               y_hi);
  out += "</svg>\n";
  return out;
}

}  // namespace annealsim
