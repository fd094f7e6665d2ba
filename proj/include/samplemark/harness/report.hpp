// Copyright 2026 The samplemark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <iterator>
#include <tuple>
#include <utility>
#include <vector>

#include "samplemark/harness/csv.hpp"

namespace samplemark::harness {

// One aggregated line of the report table.
struct ReportRow {
  std::string method;
  std::string axis;
  std::string axis_value;
  std::size_t n_samples = 0;
  double mean_z = 0.0;
  double detection_rate = 0.0;
  double mean_diversity = 0.0;
};

// Merges summary rows sharing (method, axis, axis_value), weighting by
// n_samples. Keys keep their first-seen order.
class ReportAggregator {
 public:
  void add(const ReportRow& row) {
    const Key key{row.method, row.axis, row.axis_value};
    auto it = index_.find(key);
    if (it == index_.end()) {
      index_.emplace(key, rows_.size());
      rows_.push_back(row);
      return;
    }
    ReportRow& acc = rows_[it->second];
    const double a = static_cast<double>(acc.n_samples);
    const double b = static_cast<double>(row.n_samples);
    const double total = a + b;
    if (total > 0) {
      acc.mean_z = (acc.mean_z * a + row.mean_z * b) / total;
      acc.detection_rate = (acc.detection_rate * a + row.detection_rate * b) / total;
      acc.mean_diversity = (acc.mean_diversity * a + row.mean_diversity * b) / total;
    }
    acc.n_samples += row.n_samples;
  }

  const std::vector<ReportRow>& rows() const noexcept { return rows_; }

 private:
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::size_t> index_;
  std::vector<ReportRow> rows_;
};

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// Self-contained SVG line chart of detection rate against attack rate, one
// polyline per method. X ticks are the attack rates present in the data.
inline std::string render_attack_chart(const std::vector<ReportRow>& rows) {
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  std::vector<double> xs;
  for (const ReportRow& r : rows) {
    if (r.axis != "attack_rate") continue;
    const double x = std::stod(r.axis_value);
    series[r.method].emplace_back(x, r.detection_rate);
    xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 70, kRight = 150, kTop = 30, kBottom = 60;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double x_min = xs.empty() ? 0.0 : xs.front();
  const double x_max = xs.empty() ? 1.0 : xs.back();
  const auto sx = [&](double x) {
    return x_max > x_min ? kLeft + (x - x_min) / (x_max - x_min) * plot_w
                         : kLeft + plot_w / 2;
  };
  const auto sy = [&](double y) { return kTop + (1.0 - y) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0) << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << sy(0) << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0) << "\" x2=\"" << kLeft
      << "\" y2=\"" << sy(1) << "\" stroke=\"black\"/>\n";
  for (double x : xs) {
    svg << "<line x1=\"" << sx(x) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(x)
        << "\" y2=\"" << sy(0) + 5 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(x) << "\" y=\"" << sy(0) + 20
        << "\" text-anchor=\"middle\">" << format_double(x) << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double y = i / 4.0;
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << sy(y) << "\" x2=\"" << kLeft
        << "\" y2=\"" << sy(y) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 10 << "\" y=\"" << sy(y) + 4
        << "\" text-anchor=\"end\">" << format_double(y) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">attack rate</text>\n";
  svg << "<text x=\"20\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << kTop + plot_h / 2
      << ")\">detection rate</text>\n";

  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#ff7f0e", "#9467bd", "#8c564b"};
  std::size_t color = 0;
  for (auto& [method, points] : series) {
    std::sort(points.begin(), points.end());
    const char* stroke = kColors[color % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << stroke
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i) svg << ' ';
      svg << sx(points[i].first) << ',' << sy(points[i].second);
    }
    svg << "\"/>\n";
    const double ly = kTop + 20.0 * static_cast<double>(color);
    svg << "<line x1=\"" << kLeft + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + plot_w + 35 << "\" y2=\"" << ly << "\" stroke=\"" << stroke
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kLeft + plot_w + 40 << "\" y=\"" << ly + 4 << "\">"
        << xml_escape(method) << "</text>\n";
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace samplemark::harness
