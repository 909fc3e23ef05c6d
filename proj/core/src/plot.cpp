/*
 * Copyright 2026 The fragc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Bar chart of per-model accuracy, drawn with OpenCV primitives.

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include <algorithm>
#include <cstdio>

#include "fragc/error.hpp"
#include "fragc/metrics.hpp"

namespace fragc {

void write_accuracy_chart(const std::filesystem::path& path, std::span<const BarEntry> bars,
                          std::string_view title) {
  if (bars.empty()) throw InvalidInput("accuracy chart needs at least one bar");

  constexpr int kBarWidth = 90;
  constexpr int kGap = 30;
  constexpr int kLeft = 70;
  constexpr int kTop = 60;
  constexpr int kPlotHeight = 360;
  constexpr int kBottom = 90;
  const int width = kLeft + static_cast<int>(bars.size()) * (kBarWidth + kGap) + kGap;
  const int height = kTop + kPlotHeight + kBottom;

  cv::Mat canvas(height, width, CV_8UC3, cv::Scalar(255, 255, 255));
  const cv::Scalar axis(40, 40, 40);
  const cv::Scalar grid(220, 220, 220);
  const cv::Scalar fill(180, 119, 31);  // BGR
  const int font = cv::FONT_HERSHEY_SIMPLEX;
  const int base_y = kTop + kPlotHeight;

  for (int tick = 0; tick <= 10; ++tick) {
    const int y = base_y - tick * kPlotHeight / 10;
    cv::line(canvas, {kLeft, y}, {width - kGap / 2, y}, grid, 1);
    char label[8];
    std::snprintf(label, sizeof label, "%d", tick * 10);
    cv::putText(canvas, label, {kLeft - 40, y + 5}, font, 0.45, axis, 1, cv::LINE_AA);
  }
  cv::line(canvas, {kLeft, kTop}, {kLeft, base_y}, axis, 2);
  cv::line(canvas, {kLeft, base_y}, {width - kGap / 2, base_y}, axis, 2);
  cv::putText(canvas, std::string(title), {kLeft, kTop - 25}, font, 0.7, axis, 2, cv::LINE_AA);

  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double v = std::clamp(bars[i].value, 0.0, 1.0);
    const int x = kLeft + kGap + static_cast<int>(i) * (kBarWidth + kGap);
    const int h = static_cast<int>(v * kPlotHeight + 0.5);
    cv::rectangle(canvas, {x, base_y - h}, {x + kBarWidth, base_y}, fill, cv::FILLED);
    char value[16];
    std::snprintf(value, sizeof value, "%.2f%%", v * 100.0);
    cv::putText(canvas, value, {x + 8, base_y - h - 8}, font, 0.45, axis, 1, cv::LINE_AA);
    cv::putText(canvas, bars[i].label, {x, base_y + 25}, font, 0.45, axis, 1, cv::LINE_AA);
  }

  if (!cv::imwrite(path.string(), canvas)) throw IoError("cannot write chart: " + path.string());
}

}  // namespace fragc
