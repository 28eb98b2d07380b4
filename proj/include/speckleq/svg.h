// Copyright 2026 The speckleq Authors
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

#ifndef SPECKLEQ_SVG_H
#define SPECKLEQ_SVG_H

#include <string>
#include <utility>
#include <vector>

namespace speckleq {

struct Histogram {
    double lo = 0;
    double hi = 1;
    std::vector<double> density;  ///< per-bin count / (n * width)
    size_t overflow = 0;          ///< samples above hi

    double width() const { return (hi - lo) / static_cast<double>(density.size()); }
};

/// Density histogram on [lo, hi] with `bins` equal-width bins.
Histogram make_histogram(const std::vector<double> &samples, size_t bins, double lo, double hi);

/// A small standalone SVG chart: one bar series and any number of line overlays.
class SvgPlot {
   public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);

    void set_bars(const Histogram &h, std::string legend);
    void add_line(std::vector<std::pair<double, double>> points, std::string legend);

    std::string render(int width = 640, int height = 420) const;

   private:
    struct Line {
        std::vector<std::pair<double, double>> points;
        std::string legend;
    };
    std::string title_, x_label_, y_label_;
    Histogram bars_;
    std::string bars_legend_;
    bool has_bars_ = false;
    std::vector<Line> lines_;
};

}  // namespace speckleq

#endif
