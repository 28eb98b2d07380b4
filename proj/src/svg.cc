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

#include "speckleq/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace speckleq {

namespace {

const char *kLineColors[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// Roughly five "nice" tick positions covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
    double span = hi - lo;
    if (!(span > 0)) return {lo};
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(t);
    return out;
}

}  // namespace

Histogram make_histogram(const std::vector<double> &samples, size_t bins, double lo, double hi) {
    Histogram h;
    h.lo = lo;
    h.hi = hi > lo ? hi : lo + 1;
    h.density.assign(std::max<size_t>(bins, 1), 0.0);
    double w = h.width();
    for (double s : samples) {
        if (s > h.hi) {
            h.overflow++;
            continue;
        }
        if (s < h.lo) continue;
        size_t k = std::min(h.density.size() - 1, static_cast<size_t>((s - h.lo) / w));
        h.density[k] += 1.0;
    }
    if (!samples.empty()) {
        for (double &d : h.density) d /= static_cast<double>(samples.size()) * w;
    }
    return h;
}

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::set_bars(const Histogram &h, std::string legend) {
    bars_ = h;
    bars_legend_ = std::move(legend);
    has_bars_ = true;
}

void SvgPlot::add_line(std::vector<std::pair<double, double>> points, std::string legend) {
    lines_.push_back({std::move(points), std::move(legend)});
}

std::string SvgPlot::render(int width, int height) const {
    const double left = 70, right = 20, top = 40, bottom = 55;
    const double pw = width - left - right, ph = height - top - bottom;

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y1 = 0;
    if (has_bars_) {
        x0 = bars_.lo;
        x1 = bars_.hi;
        for (double d : bars_.density) y1 = std::max(y1, d);
    }
    for (const auto &l : lines_) {
        for (auto [x, y] : l.points) {
            if (!has_bars_) {
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
            }
            if (std::isfinite(y)) y1 = std::max(y1, y);
        }
    }
    if (!std::isfinite(x0)) {
        x0 = 0;
        x1 = 1;
    }
    if (!(x1 > x0)) x1 = x0 + 1;
    if (has_bars_) {
        double bar_max = *std::max_element(bars_.density.begin(), bars_.density.end());
        y1 = std::min(y1, std::max(bar_max, 1e-300) * 1.6);
    }
    y1 = y1 > 0 ? y1 * 1.08 : 1;

    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + ph - std::clamp(y / y1, 0.0, 1.0) * ph; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title_)
      << "</text>\n";

    if (has_bars_) {
        double w = bars_.width();
        for (size_t k = 0; k < bars_.density.size(); k++) {
            double xa = px(bars_.lo + w * static_cast<double>(k));
            double xb = px(bars_.lo + w * static_cast<double>(k + 1));
            double yt = py(bars_.density[k]);
            s << "<rect x=\"" << num(xa) << "\" y=\"" << num(yt) << "\" width=\"" << num(std::max(0.0, xb - xa - 0.5))
              << "\" height=\"" << num(top + ph - yt) << "\" fill=\"#9ecae1\" stroke=\"#3182bd\" stroke-width=\"0.5\"/>\n";
        }
    }
    for (size_t i = 0; i < lines_.size(); i++) {
        s << "<polyline fill=\"none\" stroke=\"" << kLineColors[i % 4] << "\" stroke-width=\"1.8\" points=\"";
        for (auto [x, y] : lines_[i].points) {
            if (x < x0 || x > x1) continue;
            s << num(px(x)) << ',' << num(std::isfinite(y) ? py(y) : top) << ' ';
        }
        s << "\"/>\n";
    }

    // Axes and ticks.
    s << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
      << "\" stroke=\"black\"/>\n";
    for (double t : ticks(x0, x1)) {
        s << "<line x1=\"" << num(px(t)) << "\" y1=\"" << top + ph << "\" x2=\"" << num(px(t)) << "\" y2=\""
          << top + ph + 5 << "\" stroke=\"black\"/>";
        s << "<text x=\"" << num(px(t)) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">" << tick_label(t)
          << "</text>\n";
    }
    for (double t : ticks(0, y1)) {
        s << "<line x1=\"" << left - 5 << "\" y1=\"" << num(py(t)) << "\" x2=\"" << left << "\" y2=\"" << num(py(t))
          << "\" stroke=\"black\"/>";
        s << "<text x=\"" << left - 8 << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">" << tick_label(t)
          << "</text>\n";
    }
    s << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">" << escape(x_label_)
      << "</text>\n";
    s << "<text transform=\"translate(16," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(y_label_) << "</text>\n";

    // Legend.
    double ly = top + 8;
    if (has_bars_ && !bars_legend_.empty()) {
        s << "<rect x=\"" << left + pw - 170 << "\" y=\"" << ly - 9 << "\" width=\"14\" height=\"10\" fill=\"#9ecae1\"/>";
        s << "<text x=\"" << left + pw - 150 << "\" y=\"" << ly << "\">" << escape(bars_legend_) << "</text>\n";
        ly += 16;
    }
    for (size_t i = 0; i < lines_.size(); i++) {
        s << "<line x1=\"" << left + pw - 170 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + pw - 156 << "\" y2=\""
          << ly - 4 << "\" stroke=\"" << kLineColors[i % 4] << "\" stroke-width=\"2\"/>";
        s << "<text x=\"" << left + pw - 150 << "\" y=\"" << ly << "\">" << escape(lines_[i].legend) << "</text>\n";
        ly += 16;
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace speckleq
