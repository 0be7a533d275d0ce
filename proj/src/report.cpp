// Copyright 2026 The nrqae Authors
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

#include "nrqae/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace nrqae {

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

std::string quote_csv(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell &cell) {
    if (const auto *i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto *d = std::get_if<double>(&cell)) return format_real(*d);
    return quote_csv(std::get<std::string>(cell));
}

std::string escape_xml(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
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

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

struct Axis {
    bool log = false;
    double lo = 0, hi = 1;

    double map(double v) const { return log ? std::log10(v) : v; }
    bool placeable(double v) const { return std::isfinite(v) && (!log || v > 0); }
};

Axis fit_axis(const std::vector<PlotSeries> &series, bool log, bool use_x) {
    Axis a;
    a.log = log;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto &s : series) {
        const auto &vals = use_x ? s.x : s.y;
        for (double v : vals) {
            if (!a.placeable(v)) continue;
            lo = std::min(lo, a.map(v));
            hi = std::max(hi, a.map(v));
        }
    }
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (log) {
        lo = std::floor(lo);
        hi = std::ceil(hi);
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    a.lo = lo;
    a.hi = hi;
    return a;
}

std::vector<double> ticks(const Axis &a) {
    std::vector<double> t;
    if (a.log) {
        const int step = std::max(1, static_cast<int>(std::ceil((a.hi - a.lo) / 8)));
        for (double v = a.lo; v <= a.hi + 1e-9; v += step) t.push_back(v);
        return t;
    }
    for (int k = 0; k <= 5; k++) t.push_back(a.lo + (a.hi - a.lo) * k / 5);
    return t;
}

std::string tick_label(const Axis &a, double v) {
    if (a.log) return "1e" + std::to_string(static_cast<int>(std::lround(v)));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::string to_csv(const Table &table) {
    std::string out;
    for (std::size_t k = 0; k < table.header.size(); k++) {
        if (k) out += ',';
        out += quote_csv(table.header[k]);
    }
    out += '\n';
    for (const auto &row : table.rows) {
        for (std::size_t k = 0; k < row.size(); k++) {
            if (k) out += ',';
            out += cell_text(row[k]);
        }
        out += '\n';
    }
    return out;
}

std::string svg_line_plot(const PlotSpec &spec, const std::vector<PlotSeries> &series) {
    const double left = 70, right = 150, top = 40, bottom = 50;
    const double pw = spec.width - left - right, ph = spec.height - top - bottom;
    const Axis ax = fit_axis(series, spec.log_x, true);
    const Axis ay = fit_axis(series, spec.log_y, false);
    auto px = [&](double v) { return left + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double v) { return top + ph - (ay.map(v) - ay.lo) / (ay.hi - ay.lo) * ph; };
    auto tx = [&](double m) { return left + (m - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto ty = [&](double m) { return top + ph - (m - ay.lo) / (ay.hi - ay.lo) * ph; };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(spec.width) +
         "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
         std::to_string(spec.height) + "\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" + escape_xml(spec.title) + "</text>\n";

    // axes and ticks
    s += "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(left + pw) + "\" y2=\"" +
         num(top + ph) + "\"/>\n";
    s += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" + num(top + ph) +
         "\"/>\n";
    s += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (double t : ticks(ax)) {
        const double x = tx(t);
        s += "<line x1=\"" + num(x) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
             num(top + ph + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(x) + "\" y=\"" + num(top + ph + 18) + "\" text-anchor=\"middle\">" +
             escape_xml(tick_label(ax, t)) + "</text>\n";
    }
    for (double t : ticks(ay)) {
        const double y = ty(t);
        s += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left) + "\" y2=\"" + num(y) +
             "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(left - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
             escape_xml(tick_label(ay, t)) + "</text>\n";
    }
    s += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(spec.height - 10.0) + "\" text-anchor=\"middle\">" +
         escape_xml(spec.x_label) + "</text>\n";
    s += "<text x=\"16\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(top + ph / 2) + ")\">" + escape_xml(spec.y_label) + "</text>\n";
    s += "</g>\n";

    for (std::size_t k = 0; k < series.size(); k++) {
        const auto &ser = series[k];
        const char *color = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
        std::string pts;
        for (std::size_t i = 0; i < std::min(ser.x.size(), ser.y.size()); i++) {
            if (!ax.placeable(ser.x[i]) || !ay.placeable(ser.y[i])) continue;
            if (!pts.empty()) pts += ' ';
            pts += num(px(ser.x[i])) + "," + num(py(ser.y[i]));
        }
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.8\" points=\"" + pts +
             "\"/>\n";
        const double ly = top + 14 + 18.0 * static_cast<double>(k);
        s += "<line x1=\"" + num(left + pw + 12) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(left + pw + 36) +
             "\" y2=\"" + num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"1.8\"/>\n";
        s += "<text x=\"" + num(left + pw + 42) + "\" y=\"" + num(ly + 4) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" + escape_xml(ser.name) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace nrqae
