#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "zo/bench/aggregate.hpp"
#include "zo/io.hpp"

namespace zo::bench {

namespace detail {

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                           "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

inline std::string xml_escape(const std::string& s) {
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

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Step from {1, 2, 5} x 10^k giving at most ~6 ticks over span.
inline double nice_step(double span) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / 5.0;
    const double base = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (m * base >= raw) return m * base;
    return 10.0 * base;
}

inline std::string tick_label(double v) {
    char buf[32];
    if (std::abs(v) >= 1e5)
        std::snprintf(buf, sizeof buf, "%.3g", v);
    else
        std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace detail

/// Lowest log10 error drawn; the exact-zero sentinel (-300) is clipped here.
inline constexpr double kSvgFloor = -16.0;

/// Line chart of mean log10 relative error against query count with shaded
/// confidence bands. Series without prior information are dashed.
inline std::string render_svg(const std::vector<Aggregate>& aggs, const std::string& title = "") {
    const double W = 820, H = 480, left = 70, right = 200, top = 40, bottom = 55;
    const double pw = W - left - right, ph = H - top - bottom;

    double x_max = 1.0, y_min = 0.0, y_max = 0.0;
    bool any = false;
    for (const auto& a : aggs)
        for (std::size_t i = 0; i < a.grid.size(); ++i) {
            x_max = std::max(x_max, static_cast<double>(a.grid[i]));
            const double lo = std::max(kSvgFloor, a.lower[i]), hi = std::max(kSvgFloor, a.upper[i]);
            if (!any) {
                y_min = lo;
                y_max = hi;
                any = true;
            }
            y_min = std::min(y_min, lo);
            y_max = std::max(y_max, hi);
        }
    y_min = std::floor(y_min);
    y_max = std::max(std::ceil(y_max), y_min + 1.0);

    auto X = [&](double x) { return left + pw * x / x_max; };
    auto Y = [&](double y) { return top + ph * (y_max - std::clamp(y, y_min, y_max)) / (y_max - y_min); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(W) + "\" height=\"" + detail::fmt(H) +
         "\" viewBox=\"0 0 " + detail::fmt(W) + " " + detail::fmt(H) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        s += "<text x=\"" + detail::fmt(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
             detail::xml_escape(title) + "</text>\n";

    // axes and ticks
    s += "<g stroke=\"#444\" stroke-width=\"1\">\n";
    s += "<line x1=\"" + detail::fmt(left) + "\" y1=\"" + detail::fmt(top + ph) + "\" x2=\"" + detail::fmt(left + pw) +
         "\" y2=\"" + detail::fmt(top + ph) + "\"/>\n";
    s += "<line x1=\"" + detail::fmt(left) + "\" y1=\"" + detail::fmt(top) + "\" x2=\"" + detail::fmt(left) +
         "\" y2=\"" + detail::fmt(top + ph) + "\"/>\n";
    s += "</g>\n<g fill=\"#222\">\n";
    const double xs = detail::nice_step(x_max);
    for (double x = 0.0; x <= x_max + 1e-9 * x_max; x += xs)
        s += "<text x=\"" + detail::fmt(X(x)) + "\" y=\"" + detail::fmt(top + ph + 16) + "\" text-anchor=\"middle\">" +
             detail::tick_label(x) + "</text>\n";
    const double ys = std::max(1.0, detail::nice_step(y_max - y_min));
    for (double y = y_max; y >= y_min - 1e-9; y -= ys)
        s += "<text x=\"" + detail::fmt(left - 6) + "\" y=\"" + detail::fmt(Y(y) + 4) + "\" text-anchor=\"end\">" +
             detail::tick_label(y) + "</text>\n";
    s += "<text x=\"" + detail::fmt(left + pw / 2) + "\" y=\"" + detail::fmt(H - 12) +
         "\" text-anchor=\"middle\">directional-derivative queries</text>\n";
    s += "<text transform=\"translate(18 " + detail::fmt(top + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">log10 (f - f*) / (f(x0) - f*)</text>\n";
    s += "</g>\n";

    // faint grid
    s += "<g stroke=\"#ddd\" stroke-width=\"0.5\">\n";
    for (double y = y_max; y >= y_min - 1e-9; y -= ys)
        s += "<line x1=\"" + detail::fmt(left) + "\" y1=\"" + detail::fmt(Y(y)) + "\" x2=\"" + detail::fmt(left + pw) +
             "\" y2=\"" + detail::fmt(Y(y)) + "\"/>\n";
    s += "</g>\n";

    for (std::size_t k = 0; k < aggs.size(); ++k) {
        const auto& a = aggs[k];
        const char* color = detail::kPalette[k % std::size(detail::kPalette)];
        std::string band, line;
        for (std::size_t i = 0; i < a.grid.size(); ++i)
            band += detail::fmt(X(static_cast<double>(a.grid[i]))) + "," + detail::fmt(Y(a.upper[i])) + " ";
        for (std::size_t i = a.grid.size(); i-- > 0;)
            band += detail::fmt(X(static_cast<double>(a.grid[i]))) + "," + detail::fmt(Y(a.lower[i])) + " ";
        for (std::size_t i = 0; i < a.grid.size(); ++i)
            line += detail::fmt(X(static_cast<double>(a.grid[i]))) + "," + detail::fmt(Y(a.mean[i])) + " ";
        if (!band.empty()) band.pop_back();
        if (!line.empty()) line.pop_back();
        s += "<polygon class=\"band\" fill=\"" + std::string(color) + "\" fill-opacity=\"0.18\" stroke=\"none\" points=\"" +
             band + "\"/>\n";
        s += "<polyline class=\"mean\" fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.6\"" +
             (a.uses_prior ? "" : " stroke-dasharray=\"6 4\"") + " points=\"" + line + "\"/>\n";

        const double ly = top + 10 + 18 * static_cast<double>(k);
        const double lx = left + pw + 15;
        s += "<line x1=\"" + detail::fmt(lx) + "\" y1=\"" + detail::fmt(ly) + "\" x2=\"" + detail::fmt(lx + 24) +
             "\" y2=\"" + detail::fmt(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" +
             (a.uses_prior ? "" : " stroke-dasharray=\"6 4\"") + "/>\n";
        s += "<text x=\"" + detail::fmt(lx + 30) + "\" y=\"" + detail::fmt(ly + 4) + "\">" + detail::xml_escape(a.label) +
             "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

inline void emit_svg(const std::vector<Aggregate>& aggs, const std::string& path, const std::string& title = "") {
    io::write_text_file(path, render_svg(aggs, title));
}

}  // namespace zo::bench
