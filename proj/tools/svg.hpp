#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

// Minimal log-log scatter plot with a fitted power law, no dependencies.

namespace wn::svg {

namespace detail {

inline std::string num(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.1f", v);
    return buffer;
}

}  // namespace detail

// Points (xs[i], ys[i]) on log2 axes plus the line y = 2^intercept * x^slope.
inline std::string loglog_plot(const std::vector<double>& xs, const std::vector<double>& ys,
                               double slope, double intercept, const std::string& title) {
    const double width = 640.0, height = 480.0;
    const double left = 70.0, right = 20.0, top = 40.0, bottom = 50.0;

    double lx_min = std::log2(xs.front()), lx_max = lx_min;
    double ly_min = std::log2(ys.front()), ly_max = ly_min;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        lx_min = std::min(lx_min, std::log2(xs[i]));
        lx_max = std::max(lx_max, std::log2(xs[i]));
        ly_min = std::min(ly_min, std::log2(ys[i]));
        ly_max = std::max(ly_max, std::log2(ys[i]));
    }
    if (lx_max == lx_min) lx_max += 1.0;
    if (ly_max == ly_min) ly_max += 1.0;
    const double pad_y = 0.05 * (ly_max - ly_min);
    ly_min -= pad_y;
    ly_max += pad_y;

    auto px = [&](double lx) {
        return left + (lx - lx_min) / (lx_max - lx_min) * (width - left - right);
    };
    auto py = [&](double ly) {
        return height - bottom - (ly - ly_min) / (ly_max - ly_min) * (height - top - bottom);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    out += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" + title + "</text>\n";

    // axis frame
    out += "<rect x=\"" + detail::num(left) + "\" y=\"" + detail::num(top) + "\" width=\"" +
           detail::num(width - left - right) + "\" height=\"" + detail::num(height - top - bottom) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks at integer log2 values
    for (int k = static_cast<int>(std::ceil(lx_min)); k <= static_cast<int>(std::floor(lx_max)); ++k) {
        const double x = px(k);
        out += "<line x1=\"" + detail::num(x) + "\" y1=\"" + detail::num(height - bottom) +
               "\" x2=\"" + detail::num(x) + "\" y2=\"" + detail::num(height - bottom + 5) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + detail::num(x) + "\" y=\"" + detail::num(height - bottom + 20) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">2^" +
               std::to_string(k) + "</text>\n";
    }
    for (int k = static_cast<int>(std::ceil(ly_min)); k <= static_cast<int>(std::floor(ly_max)); ++k) {
        const double y = py(k);
        out += "<line x1=\"" + detail::num(left - 5) + "\" y1=\"" + detail::num(y) + "\" x2=\"" +
               detail::num(left) + "\" y2=\"" + detail::num(y) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + detail::num(left - 8) + "\" y=\"" + detail::num(y + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">2^" +
               std::to_string(k) + "</text>\n";
    }

    // fitted line clipped to the x range
    const double y0 = intercept + slope * lx_min;
    const double y1 = intercept + slope * lx_max;
    out += "<line x1=\"" + detail::num(px(lx_min)) + "\" y1=\"" + detail::num(py(y0)) + "\" x2=\"" +
           detail::num(px(lx_max)) + "\" y2=\"" + detail::num(py(y1)) +
           "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";

    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += "<circle cx=\"" + detail::num(px(std::log2(xs[i]))) + "\" cy=\"" +
               detail::num(py(std::log2(ys[i]))) + "\" r=\"3\" fill=\"#2a6fb0\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace wn::svg
