#include "vinesense/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vinesense/errors.hpp"

namespace vinesense::io {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#17becf"};
constexpr int kPaletteSize = 8;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape_text(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Bounds {
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    bool seen = false;

    void add(double x, double y) {
        if (!seen) {
            x0 = x1 = x;
            y0 = y1 = y;
            seen = true;
            return;
        }
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }

    void finalize() {
        if (!seen) {
            x0 = y0 = 0.0;
            x1 = y1 = 1.0;
        }
        if (x1 - x0 < 1e-12) {
            x0 -= 1.0;
            x1 += 1.0;
        }
        if (y1 - y0 < 1e-12) {
            y0 -= 1.0;
            y1 += 1.0;
        }
        double px = 0.05 * (x1 - x0);
        double py = 0.05 * (y1 - y0);
        x0 -= px;
        x1 += px;
        y0 -= py;
        y1 += py;
    }
};

}  // namespace

std::string render_svg(const PlotSpec& spec, const PlotData& data) {
    if (spec.kind == PlotKind::CenterlineOverlay) {
        if (data.series.size() > 2) {
            throw PlotDataMismatch("centerline overlay takes at most 2 series, got " +
                                   std::to_string(data.series.size()));
        }
        if (data.has_fit) {
            throw PlotDataMismatch("centerline overlay does not take a fit line");
        }
    }

    const double ml = 62.0, mr = 18.0, mt = 34.0, mb = 46.0;
    const double w = spec.width, h = spec.height;
    const double plot_w = w - ml - mr;
    const double plot_h = h - mt - mb;

    Bounds b;
    for (const PlotSeries& s : data.series) {
        for (const auto& [x, y] : s.points) {
            b.add(x, y);
        }
    }
    if (data.has_fit && b.seen) {
        b.add(b.x0, data.fit_intercept + data.fit_slope * b.x0);
        b.add(b.x1, data.fit_intercept + data.fit_slope * b.x1);
    }
    b.finalize();

    auto px = [&](double x) { return ml + (x - b.x0) / (b.x1 - b.x0) * plot_w; };
    auto py = [&](double y) { return h - mb - (y - b.y0) / (b.y1 - b.y0) * plot_h; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" +
           num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
    svg += "<rect width=\"" + num(w) + "\" height=\"" + num(h) + "\" fill=\"white\"/>\n";

    // Axes with 5 ticks per side.
    svg += "<g stroke=\"#333\" stroke-width=\"1\" fill=\"none\">\n";
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(h - mb) + "\" x2=\"" + num(w - mr) +
           "\" y2=\"" + num(h - mb) + "\"/>\n";
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) + "\" y2=\"" +
           num(h - mb) + "\"/>\n";
    svg += "</g>\n";
    svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int i = 0; i <= 4; ++i) {
        double fx = b.x0 + (b.x1 - b.x0) * i / 4.0;
        double fy = b.y0 + (b.y1 - b.y0) * i / 4.0;
        double tx = px(fx);
        double ty = py(fy);
        svg += "<line x1=\"" + num(tx) + "\" y1=\"" + num(h - mb) + "\" x2=\"" + num(tx) +
               "\" y2=\"" + num(h - mb + 4) + "\" stroke=\"#333\"/>\n";
        svg += "<text x=\"" + num(tx) + "\" y=\"" + num(h - mb + 16) +
               "\" text-anchor=\"middle\">" + num(fx) + "</text>\n";
        svg += "<line x1=\"" + num(ml - 4) + "\" y1=\"" + num(ty) + "\" x2=\"" + num(ml) +
               "\" y2=\"" + num(ty) + "\" stroke=\"#333\"/>\n";
        svg += "<text x=\"" + num(ml - 7) + "\" y=\"" + num(ty + 4) +
               "\" text-anchor=\"end\">" + num(fy) + "</text>\n";
    }
    svg += "</g>\n";

    // Labels and title.
    svg += "<g font-family=\"sans-serif\" font-size=\"13\" fill=\"#111\">\n";
    if (!spec.title.empty()) {
        svg += "<text x=\"" + num(w / 2.0) + "\" y=\"" + num(mt - 12.0) +
               "\" text-anchor=\"middle\" font-size=\"15\">" + escape_text(spec.title) +
               "</text>\n";
    }
    if (!spec.x_label.empty()) {
        svg += "<text x=\"" + num(ml + plot_w / 2.0) + "\" y=\"" + num(h - 8.0) +
               "\" text-anchor=\"middle\">" + escape_text(spec.x_label) + "</text>\n";
    }
    if (!spec.y_label.empty()) {
        svg += "<text x=\"14\" y=\"" + num(mt + plot_h / 2.0) +
               "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
               num(mt + plot_h / 2.0) + ")\">" + escape_text(spec.y_label) + "</text>\n";
    }
    svg += "</g>\n";

    // Data.
    for (std::size_t si = 0; si < data.series.size(); ++si) {
        const PlotSeries& s = data.series[si];
        const char* color = kPalette[si % kPaletteSize];
        if (s.points.empty()) continue;
        if (spec.kind == PlotKind::ErrorScatterWithFit) {
            svg += "<g fill=\"" + std::string(color) + "\" fill-opacity=\"0.85\">\n";
            for (const auto& [x, y] : s.points) {
                svg += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"3\"/>\n";
            }
            svg += "</g>\n";
        } else {
            std::string pts;
            for (const auto& [x, y] : s.points) {
                if (!pts.empty()) pts += " ";
                pts += num(px(x)) + "," + num(py(y));
            }
            std::string width = spec.kind == PlotKind::DriftTraces ? "1.2" : "2";
            std::string opacity = spec.kind == PlotKind::DriftTraces ? "0.7" : "1";
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"" +
                   width + "\" stroke-opacity=\"" + opacity + "\" points=\"" + pts + "\"/>\n";
        }
    }

    if (data.has_fit) {
        double xa = b.x0, xb = b.x1;
        double ya = data.fit_intercept + data.fit_slope * xa;
        double yb = data.fit_intercept + data.fit_slope * xb;
        svg += "<line x1=\"" + num(px(xa)) + "\" y1=\"" + num(py(ya)) + "\" x2=\"" + num(px(xb)) +
               "\" y2=\"" + num(py(yb)) +
               "\" stroke=\"#111\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    }

    // Legend (skipped for per-sensor traces, where names would repeat).
    if (spec.kind != PlotKind::DriftTraces) {
        double lx = w - mr - 150.0;
        double ly = mt + 8.0;
        for (std::size_t si = 0; si < data.series.size(); ++si) {
            if (data.series[si].name.empty()) continue;
            const char* color = kPalette[si % kPaletteSize];
            svg += "<rect x=\"" + num(lx) + "\" y=\"" + num(ly - 8.0) +
                   "\" width=\"12\" height=\"12\" fill=\"" + std::string(color) + "\"/>\n";
            svg += "<text x=\"" + num(lx + 17.0) + "\" y=\"" + num(ly + 2.0) +
                   "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#111\">" +
                   escape_text(data.series[si].name) + "</text>\n";
            ly += 18.0;
        }
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace vinesense::io
