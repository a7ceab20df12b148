#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vinesense::io {

enum class PlotKind {
    CenterlineOverlay,       // 1-2 polylines (truth vs estimate) with a legend
    ErrorScatterWithFit,     // point series, optional regression line
    DriftTraces,             // per-sensor polylines, optional pooled fit line
};

struct PlotSpec {
    PlotKind kind = PlotKind::ErrorScatterWithFit;
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 720;
    int height = 480;
};

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

struct PlotData {
    std::vector<PlotSeries> series;
    bool has_fit = false;
    double fit_slope = 0.0;
    double fit_intercept = 0.0;
};

// Deterministic renderer: identical inputs produce byte-identical documents.
// Throws PlotDataMismatch when the payload does not fit the kind (overlay with
// more than 2 series or any fit line). Empty data renders axes only.
std::string render_svg(const PlotSpec& spec, const PlotData& data);

}  // namespace vinesense::io
