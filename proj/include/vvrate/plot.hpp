#pragma once

#include <string>
#include <vector>

namespace vvrate {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool line = true;  // false draws markers only
};

// Minimal static SVG plotter: log10 x axis, linear y axis, one polyline or
// marker set per series. Enough to overlay measured gap curves on the fitted
// rate model; not a general charting layer.
void write_svg_logx(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series);

}  // namespace vvrate
