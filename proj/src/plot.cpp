#include "vvrate/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace vvrate {

namespace {

const char* series_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    return palette[i % (sizeof(palette) / sizeof(palette[0]))];
}

}  // namespace

void write_svg_logx(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series) {
    const double W = 720.0, H = 480.0;
    const double ml = 70.0, mr = 20.0, mt = 40.0, mb = 50.0;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("plot: series x/y length mismatch");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!(s.x[i] > 0.0)) throw std::invalid_argument("plot: log-x needs positive x");
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmin <= xmax)) throw std::invalid_argument("plot: no data");
    if (xmin == xmax) xmax = xmin * 10.0;
    if (ymin == ymax) {
        ymin -= 1.0;
        ymax += 1.0;
    }
    const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto px = [&](double x) { return ml + (std::log10(x) - lx0) / (lx1 - lx0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("plot: cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
        << "</text>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
        << H - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
        << "\" stroke=\"black\"/>\n";

    // decade ticks on the x axis
    for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
        const double x = px(std::pow(10.0, e));
        out << "<line x1=\"" << x << "\" y1=\"" << H - mb << "\" x2=\"" << x << "\" y2=\""
            << H - mb + 6 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << H - mb + 22
            << "\" text-anchor=\"middle\" font-size=\"12\">1e" << e << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double y = ymin + i * (ymax - ymin) / 4.0;
        out << "<line x1=\"" << ml - 6 << "\" y1=\"" << py(y) << "\" x2=\"" << ml << "\" y2=\""
            << py(y) << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << ml - 10 << "\" y=\"" << py(y) + 4
            << "\" text-anchor=\"end\" font-size=\"12\">" << y << "</text>\n";
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = series_color(si);
        if (s.line && s.x.size() > 1) {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                out << px(s.x[i]) << "," << py(s.y[i]) << " ";
            out << "\"/>\n";
        } else {
            for (std::size_t i = 0; i < s.x.size(); ++i)
                out << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i])
                    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        out << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 + 16 * si
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << s.label
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace vvrate
