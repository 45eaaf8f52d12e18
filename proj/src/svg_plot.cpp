#include "groupphi/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "groupphi/errors.hpp"

namespace groupphi {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 25.0;
constexpr double kMarginTop = 45.0;
constexpr double kMarginBottom = 55.0;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

void write_line_chart_svg(const std::string& path, const ChartLabels& labels,
                          std::span<const double> x, std::span<const double> y,
                          std::span<const double> yerr) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::IoError, "cannot open for writing: " + path);

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(y[i])) continue;
        const double e = i < yerr.size() && std::isfinite(yerr[i]) ? yerr[i] : 0.0;
        if (first) {
            xmin = xmax = x[i];
            ymin = y[i] - e;
            ymax = y[i] + e;
            first = false;
        } else {
            xmin = std::min(xmin, x[i]);
            xmax = std::max(xmax, x[i]);
            ymin = std::min(ymin, y[i] - e);
            ymax = std::max(ymax, y[i] + e);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto sx = [&](double v) {
        return kMarginLeft + (v - xmin) / (xmax - xmin) * plot_w;
    };
    auto sy = [&](double v) {
        return kMarginTop + (1.0 - (v - ymin) / (ymax - ymin)) * plot_h;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
        << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h
        << "\" x2=\"" << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";

    // ticks
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        out << "<text x=\"" << sx(fx) << "\" y=\"" << kMarginTop + plot_h + 18
            << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(fx)
            << "</text>\n";
        out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << sy(fy) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(fy)
            << "</text>\n";
    }

    // error bars
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(y[i])) continue;
        const double e = i < yerr.size() && std::isfinite(yerr[i]) ? yerr[i] : 0.0;
        if (e <= 0.0) continue;
        const double px = sx(x[i]);
        out << "<line x1=\"" << px << "\" y1=\"" << sy(y[i] - e) << "\" x2=\""
            << px << "\" y2=\"" << sy(y[i] + e)
            << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    }

    // polyline + markers
    out << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" "
           "points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(y[i])) continue;
        out << sx(x[i]) << ',' << sy(y[i]) << ' ';
    }
    out << "\"/>\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(y[i])) continue;
        out << "<circle cx=\"" << sx(x[i]) << "\" cy=\"" << sy(y[i])
            << "\" r=\"2.5\" fill=\"#c0392b\"/>\n";
    }

    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" font-size=\"15\" "
           "text-anchor=\"middle\">"
        << labels.title << "</text>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" font-size=\"12\" text-anchor=\"middle\">" << labels.x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << kHeight / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << kHeight / 2 << ")\">" << labels.y_label << "</text>\n";
    out << "</svg>\n";
}

} // namespace groupphi
