#include "cardioseis/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cardioseis::svg {

namespace {

constexpr double kWidth = 720.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s)
{
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

// Round tick step: 1, 2 or 5 times a power of ten, about `target` ticks.
double nice_step(double span, int target)
{
    if (!(span > 0.0)) return 1.0;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

void y_axis(std::ostringstream& os, double lo, double hi, double top, double height)
{
    const double step = nice_step(hi - lo, 5);
    auto ypix = [&](double v) { return top + height * (hi - v) / (hi - lo); };
    os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(top) << "\" x2=\"" << num(kLeft) << "\" y2=\""
       << num(top + height) << "\" stroke=\"black\"/>\n";
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12; v += step) {
        const double y = ypix(v);
        os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(y)
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">" << tick_label(std::abs(v) < step * 1e-9 ? 0.0 : v) << "</text>\n";
    }
}

}  // namespace

std::string line_panels(const std::vector<Panel>& panels, double fs, const std::string& title)
{
    constexpr double kPanelH = 200.0;
    constexpr double kGap = 60.0;
    constexpr double kTop = 40.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double height = kTop + static_cast<double>(panels.size()) * (kPanelH + kGap) + 10.0;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(height)
       << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(height) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">" << escape(title)
       << "</text>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const auto& panel = panels[p];
        const double top = kTop + static_cast<double>(p) * (kPanelH + kGap);
        std::size_t npts = 0;
        double lo = 0.0, hi = 0.0;
        for (const auto& s : panel.series) {
            npts = std::max(npts, s.y.size());
            for (double v : s.y) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        if (hi - lo <= 0.0) {
            lo -= 1.0;
            hi += 1.0;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
        const double t_end = npts > 1 ? static_cast<double>(npts - 1) / fs : 1.0;
        auto xpix = [&](double t) { return kLeft + plot_w * t / t_end; };
        auto ypix = [&](double v) { return top + kPanelH * (hi - v) / (hi - lo); };

        os << "<text x=\"" << num(kLeft) << "\" y=\"" << num(top - 6) << "\" font-size=\"13\">" << escape(panel.title)
           << "</text>\n";
        y_axis(os, lo, hi, top, kPanelH);
        const double base = top + kPanelH;
        os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(base) << "\" x2=\"" << num(kLeft + plot_w) << "\" y2=\""
           << num(base) << "\" stroke=\"black\"/>\n";
        const double tstep = nice_step(t_end, 6);
        for (double t = 0.0; t <= t_end + 1e-12; t += tstep) {
            os << "<line x1=\"" << num(xpix(t)) << "\" y1=\"" << num(base) << "\" x2=\"" << num(xpix(t)) << "\" y2=\""
               << num(base + 5) << "\" stroke=\"black\"/>\n";
            os << "<text x=\"" << num(xpix(t)) << "\" y=\"" << num(base + 18)
               << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
        }
        os << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(base + 34)
           << "\" font-size=\"11\" text-anchor=\"middle\">time (s)</text>\n";

        double legend_x = kLeft + plot_w - 10.0;
        for (auto it = panel.series.rbegin(); it != panel.series.rend(); ++it) {
            const auto& s = *it;
            os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < s.y.size(); ++i)
                os << num(xpix(static_cast<double>(i) / fs)) << ',' << num(ypix(s.y[i])) << ' ';
            os << "\"/>\n";
            os << "<text x=\"" << num(legend_x) << "\" y=\"" << num(top + 14) << "\" font-size=\"12\" fill=\"" << s.color
               << "\" text-anchor=\"end\">" << escape(s.name) << "</text>\n";
            legend_x -= 12.0 + 7.0 * static_cast<double>(s.name.size());
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string bar_chart(const std::vector<Bar>& bars, const std::string& title, const std::string& y_label)
{
    constexpr double kHeight = 360.0;
    constexpr double kTop = 40.0;
    constexpr double kPlotH = 260.0;
    const double plot_w = kWidth - kLeft - kRight;

    double lo = 0.0, hi = 0.0;
    for (const auto& b : bars) {
        lo = std::min(lo, b.value);
        hi = std::max(hi, b.value);
    }
    if (hi - lo <= 0.0) hi = lo + 1.0;
    const double pad = 0.08 * (hi - lo);
    hi += pad;
    if (lo < 0.0) lo -= pad;
    auto ypix = [&](double v) { return kTop + kPlotH * (hi - v) / (hi - lo); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
       << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">" << escape(title)
       << "</text>\n";
    os << "<text x=\"16\" y=\"" << num(kTop + kPlotH / 2) << "\" font-size=\"12\" transform=\"rotate(-90 16 "
       << num(kTop + kPlotH / 2) << ")\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
    y_axis(os, lo, hi, kTop, kPlotH);
    const double zero = ypix(0.0);
    os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(zero) << "\" x2=\"" << num(kLeft + plot_w) << "\" y2=\""
       << num(zero) << "\" stroke=\"black\"/>\n";

    const double slot = bars.empty() ? plot_w : plot_w / static_cast<double>(bars.size());
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& b = bars[i];
        const double x = kLeft + slot * (static_cast<double>(i) + 0.2);
        const double y = std::min(zero, ypix(b.value));
        const double h = std::abs(ypix(b.value) - zero);
        os << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(slot * 0.6) << "\" height=\""
           << num(h) << "\" fill=\"" << b.color << "\"/>\n";
        os << "<text x=\"" << num(x + slot * 0.3) << "\" y=\"" << num(kTop + kPlotH + 20)
           << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(b.label) << "</text>\n";
        os << "<text x=\"" << num(x + slot * 0.3) << "\" y=\"" << num(y - 4)
           << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(b.value) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace cardioseis::svg
