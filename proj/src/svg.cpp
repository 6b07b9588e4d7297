#include "typea/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

namespace typea {

namespace {

constexpr double kMargin = 40.0;

std::string fixed3(double x) {
    if (std::abs(x) < 5e-4) x = 0.0;  // no "-0.000"
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed, 3);
    if (ec != std::errc{}) return "0.000";
    return std::string(buf.data(), end);
}

struct Frame {
    double xmin, xmax, ymin, ymax;

    double px(double x) const { return kMargin + (x - xmin) / (xmax - xmin) * (kCanvasSize - 2.0 * kMargin); }
    double py(double y) const { return kCanvasSize - kMargin - (y - ymin) / (ymax - ymin) * (kCanvasSize - 2.0 * kMargin); }
};

std::string header() {
    const std::string size = fixed3(kCanvasSize);
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\"0 0 " +
           size + " " + size + "\">\n<rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";
}

std::string line(double x1, double y1, double x2, double y2, const char* style) {
    return "<line x1=\"" + fixed3(x1) + "\" y1=\"" + fixed3(y1) + "\" x2=\"" + fixed3(x2) + "\" y2=\"" + fixed3(y2) +
           "\" " + style + "/>\n";
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const char* style) {
    std::string out = "<polyline fill=\"none\" " + std::string(style) + " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += fixed3(pts[i].first) + ',' + fixed3(pts[i].second);
    }
    return out + "\"/>\n";
}

std::string axes(const Frame& f) {
    std::string out;
    const char* style = "stroke=\"#888888\" stroke-width=\"1\"";
    if (f.ymin <= 0.0 && f.ymax >= 0.0) out += line(f.px(f.xmin), f.py(0.0), f.px(f.xmax), f.py(0.0), style);
    if (f.xmin <= 0.0 && f.xmax >= 0.0) out += line(f.px(0.0), f.py(f.ymin), f.px(0.0), f.py(f.ymax), style);
    return out;
}

}  // namespace

std::string phase_portrait_svg(const Window& w, std::span<const GridRow> grid, std::span<const FlowCurve> curves) {
    const Frame f{w.umin, w.umax, w.vmin, w.vmax};
    std::string out = header() + axes(f);

    const double cells = std::max(1.0, std::sqrt(static_cast<double>(grid.size())) - 1.0);
    const double arrow = 0.8 * (kCanvasSize - 2.0 * kMargin) / cells;
    out += "<g stroke=\"#1f4e99\" stroke-width=\"1\" fill=\"#1f4e99\">\n";
    for (const GridRow& r : grid) {
        const double x = f.px(r.u), y = f.py(r.v);
        const double len = std::hypot(r.du, r.dv);
        if (!(len > 0.0) || !std::isfinite(len)) {
            out += "<circle cx=\"" + fixed3(x) + "\" cy=\"" + fixed3(y) + "\" r=\"2.000\"/>\n";
            continue;
        }
        // Screen y points down.
        const double dx = r.du / len * arrow, dy = -r.dv / len * arrow;
        const double hx = x + dx, hy = y + dy;
        out += line(x, y, hx, hy, "");
        const double back = 0.3, side = 0.15;
        out += "<polygon points=\"" + fixed3(hx) + ',' + fixed3(hy) + ' ' + fixed3(hx - back * dx - side * dy) + ',' +
               fixed3(hy - back * dy + side * dx) + ' ' + fixed3(hx - back * dx + side * dy) + ',' +
               fixed3(hy - back * dy - side * dx) + "\"/>\n";
    }
    out += "</g>\n";

    for (const FlowCurve& c : curves) {
        std::vector<std::pair<double, double>> pts;
        for (const FlowSample& s : c.samples) {
            const double u = std::clamp(s.u, w.umin, w.umax), v = std::clamp(s.v, w.vmin, w.vmax);
            pts.emplace_back(f.px(u), f.py(v));
        }
        if (!pts.empty()) out += polyline(pts, "stroke=\"#c0392b\" stroke-width=\"2\"");
    }
    return out + "</svg>\n";
}

std::string moduli_svg(std::span<const ModuliCurvePoint> points) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const ModuliCurvePoint& p : points) {
        xmin = std::min(xmin, p.sigma);
        xmax = std::max(xmax, p.sigma);
        ymin = std::min(ymin, p.psi);
        ymax = std::max(ymax, p.psi);
    }
    if (points.empty()) xmin = ymin = -1.0, xmax = ymax = 1.0;
    const double padx = std::max(1e-9, 0.05 * (xmax - xmin)) + (xmax == xmin ? 1.0 : 0.0);
    const double pady = std::max(1e-9, 0.05 * (ymax - ymin)) + (ymax == ymin ? 1.0 : 0.0);
    const Frame f{xmin - padx, xmax + padx, ymin - pady, ymax + pady};

    std::string out = header() + axes(f);
    const std::array<std::pair<ModuliBranch, const char*>, 3> styles{{
        {ModuliBranch::PlusCurve, "stroke=\"#1f4e99\" stroke-width=\"2\""},
        {ModuliBranch::MinusCurve, "stroke=\"#c0392b\" stroke-width=\"2\""},
        {ModuliBranch::DeltaSegment, "stroke=\"#27ae60\" stroke-width=\"3\""},
    }};
    for (const auto& [branch, style] : styles) {
        std::vector<std::pair<double, double>> pts;
        for (const ModuliCurvePoint& p : points)
            if (p.branch == branch) pts.emplace_back(f.px(p.sigma), f.py(p.psi));
        if (!pts.empty()) out += polyline(pts, style);
    }
    return out + "</svg>\n";
}

}  // namespace typea
