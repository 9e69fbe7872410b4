#include "rjm/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace rjm {

namespace {

constexpr double kUnit = 24.0;
constexpr double kMargin = 36.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string header(double w, double h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
           "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string line(double x1, double y1, double x2, double y2, const std::string& style) {
    return "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" + fmt(y2) + "\" " +
           style + "/>\n";
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style) {
    std::string s = "<polyline fill=\"none\" " + style + " points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k) s += ' ';
        s += fmt(pts[k].first) + "," + fmt(pts[k].second);
    }
    return s + "\"/>\n";
}

LatticePoint unswap(const LatticePoint& p, const Transform& t) { return t.swap_xy ? LatticePoint{p.j, p.i} : p; }

}  // namespace

std::string render_polygon_svg(const NewtonPolygon& polygon, const CriterionCertificate* cert) {
    int max_i = 0, max_j = 0;
    for (const auto& p : polygon.support) {
        max_i = std::max(max_i, p.i);
        max_j = std::max(max_j, p.j);
    }
    const double w = 2 * kMargin + kUnit * max_i, h = 2 * kMargin + kUnit * max_j;
    auto px = [&](int i) { return kMargin + kUnit * i; };
    auto py = [&](int j) { return h - kMargin - kUnit * j; };

    std::string s = header(w, h);
    s += line(px(0), py(0), w - kMargin / 2, py(0), "stroke=\"#999\" stroke-width=\"1\"");
    s += line(px(0), py(0), px(0), kMargin / 2, "stroke=\"#999\" stroke-width=\"1\"");
    for (int i = 0; i <= max_i; ++i)
        for (int j = 0; j <= max_j; ++j)
            s += "<circle cx=\"" + fmt(px(i)) + "\" cy=\"" + fmt(py(j)) + "\" r=\"1.50\" fill=\"#ccc\"/>\n";

    const auto& v = polygon.vertices;
    if (v.size() >= 2) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : v) pts.emplace_back(px(p.i), py(p.j));
        pts.emplace_back(px(v.front().i), py(v.front().j));
        s += polyline(pts, "class=\"hull\" stroke=\"black\" stroke-width=\"1.50\"");
        for (const auto& e : right_outer_edges(polygon))
            s += line(px(e.from.i), py(e.from.j), px(e.to.i), py(e.to.j),
                      "class=\"right-edge\" stroke=\"#1f77b4\" stroke-width=\"3\"");
    }
    for (const auto& p : polygon.support)
        s += "<circle class=\"support\" cx=\"" + fmt(px(p.i)) + "\" cy=\"" + fmt(py(p.j)) +
             "\" r=\"4\" fill=\"black\"/>\n";

    if (cert && cert->satisfied && cert->witness_edge) {
        const auto a = unswap(cert->witness_edge->from, cert->transform_used);
        const auto b = unswap(cert->witness_edge->to, cert->transform_used);
        s += line(px(a.i), py(a.j), px(b.i), py(b.j), "class=\"witness\" stroke=\"#d62728\" stroke-width=\"5\"");
        const double lx = 0.5 * (px(a.i) + px(b.i)) + 6, ly = 0.5 * (py(a.j) + py(b.j)) - 6;
        s += "<text x=\"" + fmt(lx) + "\" y=\"" + fmt(ly) +
             "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#d62728\">&#952; = " +
             (cert->theta ? to_string(*cert->theta) : std::string("?")) + "</text>\n";
    }
    return s + "</svg>\n";
}

std::string render_tongue_svg(const TongueRegion& region, const LevelSetReport& levels) {
    constexpr double W = 800, H = 400, M = 40;
    const double x0 = to_double(region.x0);
    const double x1 = std::max(region.x_max, x0 * (1 + 1e-9));
    const bool log_x = x1 / x0 > 100;
    const BoundaryCurve f(region);
    const double f0 = f(x0);
    const double y_max = f0 > 0 && std::isfinite(f0) ? 1.1 * f0 : 1.0;

    auto sx = [&](double x) {
        const double u = log_x ? std::log(x / x0) / std::log(x1 / x0) : (x - x0) / (x1 - x0);
        return M + (W - 2 * M) * std::clamp(u, 0.0, 1.0);
    };
    auto sy = [&](double y) { return H - M - (H - 2 * M) * std::clamp(y / y_max, 0.0, 1.0); };
    auto xs = [&](double u) { return log_x ? x0 * std::pow(x1 / x0, u) : x0 + u * (x1 - x0); };

    std::string s = header(W, H);
    s += "<text x=\"" + fmt(M) + "\" y=\"20.00\" font-family=\"sans-serif\" font-size=\"12\">x0 = " +
         to_string(region.x0) + ", x_max = " + fmt(x1) + (log_x ? " (log x)" : "") + "</text>\n";

    // half-line border y = 0 and the segment {x0} x (0, f(x0))
    s += line(sx(x0), sy(0), sx(x1), sy(0), "class=\"halfline\" stroke=\"black\" stroke-width=\"3\"");
    s += line(sx(x0), sy(0), sx(x0), sy(f0), "class=\"segment\" stroke=\"black\" stroke-width=\"1.50\"");

    std::vector<std::pair<double, double>> boundary;
    for (int k = 0; k <= 400; ++k) {
        const double x = xs(k / 400.0);
        const double y = f(x);
        if (std::isfinite(y)) boundary.emplace_back(sx(x), sy(y));
    }
    s += polyline(boundary, "class=\"boundary\" stroke=\"black\" stroke-width=\"2\"");

    if (levels.b_outline.size() >= 2) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : levels.b_outline) pts.emplace_back(sx(p.x), sy(p.y));
        s += polyline(pts, "class=\"b-outline\" stroke=\"#555\" stroke-dasharray=\"4 3\" stroke-width=\"1\"");
    }

    for (const auto& rec : levels.levels) {
        const char* color = "#1f77b4";
        if (rec.classification == LevelClass::ContainedInB) color = "#2ca02c";
        if (rec.classification == LevelClass::Irregular) color = "#d62728";
        for (const auto& pl : rec.polylines) {
            const std::size_t step = std::max<std::size_t>(1, pl.size() / 200);
            std::vector<std::pair<double, double>> pts;
            for (std::size_t k = 0; k < pl.size(); k += step) pts.emplace_back(sx(pl[k].x), sy(pl[k].y));
            if (!pl.empty() && (pl.size() - 1) % step) pts.emplace_back(sx(pl.back().x), sy(pl.back().y));
            s += polyline(pts, std::string("class=\"level\" data-t=\"") + to_string(rec.t) + "\" stroke=\"" + color +
                                   "\" stroke-width=\"1\"");
        }
    }
    return s + "</svg>\n";
}

}  // namespace rjm
