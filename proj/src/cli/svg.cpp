#include "diametral/cli/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace diametral::cli {

namespace {

struct Mapper {
    double min_x, min_y, scale, height;
    static constexpr double kMargin = 24.0;

    std::pair<double, double> operator()(planar::Point2 p) const {
        return {kMargin + (p.x - min_x) * scale, height - kMargin - (p.y - min_y) * scale};
    }
};

Mapper fit(const std::vector<planar::Point2>& pts, double target = 480.0) {
    double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
    const double scale = target / span;
    const double height = (max_y - min_y) * scale + 2 * Mapper::kMargin;
    return {min_x, min_y, scale, height};
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void emit_header(std::ostringstream& out, double width, double height) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
        << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " "
        << num(height) << "\">\n";
}

}  // namespace

std::string polygon_svg(const planar::ConvexPolygon& poly, const DiameterResult& diameter,
                        const std::vector<std::pair<planar::Point2, std::string>>& labels) {
    const auto& verts = poly.vertices();
    const Mapper map = fit(verts);
    double width = 0.0;
    for (const auto& p : verts) width = std::max(width, map(p).first + Mapper::kMargin);

    std::ostringstream out;
    emit_header(out, width, map.height);
    out << "  <polygon points=\"";
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto [x, y] = map(verts[i]);
        out << (i ? " " : "") << num(x) << "," << num(y);
    }
    out << "\" fill=\"#eef3fb\" stroke=\"#2b4a6f\" stroke-width=\"1.5\"/>\n";

    for (const auto& [a, b] : diameter.pairs) {
        const auto [x1, y1] = map(poly.vertex(a));
        const auto [x2, y2] = map(poly.vertex(b));
        out << "  <line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
            << "\" y2=\"" << num(y2) << "\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
    }
    for (int i = 0; i < poly.size(); ++i) {
        const auto [x, y] = map(poly.vertex(i));
        out << "  <circle cx=\"" << num(x) << "\" cy=\"" << num(y)
            << "\" r=\"3\" fill=\"#2b4a6f\"/>\n";
    }
    for (const auto& [p, text] : labels) {
        const auto [x, y] = map(p);
        out << "  <circle cx=\"" << num(x) << "\" cy=\"" << num(y)
            << "\" r=\"4\" fill=\"#c0392b\"/>\n"
            << "  <text x=\"" << num(x + 6) << "\" y=\"" << num(y - 6)
            << "\" font-family=\"monospace\" font-size=\"12\">" << text << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string strip_svg(const surface::UnfoldedStrip& strip) {
    std::vector<planar::Point2> all;
    for (const auto& face : strip.face_polygons)
        for (const auto& p : face) all.push_back(p);
    all.push_back(strip.p);
    all.push_back(strip.q);
    const Mapper map = fit(all);
    double width = 0.0;
    for (const auto& p : all) width = std::max(width, map(p).first + Mapper::kMargin);

    std::ostringstream out;
    emit_header(out, width, map.height);
    for (const auto& face : strip.face_polygons) {
        out << "  <polygon points=\"";
        for (std::size_t i = 0; i < face.size(); ++i) {
            const auto [x, y] = map(face[i]);
            out << (i ? " " : "") << num(x) << "," << num(y);
        }
        out << "\" fill=\"#f6f1e7\" stroke=\"#7a6a4f\" stroke-width=\"1\"/>\n";
    }
    const auto [px, py] = map(strip.p);
    const auto [qx, qy] = map(strip.q);
    out << "  <line x1=\"" << num(px) << "\" y1=\"" << num(py) << "\" x2=\"" << num(qx)
        << "\" y2=\"" << num(qy) << "\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
    for (const auto& c : strip.crossings) {
        const auto [x, y] = map(c);
        out << "  <circle cx=\"" << num(x) << "\" cy=\"" << num(y)
            << "\" r=\"3\" fill=\"#c0392b\"/>\n";
    }
    out << "  <circle cx=\"" << num(px) << "\" cy=\"" << num(py)
        << "\" r=\"4\" fill=\"#2b4a6f\"/>\n"
        << "  <circle cx=\"" << num(qx) << "\" cy=\"" << num(qy)
        << "\" r=\"4\" fill=\"#2b4a6f\"/>\n"
        << "</svg>\n";
    return out.str();
}

}  // namespace diametral::cli
