#include "diametral/planar.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "diametral/rng.hpp"

namespace diametral::planar {

double angle_at(Point2 p, Point2 a, Point2 b) {
    const Vec2 u = a - p;
    const Vec2 v = b - p;
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

double distance_to_segment(Point2 p, Point2 a, Point2 b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + t * ab);
}

bool segments_meet(Point2 a, Point2 b, Point2 c, Point2 d, double tol_abs) {
    auto sign = [tol_abs](double v) { return v > tol_abs ? 1 : (v < -tol_abs ? -1 : 0); };
    const int o1 = sign(orient(a, b, c));
    const int o2 = sign(orient(a, b, d));
    const int o3 = sign(orient(c, d, a));
    const int o4 = sign(orient(c, d, b));
    if (o1 * o2 < 0 && o3 * o4 < 0) return true;
    auto on_segment = [tol_abs](Point2 s, Point2 e, Point2 p) {
        return distance_to_segment(p, s, e) <= tol_abs;
    };
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices, double tol_abs)
    : verts_(std::move(vertices)) {
    const int n = static_cast<int>(verts_.size());
    if (n < 3) throw DegenerateInput("polygon needs at least 3 vertices");
    for (const auto& v : verts_)
        if (!std::isfinite(v.x) || !std::isfinite(v.y))
            throw DegenerateInput("non-finite vertex coordinate");
    for (int i = 0; i < n; ++i) {
        const Point2 prev = verts_[static_cast<std::size_t>((i + n - 1) % n)];
        const Point2 cur = verts_[static_cast<std::size_t>(i)];
        const Point2 next = verts_[static_cast<std::size_t>((i + 1) % n)];
        if (distance(cur, next) <= tol_abs)
            throw DegenerateInput("repeated vertex at index " + std::to_string(i));
        // strict left turn; rejects both reflex and near-pi vertices
        if (orient(prev, cur, next) <= tol_abs)
            throw DegenerateInput("non-convex or degenerate vertex at index " +
                                  std::to_string(i));
    }
}

double ConvexPolygon::perimeter() const {
    double s = 0.0;
    const int n = size();
    for (int i = 0; i < n; ++i) s += distance(edge_start(i), edge_end(i));
    return s;
}

Point2 ConvexPolygon::centroid() const {
    Point2 c{0, 0};
    for (const auto& v : verts_) {
        c.x += v.x;
        c.y += v.y;
    }
    const double n = static_cast<double>(verts_.size());
    return {c.x / n, c.y / n};
}

bool ConvexPolygon::contains(Point2 p, double tol_abs) const {
    const int n = size();
    for (int i = 0; i < n; ++i)
        if (orient(edge_start(i), edge_end(i), p) < -tol_abs) return false;
    return true;
}

Point2 boundary_point(const ConvexPolygon& poly, const BoundaryPoint2& bp) {
    const int n = poly.size();
    if (bp.index < 0 || bp.index >= n)
        throw IndexOutOfRange("boundary index " + std::to_string(bp.index));
    if (bp.kind == BoundaryPoint2::Kind::vertex) return poly.vertex(bp.index);
    if (!(bp.t > 0.0 && bp.t < 1.0))
        throw NotOnBoundary("edge parameter outside (0,1)");
    const Point2 a = poly.edge_start(bp.index);
    const Point2 b = poly.edge_end(bp.index);
    return a + bp.t * (b - a);
}

BoundaryPoint2 boundary_at_arclength(const ConvexPolygon& poly, double s, double tol_abs) {
    const double total = poly.perimeter();
    s = std::fmod(s, total);
    if (s < 0) s += total;
    const int n = poly.size();
    for (int i = 0; i < n; ++i) {
        const double len = distance(poly.edge_start(i), poly.edge_end(i));
        if (s < len) {
            const double t = s / len;
            if (t <= tol_abs) return BoundaryPoint2::at_vertex(i);
            if (t >= 1.0 - tol_abs) return BoundaryPoint2::at_vertex((i + 1) % n);
            return BoundaryPoint2::on_edge(i, t);
        }
        s -= len;
    }
    return BoundaryPoint2::at_vertex(0);
}

ConvexPolygon convex_hull(std::vector<Point2> points, double tol_abs) {
    if (points.size() < 3) throw DegenerateInput("hull needs at least 3 points");
    std::sort(points.begin(), points.end(), [](Point2 a, Point2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [tol_abs](Point2 a, Point2 b) {
                                 return distance(a, b) <= tol_abs;
                             }),
                 points.end());
    const std::size_t n = points.size();
    if (n < 3) throw DegenerateInput("all points coincident");
    std::vector<Point2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && orient(hull[k - 2], hull[k - 1], points[i]) <= tol_abs) --k;
        hull[k++] = points[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && orient(hull[k - 2], hull[k - 1], points[i]) <= tol_abs) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw DegenerateInput("points are collinear");
    return ConvexPolygon(std::move(hull), tol_abs);
}

namespace {

// All antipodal vertex pairs of a convex ccw polygon, by rotating calipers.
std::vector<std::pair<int, int>> antipodal_pairs(const ConvexPolygon& poly) {
    const auto& v = poly.vertices();
    const int n = poly.size();
    double scale = 0.0;
    for (const auto& p : v) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
    const double tie_eps = 1e-12 * std::max(1.0, scale * scale);

    // twice the area of triangle (i, i+1, k): distance of k from edge i
    auto h = [&](int i, int k) {
        return orient(v[static_cast<std::size_t>(i % n)],
                      v[static_cast<std::size_t>((i + 1) % n)],
                      v[static_cast<std::size_t>(k % n)]);
    };

    std::set<std::pair<int, int>> out;
    auto emit = [&out](int a, int b) {
        if (a == b) return;
        if (a > b) std::swap(a, b);
        out.emplace(a, b);
    };

    int j = 1;
    for (int i = 0; i < n; ++i) {
        if (j < i + 1) j = i + 1;
        while (j < i + 2 * n && h(i, j + 1) > h(i, j) + tie_eps) ++j;
        emit(i % n, j % n);
        emit((i + 1) % n, j % n);
        if (h(i, j + 1) >= h(i, j) - tie_eps) {  // parallel edge: both extremes
            emit(i % n, (j + 1) % n);
            emit((i + 1) % n, (j + 1) % n);
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace

DiameterResult polygon_diameter(const ConvexPolygon& poly, double tol_diam) {
    const auto candidates = antipodal_pairs(poly);
    double best = 0.0;
    for (const auto& [a, b] : candidates)
        best = std::max(best, distance(poly.vertex(a), poly.vertex(b)));
    DiameterResult result;
    result.length = best;
    result.tolerance = tol_diam;
    for (const auto& [a, b] : candidates)
        if (distance(poly.vertex(a), poly.vertex(b)) >= best * (1.0 - tol_diam))
            result.pairs.emplace_back(a, b);
    std::sort(result.pairs.begin(), result.pairs.end());
    return result;
}

double vertex_angle(const ConvexPolygon& poly, int i) {
    const int n = poly.size();
    if (i < 0 || i >= n) throw IndexOutOfRange("vertex index " + std::to_string(i));
    const Point2 cur = poly.vertex(i);
    const Point2 next = poly.vertex((i + 1) % n);
    const Point2 prev = poly.vertex((i + n - 1) % n);
    return angle_at(cur, next, prev);
}

double boundary_angle(const ConvexPolygon& poly, const BoundaryPoint2& bp) {
    boundary_point(poly, bp);  // validates location
    if (bp.kind == BoundaryPoint2::Kind::vertex) return vertex_angle(poly, bp.index);
    return kPi;  // tangent cone inside an edge is a half-plane
}

bool is_diametral(const ConvexPolygon& poly, const BoundaryPoint2& bp,
                  double tol_diam, double tol_abs) {
    const Point2 p = boundary_point(poly, bp);
    const DiameterResult d = polygon_diameter(poly, tol_diam);
    for (const auto& [a, b] : d.pairs) {
        if (distance(p, poly.vertex(a)) <= tol_abs) return true;
        if (distance(p, poly.vertex(b)) <= tol_abs) return true;
    }
    return false;
}

CriterionVerdict evaluate_criterion(const ConvexPolygon& poly,
                                    const std::vector<BoundaryPoint2>& E,
                                    double tol_diam, double tol_abs) {
    if (E.empty() || E.size() > 3)
        throw BadCardinality("criterion needs 1-3 points, got " + std::to_string(E.size()));
    // E is a point set: coincident entries collapse to one point
    std::vector<Point2> unique_pts;
    for (const auto& bp : E) {
        const Point2 p = boundary_point(poly, bp);
        bool seen = false;
        for (const auto& q : unique_pts) seen = seen || distance(p, q) <= tol_abs;
        if (!seen) unique_pts.push_back(p);
    }
    static constexpr double bounds[3] = {kPi / 3.0, 5.0 * kPi / 6.0, 4.0 * kPi / 3.0};
    CriterionVerdict verdict;
    verdict.bound = bounds[unique_pts.size() - 1];
    std::vector<BoundaryPoint2> unique_bps;
    for (const auto& bp : E) {
        const Point2 p = boundary_point(poly, bp);
        bool counted = false;
        for (const auto& ubp : unique_bps)
            counted = counted || distance(p, boundary_point(poly, ubp)) <= tol_abs;
        if (!counted) {
            unique_bps.push_back(bp);
            verdict.angle_sum += boundary_angle(poly, bp);
        }
    }
    verdict.margin = verdict.bound - verdict.angle_sum;
    verdict.hypothesis_holds = verdict.angle_sum <= verdict.bound + tol_abs;
    for (std::size_t k = 0; k < E.size(); ++k)
        if (is_diametral(poly, E[k], tol_diam, tol_abs))
            verdict.diametral_members.push_back(static_cast<int>(k));
    verdict.conclusion =
        verdict.diametral_members.empty() ? Tristate::fails : Tristate::holds;
    return verdict;
}

bool two_point_diameter_check(const ConvexPolygon& poly, int i, int j,
                              double tol_diam, double tol_abs) {
    const double ai = vertex_angle(poly, i);
    const double aj = vertex_angle(poly, j);
    if (ai > kPi / 3.0 + tol_abs || aj > kPi / 3.0 + tol_abs)
        throw HypothesisNotMet("vertex angles exceed pi/3");
    return polygon_diameter(poly, tol_diam).contains(i, j);
}

double sees_angle(Point2 u, Point2 v, Point2 p, Point2 q, double tol_abs) {
    for (const Point2 w : {p, q})
        if (distance_to_segment(w, u, v) <= tol_abs)
            throw DegenerateAngle("viewing point on the segment");
    return angle_at(p, u, v) + angle_at(q, u, v);
}

bool is_separated_pair(const ConvexPolygon& poly, std::pair<int, int> diameter_pair,
                       Point2 p, Point2 q, double tol_abs) {
    const Point2 u = poly.vertex(diameter_pair.first);
    const Point2 v = poly.vertex(diameter_pair.second);
    if (distance_to_segment(p, u, v) <= tol_abs || distance_to_segment(q, u, v) <= tol_abs)
        throw OnDiameter("point lies on the diameter segment");
    return segments_meet(p, q, u, v, tol_abs);
}

SeparatedPairReport separated_pair_property(const ConvexPolygon& poly,
                                            int samples_per_diameter,
                                            std::uint64_t seed,
                                            double tol_diam, double tol_abs) {
    SeparatedPairReport report;
    report.min_angle = std::numeric_limits<double>::quiet_NaN();
    const DiameterResult diam = polygon_diameter(poly, tol_diam);
    const double lower = 5.0 * kPi / 6.0 - tol_abs;
    Rng rng(seed);
    const double perimeter = poly.perimeter();

    for (const auto& pair : diam.pairs) {
        auto test_pair = [&](Point2 p, Point2 q) -> bool {
            if (distance(p, q) <= tol_abs) return false;
            try {
                if (!is_separated_pair(poly, pair, p, q, tol_abs)) return false;
                const double angle =
                    sees_angle(poly.vertex(pair.first), poly.vertex(pair.second), p, q, tol_abs);
                ++report.pairs_tested;
                if (!(angle >= report.min_angle)) report.min_angle = angle;
                if (angle < lower) report.violations.push_back({pair, p, q, angle});
                return true;
            } catch (const OnDiameter&) {
            } catch (const DegenerateAngle&) {
            }
            return false;
        };

        // all vertex pairs first: the extremal configurations join vertices
        const int n = poly.size();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                test_pair(poly.vertex(a), poly.vertex(b));

        // then random boundary pairs up to the requested sample count
        int found = 0;
        int attempts = 0;
        const int max_attempts = 40 * samples_per_diameter + 400;
        while (found < samples_per_diameter && attempts++ < max_attempts) {
            const auto bp = boundary_at_arclength(poly, rng.uniform(0.0, perimeter), tol_abs);
            const auto bq = boundary_at_arclength(poly, rng.uniform(0.0, perimeter), tol_abs);
            if (test_pair(boundary_point(poly, bp), boundary_point(poly, bq))) ++found;
        }
    }
    return report;
}

bool quad_lemma_check(const ConvexPolygon& quad, double tol_diam, double tol_abs) {
    if (quad.size() != 4) throw InvalidParams("quadrilateral required");
    const double sum = vertex_angle(quad, 0) + vertex_angle(quad, 1);
    if (sum > kPi + tol_abs)
        throw HypothesisNotMet("angle sum at first two vertices exceeds pi");
    return is_diametral(quad, BoundaryPoint2::at_vertex(0), tol_diam, tol_abs) ||
           is_diametral(quad, BoundaryPoint2::at_vertex(1), tol_diam, tol_abs);
}

bool is_centrally_symmetric(const ConvexPolygon& poly, double tol_abs) {
    const int n = poly.size();
    if (n % 2 != 0) return false;
    for (int i = 0; i < n; ++i) {
        const Point2 want{-poly.vertex(i).x, -poly.vertex(i).y};
        bool found = false;
        for (int j = 0; j < n && !found; ++j)
            found = distance(poly.vertex(j), want) <= tol_abs;
        if (!found) return false;
    }
    return true;
}

int opposite_vertex(const ConvexPolygon& poly, int i, double tol_abs) {
    if (!is_centrally_symmetric(poly, tol_abs))
        throw NotSymmetric("polygon is not symmetric about the origin");
    const Point2 want{-poly.vertex(i).x, -poly.vertex(i).y};
    for (int j = 0; j < poly.size(); ++j)
        if (distance(poly.vertex(j), want) <= tol_abs) return j;
    throw NotSymmetric("no opposite vertex found");
}

bool symmetric_diameter_check(const ConvexPolygon& poly, int i,
                              double tol_diam, double tol_abs) {
    const int j = opposite_vertex(poly, i, tol_abs);
    if (vertex_angle(poly, i) > 5.0 * kPi / 12.0 + tol_abs)
        throw HypothesisNotMet("vertex angle exceeds 5pi/12");
    return polygon_diameter(poly, tol_diam).contains(i, j);
}

ConvexPolygon read_polygon_csv(std::istream& in, double tol_abs) {
    std::string line;
    int lineno = 0;
    std::vector<Point2> verts;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        // trim whitespace and CR
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            std::string h = line;
            h.erase(std::remove(h.begin(), h.end(), ' '), h.end());
            if (h != "x,y")
                throw ParseError("line " + std::to_string(lineno) + ": expected header 'x,y'");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string sx, sy;
        if (!std::getline(row, sx, ',') || !std::getline(row, sy))
            throw ParseError("line " + std::to_string(lineno) + ": expected 'x,y' pair");
        try {
            verts.push_back({std::stod(sx), std::stod(sy)});
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad number");
        }
    }
    if (!header_seen) throw ParseError("line 1: missing 'x,y' header");
    if (verts.size() < 3) throw ParseError("fewer than 3 vertices");
    try {
        return ConvexPolygon(std::move(verts), tol_abs);
    } catch (const DegenerateInput& e) {
        throw ParseError(std::string("invalid polygon: ") + e.what());
    }
}

ConvexPolygon load_polygon_csv(const std::string& path, double tol_abs) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_polygon_csv(in, tol_abs);
}

}  // namespace diametral::planar
