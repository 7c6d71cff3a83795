#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>

#include "diametral/lab.hpp"
#include "diametral/rng.hpp"

namespace diametral::lab {

using planar::Point2;
using solid::Point3;
using solid::Vec3;

planar::ConvexPolygon random_convex_polygon(int n, std::uint64_t seed) {
    if (n < 3) throw InvalidParams("need at least 3 points");
    Rng rng(seed);
    const double a = rng.uniform(0.5, 1.5);
    const double b = rng.uniform(0.5, 1.5);
    const double rot = rng.uniform(0.0, kPi);
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) angles.push_back(rng.uniform(0.0, 2.0 * kPi));
    std::sort(angles.begin(), angles.end());
    std::vector<Point2> pts;
    for (const double t : angles) {
        const double x = a * std::cos(t), y = b * std::sin(t);
        pts.push_back({x * std::cos(rot) - y * std::sin(rot),
                       x * std::sin(rot) + y * std::cos(rot)});
    }
    return planar::convex_hull(pts);
}

planar::ConvexPolygon random_symmetric_polygon(int half_n, std::uint64_t seed) {
    if (half_n < 2) throw InvalidParams("need at least 2 points per half");
    Rng rng(seed);
    const double a = rng.uniform(0.5, 1.5);
    const double b = rng.uniform(0.5, 1.5);
    std::vector<double> angles;
    for (int i = 0; i < half_n; ++i) angles.push_back(rng.uniform(0.0, kPi));
    std::sort(angles.begin(), angles.end());
    // near-duplicates would break strict convexity after mirroring
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double s, double t) { return std::abs(s - t) < 1e-3; }),
                 angles.end());
    if (angles.size() < 2 || angles.back() - angles.front() > kPi - 1e-3)
        return random_symmetric_polygon(half_n, splitmix64(seed + 1));
    std::vector<Point2> pts;
    for (const double t : angles) pts.push_back({a * std::cos(t), b * std::sin(t)});
    for (const double t : angles) pts.push_back({-a * std::cos(t), -b * std::sin(t)});
    return planar::ConvexPolygon(std::move(pts));
}

namespace {

struct HullFace {
    int a, b, c;
    Vec3 normal;  // not normalized
};

Vec3 face_dir(const std::vector<Point3>& pts, int a, int b, int c) {
    return solid::cross(pts[static_cast<std::size_t>(b)] - pts[static_cast<std::size_t>(a)],
                        pts[static_cast<std::size_t>(c)] - pts[static_cast<std::size_t>(a)]);
}

}  // namespace

solid::ConvexPolytope convex_hull3(const std::vector<Point3>& points, double tol_abs) {
    const std::size_t n = points.size();
    if (n < 4) throw DegenerateInput("hull needs at least 4 points");
    double scale = 0.0;
    for (const auto& p : points)
        scale = std::max({scale, std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    const double eps = 1e-12 * std::max(1.0, scale);

    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (points[i].x < points[i0].x) i0 = i;
    std::size_t i1 = (i0 + 1) % n;
    for (std::size_t i = 0; i < n; ++i)
        if (distance(points[i], points[i0]) > distance(points[i1], points[i0])) i1 = i;
    std::size_t i2 = n;
    double best_area = eps;
    for (std::size_t i = 0; i < n; ++i) {
        const double area =
            norm(solid::cross(points[i1] - points[i0], points[i] - points[i0]));
        if (area > best_area) {
            best_area = area;
            i2 = i;
        }
    }
    if (i2 == n) throw DegenerateInput("points are collinear");
    const Vec3 base_n =
        face_dir(points, static_cast<int>(i0), static_cast<int>(i1), static_cast<int>(i2));
    std::size_t i3 = n;
    double best_vol = eps * std::max(1.0, norm(base_n));
    for (std::size_t i = 0; i < n; ++i) {
        const double vol = std::abs(dot(base_n, points[i] - points[i0]));
        if (vol > best_vol) {
            best_vol = vol;
            i3 = i;
        }
    }
    if (i3 == n) throw DegenerateInput("points are coplanar");

    int a = static_cast<int>(i0), b = static_cast<int>(i1), c = static_cast<int>(i2),
        d = static_cast<int>(i3);
    if (dot(face_dir(points, a, b, c),
            points[static_cast<std::size_t>(d)] - points[static_cast<std::size_t>(a)]) > 0)
        std::swap(b, c);
    std::vector<HullFace> faces = {{a, b, c, {}}, {a, c, d, {}}, {a, d, b, {}}, {b, d, c, {}}};
    for (auto& f : faces) f.normal = face_dir(points, f.a, f.b, f.c);

    for (std::size_t p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        std::vector<char> visible(faces.size(), 0);
        bool any = false;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            const double side =
                dot(faces[f].normal, points[p] - points[static_cast<std::size_t>(faces[f].a)]);
            if (side > eps * std::max(1.0, norm(faces[f].normal))) {
                visible[f] = 1;
                any = true;
            }
        }
        if (!any) continue;
        // horizon: directed edges of visible faces whose twin is hidden
        std::map<std::pair<int, int>, int> dir_edges;
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f]) continue;
            const int vs[3] = {faces[f].a, faces[f].b, faces[f].c};
            for (int k = 0; k < 3; ++k) dir_edges[{vs[k], vs[(k + 1) % 3]}] = 1;
        }
        std::vector<std::pair<int, int>> horizon;
        for (const auto& [e, mark] : dir_edges) {
            (void)mark;
            if (dir_edges.find({e.second, e.first}) == dir_edges.end()) horizon.push_back(e);
        }
        std::vector<HullFace> next;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (!visible[f]) next.push_back(faces[f]);
        for (const auto& [ea, eb] : horizon) {
            HullFace nf{ea, eb, static_cast<int>(p), {}};
            nf.normal = face_dir(points, nf.a, nf.b, nf.c);
            next.push_back(nf);
        }
        faces = std::move(next);
    }

    std::vector<int> remap(n, -1);
    std::vector<Point3> verts;
    std::vector<std::vector<int>> cycles;
    for (const auto& f : faces) {
        for (const int v : {f.a, f.b, f.c})
            if (remap[static_cast<std::size_t>(v)] < 0) {
                remap[static_cast<std::size_t>(v)] = static_cast<int>(verts.size());
                verts.push_back(points[static_cast<std::size_t>(v)]);
            }
        cycles.push_back({remap[static_cast<std::size_t>(f.a)],
                          remap[static_cast<std::size_t>(f.b)],
                          remap[static_cast<std::size_t>(f.c)]});
    }
    return solid::ConvexPolytope(std::move(verts), std::move(cycles), tol_abs);
}

solid::ConvexPolytope random_polytope(int n, std::uint64_t seed) {
    if (n < 4) throw InvalidParams("need at least 4 points");
    Rng rng(seed);
    const double ax = rng.uniform(0.7, 1.3);
    const double ay = rng.uniform(0.7, 1.3);
    const double az = rng.uniform(0.7, 1.3);
    std::vector<Point3> pts;
    for (int i = 0; i < n; ++i) {
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        pts.push_back({ax * r * std::cos(phi), ay * r * std::sin(phi), az * z});
    }
    return convex_hull3(pts);
}

solid::ConvexPolytope sphere_hull(int n, std::uint64_t seed) {
    if (n < 4) throw InvalidParams("need at least 4 points");
    Rng rng(seed);
    std::vector<Point3> pts;
    for (int i = 0; i < n; ++i) {
        const double z = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return convex_hull3(pts);
}

solid::ConvexPolytope spike_pyramid(int base_n, double height, double radius) {
    if (base_n < 3 || height <= 0 || radius <= 0)
        throw InvalidParams("bad pyramid parameters");
    std::vector<Point3> v;
    for (int i = 0; i < base_n; ++i) {
        const double t = 2.0 * kPi * i / base_n;
        v.push_back({radius * std::cos(t), radius * std::sin(t), 0.0});
    }
    v.push_back({0, 0, height});
    std::vector<std::vector<int>> f;
    std::vector<int> base;
    for (int i = base_n - 1; i >= 0; --i) base.push_back(i);
    f.push_back(base);
    for (int i = 0; i < base_n; ++i) f.push_back({i, (i + 1) % base_n, base_n});
    return solid::ConvexPolytope(std::move(v), std::move(f));
}

double pyramid_apex_angle(int base_n, double height, double radius) {
    // each side face subtends 2*asin(half base edge / slant) at the apex
    const double slant = std::hypot(radius, height);
    return base_n * 2.0 * std::asin(radius * std::sin(kPi / base_n) / slant);
}

solid::ConvexPolytope bipyramid(int base_n, double height, double radius) {
    if (base_n < 3 || height <= 0 || radius <= 0)
        throw InvalidParams("bad bipyramid parameters");
    std::vector<Point3> v;
    for (int i = 0; i < base_n; ++i) {
        const double t = 2.0 * kPi * i / base_n;
        v.push_back({radius * std::cos(t), radius * std::sin(t), 0.0});
    }
    v.push_back({0, 0, height});
    v.push_back({0, 0, -height});
    std::vector<std::vector<int>> f;
    for (int i = 0; i < base_n; ++i) f.push_back({i, (i + 1) % base_n, base_n});
    for (int i = 0; i < base_n; ++i) f.push_back({(i + 1) % base_n, i, base_n + 1});
    return solid::ConvexPolytope(std::move(v), std::move(f));
}

double bipyramid_apex_angle(int base_n, double height, double radius) {
    return pyramid_apex_angle(base_n, height, radius);
}

double bipyramid_height_for_angle(int base_n, double apex_angle, double radius) {
    const double s = std::sin(apex_angle / (2.0 * base_n));
    if (s <= 0) throw InvalidParams("apex angle too small");
    const double slant = radius * std::sin(kPi / base_n) / s;
    if (slant <= radius) throw InvalidParams("apex angle unreachable for this base");
    return std::sqrt(slant * slant - radius * radius);
}

solid::ConvexPolytope symmetric_lens(int ring_n, double height, double radius,
                                     double ring_z) {
    if (ring_n < 4 || ring_n % 2 != 0) throw InvalidParams("ring count must be even, >= 4");
    if (!(height > ring_z && ring_z > 0)) throw InvalidParams("need height > ring_z > 0");
    std::vector<Point3> v;
    for (int i = 0; i < ring_n; ++i) {
        const double t = 2.0 * kPi * i / ring_n;
        v.push_back({radius * std::cos(t), radius * std::sin(t), ring_z});
    }
    for (int i = 0; i < ring_n; ++i) {
        const double t = 2.0 * kPi * i / ring_n;
        v.push_back({radius * std::cos(t), radius * std::sin(t), -ring_z});
    }
    const int top = 2 * ring_n, bottom = 2 * ring_n + 1;
    v.push_back({0, 0, height});
    v.push_back({0, 0, -height});
    std::vector<std::vector<int>> f;
    for (int i = 0; i < ring_n; ++i) f.push_back({i, (i + 1) % ring_n, top});
    for (int i = 0; i < ring_n; ++i) {
        const int j = (i + 1) % ring_n;
        f.push_back({i, ring_n + i, ring_n + j, j});
    }
    for (int i = 0; i < ring_n; ++i)
        f.push_back({ring_n + (i + 1) % ring_n, ring_n + i, bottom});
    return solid::ConvexPolytope(std::move(v), std::move(f));
}

double lens_apex_angle(int ring_n, double height, double radius, double ring_z) {
    return pyramid_apex_angle(ring_n, height - ring_z, radius);
}

double lens_height_for_angle(int ring_n, double apex_angle, double radius, double ring_z) {
    const double s = std::sin(apex_angle / (2.0 * ring_n));
    if (s <= 0) throw InvalidParams("apex angle too small");
    const double slant = radius * std::sin(kPi / ring_n) / s;
    if (slant <= radius) throw InvalidParams("apex angle unreachable for this ring");
    return ring_z + std::sqrt(slant * slant - radius * radius);
}

SharpTriangle gen_sharp_triangle(double eps) {
    if (!(eps > 0 && eps < kPi / 6.0)) throw InvalidParams("eps must lie in (0, pi/6)");
    const double apex = kPi / 3.0 + eps;
    const double w = std::sin(apex / 2.0);
    const double h = std::cos(apex / 2.0);
    planar::ConvexPolygon poly({{-w, 0}, {w, 0}, {0, h}});
    return {std::move(poly), 2, eps};
}

SharpQuad gen_sharp_quad(double eps) {
    if (!(eps > 0 && eps <= 0.5)) throw InvalidParams("eps must lie in (0, 0.5]");
    // x', y', v form a unit equilateral triangle and |u - v| = 1 on the
    // bisector; x and y slide from x', y' along their line until the angle
    // sum at x and y reaches 5pi/6 + eps
    const Point2 u{0.0, 1.0};
    const Point2 v{0.0, 0.0};
    const double ytop = std::sqrt(3.0) / 2.0;
    const double target = 5.0 * kPi / 12.0 + eps / 2.0;
    auto angle_at_x = [&](double d) {
        const Point2 x{-0.5 + d, ytop};
        return planar::angle_at(x, u, v);
    };
    double lo = 0.0, hi = 0.5 - 1e-9;
    if (angle_at_x(hi) < target) throw InvalidParams("eps too large for the construction");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (angle_at_x(mid) < target ? lo : hi) = mid;
    }
    const double d = 0.5 * (lo + hi);
    const Point2 x{-0.5 + d, ytop};
    const Point2 y{0.5 - d, ytop};
    planar::ConvexPolygon poly({x, v, y, u});
    return {std::move(poly), 0, 1, 2, 3, eps};
}

SharpPentagon gen_sharp_pentagon(double delta) {
    if (!(delta > 0 && delta <= 0.3)) throw InvalidParams("delta must lie in (0, 0.3]");
    const double c = std::cos(delta), s = std::sin(delta);
    const Point2 u{-0.5, 0.0};
    const Point2 v{0.5, 0.0};
    const Point2 x{-0.5 * c, -0.5 * s};
    const Point2 y{0.5 * c, -0.5 * s};
    const Point2 z{0.0, std::sqrt(3.0) / 2.0 - 0.5 * s};
    planar::ConvexPolygon poly({x, y, v, z, u});
    SharpPentagon out{std::move(poly), 0, 1, 2, 3, 4, delta, 0.0};
    out.angle_sum = planar::vertex_angle(out.poly, out.x) +
                    planar::vertex_angle(out.poly, out.y) +
                    planar::vertex_angle(out.poly, out.z);
    return out;
}

RemarkPolygon gen_remark_polygon(int n, int k, double delta) {
    if (n < 4) throw InvalidParams("need n >= 4 points");
    if (k < 2 || k > n - 2) throw InvalidParams("need 2 <= k <= n-2");
    if (!(delta > 0 && delta <= 0.3)) throw InvalidParams("delta must lie in (0, 0.3]");

    // upper arc: x_1 (near u, angle pi-delta) .. x_k (near v, angle delta)
    std::vector<double> upper;
    for (int j = 1; j <= k; ++j)
        upper.push_back(delta + (kPi - 2.0 * delta) * (k - j) / (k - 1));
    // lower arc with its own offset and an asymmetric warp so that no point
    // sits diametrically opposite an upper one
    double dprime = 0.83 * delta;
    double warp = 0.13;
    std::vector<double> lower;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 40) throw InvalidParams("could not avoid opposite pairs");
        lower.clear();
        for (int j = k + 1; j <= n; ++j) {
            const double f = static_cast<double>(j - k - 1) / (n - k - 1);
            const double warped = f + warp * f * (1.0 - f);
            lower.push_back(2.0 * kPi - dprime - (kPi - 2.0 * dprime) * warped);
        }
        bool clash = false;
        for (const double a : upper)
            for (const double b : lower) clash = clash || std::abs(b - a - kPi) < 1e-4;
        if (!clash) break;
        dprime *= 1.0171;
        warp = std::min(0.8, warp + 0.037);
    }

    auto on_circle = [](double t) { return Point2{std::cos(t), std::sin(t)}; };
    std::vector<Point2> cycle;
    RemarkPolygon out{planar::ConvexPolygon({{0, 0}, {1, 0}, {0, 1}}), {}, 0, 0, delta};
    out.xs.assign(static_cast<std::size_t>(n), -1);
    out.v = 0;
    cycle.push_back(on_circle(0.0));
    for (int j = k; j >= 1; --j) {  // ascending angles delta .. pi-delta
        out.xs[static_cast<std::size_t>(j - 1)] = static_cast<int>(cycle.size());
        cycle.push_back(on_circle(upper[static_cast<std::size_t>(j - 1)]));
    }
    out.u = static_cast<int>(cycle.size());
    cycle.push_back(on_circle(kPi));
    for (int j = n; j >= k + 1; --j) {  // ascending angles pi+d' .. 2pi-d'
        out.xs[static_cast<std::size_t>(j - 1)] = static_cast<int>(cycle.size());
        cycle.push_back(on_circle(lower[static_cast<std::size_t>(j - k - 1)]));
    }
    out.poly = planar::ConvexPolygon(std::move(cycle));
    return out;
}

std::string polygon_csv(const planar::ConvexPolygon& poly) {
    std::ostringstream out;
    out << "x,y\n";
    char buf[80];
    for (const auto& p : poly.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
        out << buf;
    }
    return out.str();
}

}  // namespace diametral::lab
