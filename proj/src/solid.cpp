#include "diametral/solid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace diametral::solid {

double angle_at(Point3 p, Point3 a, Point3 b) {
    const Vec3 u = a - p;
    const Vec3 v = b - p;
    return std::atan2(norm(cross(u, v)), dot(u, v));
}

namespace {

Vec3 newell_normal(const std::vector<Point3>& verts, const std::vector<int>& cycle) {
    Vec3 n{0, 0, 0};
    const std::size_t k = cycle.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Point3 a = verts[static_cast<std::size_t>(cycle[i])];
        const Point3 b = verts[static_cast<std::size_t>(cycle[(i + 1) % k])];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    return n;
}

}  // namespace

ConvexPolytope::ConvexPolytope(std::vector<Point3> vertices,
                               std::vector<std::vector<int>> faces, double tol_abs)
    : verts_(std::move(vertices)), faces_(std::move(faces)) {
    const int nv = static_cast<int>(verts_.size());
    const int nf = static_cast<int>(faces_.size());
    if (nv < 4 || nf < 4) throw DegenerateInput("polytope needs >= 4 vertices and faces");
    for (const auto& v : verts_)
        if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z))
            throw DegenerateInput("non-finite vertex coordinate");

    Point3 center{0, 0, 0};
    for (const auto& v : verts_) center = center + (1.0 / nv) * v;
    double radius = 0.0;
    for (const auto& v : verts_) radius = std::max(radius, distance(v, center));
    const double tol = tol_abs * std::max(1.0, radius);

    // directed-edge map: every undirected edge must be used once per direction
    std::map<std::pair<int, int>, int> edge_of;
    for (int f = 0; f < nf; ++f) {
        const auto& cyc = faces_[static_cast<std::size_t>(f)];
        if (cyc.size() < 3)
            throw DegenerateInput("face " + std::to_string(f) + " has fewer than 3 vertices");
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const int a = cyc[i];
            if (a < 0 || a >= nv)
                throw DegenerateInput("face " + std::to_string(f) + " references vertex " +
                                      std::to_string(a));
            const int b = cyc[(i + 1) % cyc.size()];
            if (a == b) throw DegenerateInput("face " + std::to_string(f) + " repeats a vertex");
            const auto key = std::minmax(a, b);
            auto it = edge_of.find(key);
            if (it == edge_of.end()) {
                edge_of.emplace(key, static_cast<int>(edges_.size()));
                edges_.push_back({key.first, key.second, -1, -1});
                it = edge_of.find(key);
            }
            Edge& e = edges_[static_cast<std::size_t>(it->second)];
            int& slot = (a == key.first) ? e.face_left : e.face_right;
            if (slot != -1)
                throw DegenerateInput("edge " + std::to_string(a) + "-" + std::to_string(b) +
                                      " used twice with the same orientation");
            slot = f;
        }
    }
    for (const auto& e : edges_)
        if (e.face_left == -1 || e.face_right == -1)
            throw DegenerateInput("edge " + std::to_string(e.a) + "-" + std::to_string(e.b) +
                                  " is not shared by two faces");

    if (nv - static_cast<int>(edges_.size()) + nf != 2)
        throw DegenerateInput("Euler relation V - E + F = 2 violated");

    // face planes: planarity, outward orientation, global convexity
    normals_.resize(static_cast<std::size_t>(nf));
    for (int f = 0; f < nf; ++f) {
        const auto& cyc = faces_[static_cast<std::size_t>(f)];
        Vec3 n = newell_normal(verts_, cyc);
        const double len = norm(n);
        if (len <= tol * tol) throw DegenerateInput("face " + std::to_string(f) + " is degenerate");
        n = (1.0 / len) * n;
        normals_[static_cast<std::size_t>(f)] = n;
        const Point3 fc = face_centroid(f);
        for (const int v : cyc)
            if (std::abs(dot(n, verts_[static_cast<std::size_t>(v)] - fc)) > tol)
                throw DegenerateInput("face " + std::to_string(f) + " is not planar");
        if (dot(n, center - fc) >= -tol * tol)
            throw DegenerateInput("face " + std::to_string(f) +
                                  " is not oriented counterclockwise from outside");
        for (int v = 0; v < nv; ++v)
            if (dot(n, verts_[static_cast<std::size_t>(v)] - fc) > tol)
                throw DegenerateInput("vertex " + std::to_string(v) +
                                      " lies outside the plane of face " + std::to_string(f));
        const std::size_t k = cyc.size();
        for (std::size_t i = 0; i < k; ++i) {
            const Point3 a = verts_[static_cast<std::size_t>(cyc[i])];
            const Point3 b = verts_[static_cast<std::size_t>(cyc[(i + 1) % k])];
            const Point3 c = verts_[static_cast<std::size_t>(cyc[(i + 2) % k])];
            if (dot(cross(b - a, c - b), n) < -tol)
                throw DegenerateInput("face " + std::to_string(f) + " has a reflex corner");
        }
    }

    // rotational order of faces around each vertex
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(nv));
    for (int f = 0; f < nf; ++f)
        for (const int v : faces_[static_cast<std::size_t>(f)])
            incident[static_cast<std::size_t>(v)].push_back(f);
    vertex_faces_.resize(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        const auto& inc = incident[static_cast<std::size_t>(v)];
        if (inc.size() < 3)
            throw DegenerateInput("vertex " + std::to_string(v) + " has fewer than 3 faces");
        auto successor = [&](int f) {
            const auto& cyc = faces_[static_cast<std::size_t>(f)];
            for (std::size_t i = 0; i < cyc.size(); ++i)
                if (cyc[i] == v) return cyc[(i + 1) % cyc.size()];
            return -1;
        };
        std::vector<int> order{inc[0]};
        int cur = inc[0];
        for (std::size_t steps = 1; steps < inc.size(); ++steps) {
            const int succ = successor(cur);
            const int e = edge_index(v, succ);
            const auto [fl, fr] = edge_faces(e);
            const int next = (fl == cur) ? fr : fl;
            if (next == inc[0]) break;
            order.push_back(next);
            cur = next;
        }
        if (order.size() != inc.size())
            throw DegenerateInput("vertex " + std::to_string(v) + " neighborhood is not a disk");
        vertex_faces_[static_cast<std::size_t>(v)] = std::move(order);
    }

    // total angular defect of a closed convex surface is 4pi
    double defect = 0.0;
    for (int v = 0; v < nv; ++v) {
        double theta = 0.0;
        for (const int f : vertex_faces_[static_cast<std::size_t>(v)]) {
            const auto& cyc = faces_[static_cast<std::size_t>(f)];
            for (std::size_t i = 0; i < cyc.size(); ++i)
                if (cyc[i] == v) {
                    const Point3 prev =
                        verts_[static_cast<std::size_t>(cyc[(i + cyc.size() - 1) % cyc.size()])];
                    const Point3 next =
                        verts_[static_cast<std::size_t>(cyc[(i + 1) % cyc.size()])];
                    theta += angle_at(verts_[static_cast<std::size_t>(v)], next, prev);
                }
        }
        defect += 2.0 * kPi - theta;
    }
    if (std::abs(defect - 4.0 * kPi) > nv * tol_abs)
        throw DegenerateInput("total angular defect differs from 4pi");
}

Point3 ConvexPolytope::face_centroid(int f) const {
    const auto& cyc = faces_[static_cast<std::size_t>(f)];
    Point3 c{0, 0, 0};
    for (const int v : cyc)
        c = c + (1.0 / static_cast<double>(cyc.size())) * verts_[static_cast<std::size_t>(v)];
    return c;
}

int ConvexPolytope::edge_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edges_[i].a == a && edges_[i].b == b) return static_cast<int>(i);
    return -1;
}

std::pair<int, int> ConvexPolytope::edge_faces(int e) const {
    const Edge& edge = edges_[static_cast<std::size_t>(e)];
    return {edge.face_left, edge.face_right};
}

int ConvexPolytope::shared_edge(int f, int g) const {
    const auto& cyc = faces_[static_cast<std::size_t>(f)];
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        const int e = edge_index(cyc[i], cyc[(i + 1) % cyc.size()]);
        const auto [fl, fr] = edge_faces(e);
        if ((fl == f && fr == g) || (fl == g && fr == f)) return e;
    }
    return -1;
}

double ConvexPolytope::longest_edge() const {
    double best = 0.0;
    for (const auto& e : edges_)
        best = std::max(best, distance(verts_[static_cast<std::size_t>(e.a)],
                                       verts_[static_cast<std::size_t>(e.b)]));
    return best;
}

double ConvexPolytope::bounding_radius() const {
    Point3 center{0, 0, 0};
    for (const auto& v : verts_)
        center = center + (1.0 / static_cast<double>(verts_.size())) * v;
    double r = 0.0;
    for (const auto& v : verts_) r = std::max(r, distance(v, center));
    return r;
}

Point3 surface_point(const ConvexPolytope& T, const SurfacePoint& p) {
    switch (p.kind) {
        case SurfacePoint::Kind::vertex:
            if (p.index < 0 || p.index >= T.vertex_count())
                throw IndexOutOfRange("vertex index " + std::to_string(p.index));
            return T.vertex(p.index);
        case SurfacePoint::Kind::edge: {
            if (p.index < 0 || p.index >= T.edge_count())
                throw IndexOutOfRange("edge index " + std::to_string(p.index));
            if (!(p.t > 0.0 && p.t < 1.0)) throw NotOnBoundary("edge parameter outside (0,1)");
            const Edge& e = T.edges()[static_cast<std::size_t>(p.index)];
            return T.vertex(e.a) + p.t * (T.vertex(e.b) - T.vertex(e.a));
        }
        case SurfacePoint::Kind::face: {
            if (p.index < 0 || p.index >= T.face_count())
                throw IndexOutOfRange("face index " + std::to_string(p.index));
            const auto& cyc = T.faces()[static_cast<std::size_t>(p.index)];
            if (p.weights.size() != cyc.size())
                throw NotOnBoundary("face weight count does not match the cycle");
            double sum = 0.0;
            Point3 out{0, 0, 0};
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                if (p.weights[i] < -1e-12) throw NotOnBoundary("negative face weight");
                sum += p.weights[i];
                out = out + p.weights[i] * T.vertex(cyc[i]);
            }
            if (std::abs(sum - 1.0) > 1e-9) throw NotOnBoundary("face weights must sum to 1");
            return out;
        }
    }
    throw NotOnBoundary("invalid surface point");
}

std::vector<int> containing_faces(const ConvexPolytope& T, const SurfacePoint& p) {
    switch (p.kind) {
        case SurfacePoint::Kind::vertex:
            return T.vertex_faces(p.index);
        case SurfacePoint::Kind::edge: {
            const auto [f, g] = T.edge_faces(p.index);
            return {f, g};
        }
        case SurfacePoint::Kind::face:
            return {p.index};
    }
    return {};
}

namespace {

int coincident_vertex(const ConvexPolytope& T, Point3 p, double tol) {
    for (int v = 0; v < T.vertex_count(); ++v)
        if (distance(T.vertex(v), p) <= tol) return v;
    return -1;
}

double vertex_complete_angle(const ConvexPolytope& T, int v) {
    double theta = 0.0;
    for (const int f : T.vertex_faces(v)) {
        const auto& cyc = T.faces()[static_cast<std::size_t>(f)];
        for (std::size_t i = 0; i < cyc.size(); ++i)
            if (cyc[i] == v) {
                const Point3 prev = T.vertex(cyc[(i + cyc.size() - 1) % cyc.size()]);
                const Point3 next = T.vertex(cyc[(i + 1) % cyc.size()]);
                theta += angle_at(T.vertex(v), next, prev);
            }
    }
    return theta;
}

bool point_is_diametral(const ConvexPolytope& T, Point3 p, const DiameterResult& d,
                        double tol) {
    for (const auto& [a, b] : d.pairs) {
        if (distance(p, T.vertex(a)) <= tol) return true;
        if (distance(p, T.vertex(b)) <= tol) return true;
    }
    return false;
}

}  // namespace

double complete_angle(const ConvexPolytope& T, const SurfacePoint& p) {
    const Point3 pos = surface_point(T, p);
    const double tol = 1e-9 * std::max(1.0, T.bounding_radius());
    const int v = coincident_vertex(T, pos, tol);
    if (v >= 0) return vertex_complete_angle(T, v);
    return 2.0 * kPi;  // flat tangent cone inside an edge or a face
}

double curvature(const ConvexPolytope& T, const SurfacePoint& p) {
    return 2.0 * kPi - complete_angle(T, p);
}

DiameterResult extrinsic_diameter(const ConvexPolytope& T, double tol_diam) {
    DiameterResult r;
    r.tolerance = tol_diam;
    const int n = T.vertex_count();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            r.length = std::max(r.length, distance(T.vertex(i), T.vertex(j)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (distance(T.vertex(i), T.vertex(j)) >= r.length * (1.0 - tol_diam))
                r.pairs.emplace_back(i, j);
    return r;
}

CriterionVerdict evaluate_criterion_3d(const ConvexPolytope& T,
                                       const std::vector<SurfacePoint>& E,
                                       double tol_diam, double tol_abs) {
    if (E.empty() || E.size() > 3)
        throw BadCardinality("criterion needs 1-3 points, got " + std::to_string(E.size()));
    const double tol = tol_abs * std::max(1.0, T.bounding_radius());
    std::vector<Point3> unique_pts;
    CriterionVerdict verdict;
    for (const auto& sp : E) {
        const Point3 p = surface_point(T, sp);
        bool seen = false;
        for (const auto& q : unique_pts) seen = seen || distance(p, q) <= tol;
        if (!seen) {
            unique_pts.push_back(p);
            verdict.angle_sum += complete_angle(T, sp);
        }
    }
    static constexpr double bounds[3] = {2.0 * kPi / 3.0, 3.0 * kPi / 2.0, 9.0 * kPi / 4.0};
    verdict.bound = bounds[unique_pts.size() - 1];
    verdict.margin = verdict.bound - verdict.angle_sum;
    verdict.hypothesis_holds = verdict.angle_sum <= verdict.bound + tol_abs;
    const DiameterResult diam = extrinsic_diameter(T, tol_diam);
    for (std::size_t k = 0; k < E.size(); ++k)
        if (point_is_diametral(T, surface_point(T, E[k]), diam, tol))
            verdict.diametral_members.push_back(static_cast<int>(k));
    verdict.conclusion =
        verdict.diametral_members.empty() ? Tristate::fails : Tristate::holds;
    return verdict;
}

bool two_point_diameter_check_3d(const ConvexPolytope& T, const SurfacePoint& p,
                                 const SurfacePoint& q, double tol_diam, double tol_abs) {
    if (complete_angle(T, p) > 2.0 * kPi / 3.0 + tol_abs ||
        complete_angle(T, q) > 2.0 * kPi / 3.0 + tol_abs)
        throw HypothesisNotMet("complete angles exceed 2pi/3");
    const double tol = tol_abs * std::max(1.0, T.bounding_radius());
    const Point3 pp = surface_point(T, p);
    const Point3 qq = surface_point(T, q);
    for (const auto& [a, b] : extrinsic_diameter(T, tol_diam).pairs) {
        const Point3 va = T.vertex(a), vb = T.vertex(b);
        if (distance(pp, va) <= tol && distance(qq, vb) <= tol) return true;
        if (distance(pp, vb) <= tol && distance(qq, va) <= tol) return true;
    }
    return false;
}

int CrossSection::find_vertex(Point3 p, double tol_abs) const {
    const planar::Point2 q = frame.project(p);
    for (int i = 0; i < polygon.size(); ++i)
        if (planar::distance(polygon.vertex(i), q) <= tol_abs) return i;
    return -1;
}

CrossSection cross_section(const ConvexPolytope& T, Point3 a, Point3 b, Point3 c,
                           double tol_abs) {
    const Vec3 n0 = cross(b - a, c - a);
    const double scale = std::max(1.0, T.bounding_radius());
    if (norm(n0) <= tol_abs * scale) throw DegenerateInput("plane points are collinear");
    PlaneFrame frame;
    frame.origin = a;
    frame.normal = normalized(n0);
    frame.e1 = normalized(b - a);
    frame.e2 = cross(frame.normal, frame.e1);

    const double tol = tol_abs * scale;
    std::vector<double> d(static_cast<std::size_t>(T.vertex_count()));
    double dmin = std::numeric_limits<double>::infinity();
    double dmax = -dmin;
    for (int v = 0; v < T.vertex_count(); ++v) {
        d[static_cast<std::size_t>(v)] = dot(frame.normal, T.vertex(v) - a);
        dmin = std::min(dmin, d[static_cast<std::size_t>(v)]);
        dmax = std::max(dmax, d[static_cast<std::size_t>(v)]);
    }
    if (!(dmin < -tol && dmax > tol)) throw EmptySection("plane does not meet the interior");

    std::vector<planar::Point2> pts;
    for (int v = 0; v < T.vertex_count(); ++v)
        if (std::abs(d[static_cast<std::size_t>(v)]) <= tol)
            pts.push_back(frame.project(T.vertex(v)));
    for (const auto& e : T.edges()) {
        const double da = d[static_cast<std::size_t>(e.a)];
        const double db = d[static_cast<std::size_t>(e.b)];
        if ((da > tol && db < -tol) || (da < -tol && db > tol)) {
            const double t = da / (da - db);
            pts.push_back(frame.project(T.vertex(e.a) + t * (T.vertex(e.b) - T.vertex(e.a))));
        }
    }
    if (pts.size() < 3) throw EmptySection("section has no interior");
    try {
        return {planar::convex_hull(pts, tol_abs), frame};
    } catch (const DegenerateInput&) {
        throw EmptySection("section has no interior");
    }
}

namespace {

// apex of the triangle over baseline (0,0)-(L,0) with side lengths da, db
planar::Point2 triangle_apex(double L, double da, double db, double sign, double tol) {
    const double ax = (da * da - db * db + L * L) / (2.0 * L);
    const double h2 = da * da - ax * ax;
    if (h2 <= tol * tol) throw DegeneratePoints("three of the points are collinear");
    return {ax, sign * std::sqrt(h2)};
}

UnfoldedQuad unfold_over(Point3 x, Point3 u, Point3 y, Point3 v, double tol_abs) {
    const double L = distance(u, v);
    const double scale = std::max({1.0, L, distance(x, u), distance(y, u)});
    const double tol = tol_abs * scale;
    if (L <= tol) throw DegeneratePoints("diagonal endpoints coincide");
    UnfoldedQuad q;
    q.source_edge = "uv";
    q.u = {0.0, 0.0};
    q.v = {L, 0.0};
    q.x = triangle_apex(L, distance(x, u), distance(x, v), +1.0, tol);
    q.y = triangle_apex(L, distance(y, u), distance(y, v), -1.0, tol);
    return q;
}

}  // namespace

std::array<double, 4> UnfoldedQuad::corner_angles() const {
    using planar::angle_at;
    if (source_edge == "uv") {
        return {angle_at(x, u, v),
                angle_at(u, x, v) + angle_at(u, y, v),
                angle_at(y, u, v),
                angle_at(v, x, u) + angle_at(v, y, u)};
    }
    // diagonal runs x-y
    return {angle_at(x, u, y) + angle_at(x, v, y),
            angle_at(u, x, y),
            angle_at(y, u, x) + angle_at(y, v, x),
            angle_at(v, x, y)};
}

std::pair<UnfoldedQuad, UnfoldedQuad> unfold_tetrahedron(Point3 x, Point3 u, Point3 y,
                                                         Point3 v, double tol_abs) {
    UnfoldedQuad q = unfold_over(x, u, y, v, tol_abs);
    // second development: triangles uxy and vxy across the x-y edge
    UnfoldedQuad raw = unfold_over(u, x, v, y, tol_abs);
    UnfoldedQuad qp;
    qp.source_edge = "xy";
    qp.x = raw.u;
    qp.y = raw.v;
    qp.u = raw.x;
    qp.v = raw.y;
    return {q, qp};
}

bool is_centrally_symmetric(const ConvexPolytope& T, double tol_abs) {
    const double tol = tol_abs * std::max(1.0, T.bounding_radius());
    const int n = T.vertex_count();
    if (n % 2 != 0) return false;
    for (int i = 0; i < n; ++i) {
        const Point3 want = -1.0 * T.vertex(i);
        bool found = false;
        for (int j = 0; j < n && !found; ++j) found = distance(T.vertex(j), want) <= tol;
        if (!found) return false;
    }
    return true;
}

int opposite_vertex(const ConvexPolytope& T, int i, double tol_abs) {
    if (!is_centrally_symmetric(T, tol_abs))
        throw NotSymmetric("polytope is not symmetric about the origin");
    const double tol = tol_abs * std::max(1.0, T.bounding_radius());
    const Point3 want = -1.0 * T.vertex(i);
    for (int j = 0; j < T.vertex_count(); ++j)
        if (distance(T.vertex(j), want) <= tol) return j;
    throw NotSymmetric("no opposite vertex found");
}

bool symmetric_diameter_check_3d(const ConvexPolytope& T, int vertex,
                                 double tol_diam, double tol_abs) {
    const int j = opposite_vertex(T, vertex, tol_abs);
    if (complete_angle(T, SurfacePoint::at_vertex(vertex)) > 5.0 * kPi / 6.0 + tol_abs)
        throw HypothesisNotMet("complete angle exceeds 5pi/6");
    return extrinsic_diameter(T, tol_diam).contains(vertex, j);
}

}  // namespace diametral::solid
