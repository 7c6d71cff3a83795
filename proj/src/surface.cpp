#include "diametral/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_set>

namespace diametral::surface {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// resolution term of the slack model, calibrated on cube ground truth
constexpr double kSlackCal = 1.0;

// smallest 2^k - 1 that is >= m, so node sets nest as m grows
int round_resolution(int m) {
    if (m <= 0) return 0;
    int span = 1;
    while (span < m + 1) span *= 2;
    return span - 1;
}

double resolution_slack(const ConvexPolytope& T, int eff) {
    return kSlackCal * T.longest_edge() / static_cast<double>(eff + 1);
}

struct Anchor {
    Point3 pos;
    std::vector<int> faces;
};

Anchor anchor_of(const ConvexPolytope& T, const SurfacePoint& p) {
    return {solid::surface_point(T, p), solid::containing_faces(T, p)};
}

int smallest_common_face(const std::vector<int>& a, const std::vector<int>& b) {
    int best = -1;
    for (const int f : a)
        for (const int g : b)
            if (f == g && (best == -1 || f < best)) best = f;
    return best;
}

solid::PlaneFrame face_frame(const ConvexPolytope& T, int f) {
    const auto& cyc = T.faces()[static_cast<std::size_t>(f)];
    solid::PlaneFrame frame;
    frame.origin = T.vertex(cyc[0]);
    frame.normal = T.face_normal(f);
    frame.e1 = solid::normalized(T.vertex(cyc[1]) - frame.origin);
    frame.e2 = solid::cross(frame.normal, frame.e1);
    return frame;
}

}  // namespace

GeodesicGraph::GeodesicGraph(const ConvexPolytope& base, int steiner_per_edge)
    : base_(&base), requested_(steiner_per_edge) {
    effective_ = round_resolution(steiner_per_edge);
    const int nv = base.vertex_count();
    const int ne = base.edge_count();
    const int nf = base.face_count();

    for (int v = 0; v < nv; ++v) {
        pos_.push_back(base.vertex(v));
        node_edge_.push_back(-1);
        node_t_.push_back(0.0);
        node_faces_.push_back(base.vertex_faces(v));
    }
    std::vector<std::vector<int>> edge_nodes(static_cast<std::size_t>(ne));
    for (int e = 0; e < ne; ++e) {
        const auto& ed = base.edges()[static_cast<std::size_t>(e)];
        for (int i = 1; i <= effective_; ++i) {
            const double t = static_cast<double>(i) / (effective_ + 1);
            edge_nodes[static_cast<std::size_t>(e)].push_back(node_count());
            pos_.push_back(base.vertex(ed.a) + t * (base.vertex(ed.b) - base.vertex(ed.a)));
            node_edge_.push_back(e);
            node_t_.push_back(t);
            node_faces_.push_back({ed.face_left, ed.face_right});
        }
    }

    face_nodes_.resize(static_cast<std::size_t>(nf));
    for (int f = 0; f < nf; ++f) {
        const auto& cyc = base.faces()[static_cast<std::size_t>(f)];
        auto& nodes = face_nodes_[static_cast<std::size_t>(f)];
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            nodes.push_back(cyc[i]);
            const int e = base.edge_index(cyc[i], cyc[(i + 1) % cyc.size()]);
            for (const int n : edge_nodes[static_cast<std::size_t>(e)]) nodes.push_back(n);
        }
    }

    // straight chords between all node pairs on a common face boundary
    std::vector<std::vector<std::pair<int, double>>> adj(pos_.size());
    std::unordered_set<std::uint64_t> seen;
    for (int f = 0; f < nf; ++f) {
        const auto& nodes = face_nodes_[static_cast<std::size_t>(f)];
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                const int a = std::min(nodes[i], nodes[j]);
                const int b = std::max(nodes[i], nodes[j]);
                const std::uint64_t key =
                    (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
                if (!seen.insert(key).second) continue;
                const double w = distance(pos_[static_cast<std::size_t>(a)],
                                          pos_[static_cast<std::size_t>(b)]);
                adj[static_cast<std::size_t>(a)].emplace_back(b, w);
                adj[static_cast<std::size_t>(b)].emplace_back(a, w);
            }
    }
    adj_start_.assign(pos_.size() + 1, 0);
    for (std::size_t n = 0; n < pos_.size(); ++n)
        adj_start_[n + 1] = adj_start_[n] + static_cast<int>(adj[n].size());
    arcs_.reserve(static_cast<std::size_t>(adj_start_.back()));
    for (const auto& list : adj)
        for (const auto& arc : list) arcs_.push_back(arc);
}

SurfacePoint GeodesicGraph::node_point(int n) const {
    const int e = node_edge_[static_cast<std::size_t>(n)];
    if (e < 0) return SurfacePoint::at_vertex(n);
    return SurfacePoint::on_edge(e, node_t_[static_cast<std::size_t>(n)]);
}

GeodesicGraph::Field GeodesicGraph::shortest_paths(
    const std::vector<std::pair<int, double>>& sources) const {
    Field field;
    field.dist.assign(pos_.size(), kInf);
    field.parent.assign(pos_.size(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
    for (const auto& [n, d] : sources) {
        if (d < field.dist[static_cast<std::size_t>(n)]) {
            field.dist[static_cast<std::size_t>(n)] = d;
            queue.push({d, n});
        }
    }
    while (!queue.empty()) {
        const auto [d, n] = queue.top();
        queue.pop();
        if (d > field.dist[static_cast<std::size_t>(n)]) continue;
        for (int k = adj_start_[static_cast<std::size_t>(n)];
             k < adj_start_[static_cast<std::size_t>(n) + 1]; ++k) {
            const auto& [to, w] = arcs_[static_cast<std::size_t>(k)];
            const double nd = d + w;
            if (nd < field.dist[static_cast<std::size_t>(to)]) {
                field.dist[static_cast<std::size_t>(to)] = nd;
                field.parent[static_cast<std::size_t>(to)] = n;
                queue.push({nd, to});
            }
        }
    }
    return field;
}

namespace {

std::vector<std::pair<int, double>> attachments(const GeodesicGraph& graph,
                                                const Anchor& anchor) {
    std::vector<std::pair<int, double>> out;
    std::unordered_set<int> used;
    for (const int f : anchor.faces)
        for (const int n : graph.face_nodes(f))
            if (used.insert(n).second)
                out.emplace_back(n, distance(anchor.pos, graph.node_position(n)));
    return out;
}

struct StripCrossing {
    int edge;             // polytope edge index
    planar::Point2 a, b;  // unfolded endpoint images, canonical edge order
    Point3 a3, b3;
};

// Isometric development of a face strip into the plane.
struct Development {
    std::vector<std::vector<planar::Point2>> face_polygons;
    std::vector<StripCrossing> junctions;
    struct FaceMap {
        solid::PlaneFrame frame;
        planar::Point2 a_loc, u_loc, v_loc;
        planar::Point2 a_img, u_img, v_img;
        double flip = 1.0;
        planar::Point2 apply(Point3 p) const {
            const planar::Point2 q = frame.project(p);
            const double alpha = planar::dot(q - a_loc, u_loc);
            const double beta = planar::dot(q - a_loc, v_loc);
            return {a_img.x + alpha * u_img.x + flip * beta * v_img.x,
                    a_img.y + alpha * u_img.y + flip * beta * v_img.y};
        }
    };
    std::vector<FaceMap> maps;
};

Development develop_strip(const ConvexPolytope& T, const std::vector<int>& faces) {
    Development dev;
    dev.maps.resize(faces.size());
    for (std::size_t k = 0; k < faces.size(); ++k) {
        auto& map = dev.maps[k];
        map.frame = face_frame(T, faces[k]);
        if (k == 0) {
            map.a_loc = {0, 0};
            map.u_loc = {1, 0};
            map.v_loc = {0, 1};
            map.a_img = {0, 0};
            map.u_img = {1, 0};
            map.v_img = {0, 1};
        } else {
            const int e = T.shared_edge(faces[k - 1], faces[k]);
            if (e < 0)
                throw NonAdjacentSequence("faces " + std::to_string(faces[k - 1]) + " and " +
                                          std::to_string(faces[k]) + " share no edge");
            const auto& edge = T.edges()[static_cast<std::size_t>(e)];
            const Point3 a3 = T.vertex(edge.a);
            const Point3 b3 = T.vertex(edge.b);
            const auto& prev = dev.maps[k - 1];
            const planar::Point2 A = prev.apply(a3);
            const planar::Point2 B = prev.apply(b3);
            const planar::Point2 Aloc = map.frame.project(a3);
            const planar::Point2 Bloc = map.frame.project(b3);
            map.a_loc = Aloc;
            map.u_loc = (1.0 / planar::distance(Aloc, Bloc)) * (Bloc - Aloc);
            map.v_loc = {-map.u_loc.y, map.u_loc.x};
            map.a_img = A;
            map.u_img = (1.0 / planar::distance(A, B)) * (B - A);
            map.v_img = {-map.u_img.y, map.u_img.x};
            // place this face across the edge from its predecessor
            const planar::Point2 prev_c = prev.apply(T.face_centroid(faces[k - 1]));
            const double side_prev = planar::cross(B - A, prev_c - A);
            map.flip = 1.0;
            const planar::Point2 c_img = map.apply(T.face_centroid(faces[k]));
            const double side_next = planar::cross(B - A, c_img - A);
            if (side_prev * side_next > 0) map.flip = -1.0;
            dev.junctions.push_back({e, A, B, a3, b3});
        }
    }
    for (std::size_t k = 0; k < faces.size(); ++k) {
        std::vector<planar::Point2> poly;
        for (const int v : T.faces()[static_cast<std::size_t>(faces[k])])
            poly.push_back(dev.maps[k].apply(T.vertex(v)));
        dev.face_polygons.push_back(std::move(poly));
    }
    return dev;
}

struct StraightenedRun {
    double length = 0.0;
    std::vector<Point3> points;       // interior breakpoints only
    std::vector<SurfacePoint> marks;  // surface locations of those breakpoints
};

// Straight segment through the developed strip; nullopt when it exits.
std::optional<StraightenedRun> straighten_run(const ConvexPolytope& T,
                                              const std::vector<int>& faces, Point3 p,
                                              Point3 q, UnfoldedStrip* strip_out) {
    const Development dev = develop_strip(T, faces);
    const planar::Point2 p2 = dev.maps.front().apply(p);
    const planar::Point2 q2 = dev.maps.back().apply(q);
    const planar::Vec2 d = q2 - p2;
    const double scale = std::max(1.0, T.bounding_radius());

    StraightenedRun run;
    run.length = planar::norm(d);
    double prev_t = -1e-9;
    for (const auto& junction : dev.junctions) {
        const planar::Vec2 e = junction.b - junction.a;
        const double denom = planar::cross(d, e);
        if (std::abs(denom) <= 1e-14 * scale * scale) return std::nullopt;
        const double t = planar::cross(junction.a - p2, e) / denom;
        if (t < prev_t - 1e-9 || t > 1.0 + 1e-9) return std::nullopt;
        const planar::Point2 hit{p2.x + t * d.x, p2.y + t * d.y};
        const double s = planar::dot(hit - junction.a, e) / planar::dot(e, e);
        if (s < -1e-9 || s > 1.0 + 1e-9) return std::nullopt;
        prev_t = std::max(prev_t, t);
        const double sc = std::clamp(s, 0.0, 1.0);
        run.points.push_back(junction.a3 + sc * (junction.b3 - junction.a3));
        const double vertex_snap = 1e-9;
        const auto& edge = T.edges()[static_cast<std::size_t>(junction.edge)];
        if (sc <= vertex_snap)
            run.marks.push_back(SurfacePoint::at_vertex(edge.a));
        else if (sc >= 1.0 - vertex_snap)
            run.marks.push_back(SurfacePoint::at_vertex(edge.b));
        else
            run.marks.push_back(SurfacePoint::on_edge(junction.edge, sc));
        if (strip_out) strip_out->crossings.push_back(hit);
    }
    if (strip_out) {
        strip_out->face_polygons = dev.face_polygons;
        strip_out->p = p2;
        strip_out->q = q2;
    }
    return run;
}

// Rebuilds a graph polyline into a (piecewise) straightened path.
struct PathBuilder {
    const ConvexPolytope* T = nullptr;
    std::vector<Point3> pts;
    std::vector<std::vector<int>> faces;
    std::vector<Point3> out_points;
    std::vector<int> out_faces;
    bool fully_straight = true;

    int leg_face(std::size_t i) const { return smallest_common_face(faces[i], faces[i + 1]); }

    void emit(Point3 a, int face) {
        out_points.push_back(a);
        out_faces.push_back(face);
    }

    void straighten_range(std::size_t lo, std::size_t hi) {
        std::vector<int> seq;
        for (std::size_t i = lo; i < hi; ++i) {
            const int f = leg_face(i);
            if (seq.empty() || seq.back() != f) seq.push_back(f);
        }
        if (seq.size() <= 1) {
            emit(pts[lo], seq.empty() ? faces[lo].front() : seq[0]);
            return;
        }
        if (auto run = straighten_run(*T, seq, pts[lo], pts[hi], nullptr)) {
            emit(pts[lo], seq[0]);
            for (std::size_t k = 0; k < run->points.size(); ++k)
                emit(run->points[k], seq[k + 1]);
            return;
        }
        fully_straight = false;
        if (hi - lo >= 2) {
            const std::size_t mid = (lo + hi) / 2;
            straighten_range(lo, mid);
            straighten_range(mid, hi);
            return;
        }
        emit(pts[lo], seq[0]);
    }

    void build() {
        std::size_t lo = 0;
        int prev_face = leg_face(0);
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            const int f = leg_face(i);
            if (f != prev_face && T->shared_edge(prev_face, f) < 0) {
                straighten_range(lo, i);
                lo = i;
            }
            if (f != prev_face) prev_face = f;
        }
        straighten_range(lo, pts.size() - 1);
        out_points.push_back(pts.back());
    }
};

GeodesicEstimate geodesic_between(const GeodesicGraph& graph, const Anchor& pa,
                                  const Anchor& qa, const SurfacePoint& psp,
                                  const SurfacePoint& qsp) {
    const ConvexPolytope& T = graph.base();
    GeodesicEstimate est;
    est.path.a = psp;
    est.path.b = qsp;

    const double chord = distance(pa.pos, qa.pos);
    const int direct_face = smallest_common_face(pa.faces, qa.faces);
    const double scale = std::max(1.0, T.bounding_radius());
    if (chord <= 1e-12 * scale) {
        est.path.points = {pa.pos, qa.pos};
        est.path.faces = {direct_face >= 0 ? direct_face : pa.faces.front()};
        est.path.straightened = true;
        return est;
    }

    const auto field = graph.shortest_paths(attachments(graph, pa));
    double best = kInf;
    int best_node = -1;
    for (const auto& [n, w] : attachments(graph, qa)) {
        const double total = field.dist[static_cast<std::size_t>(n)] + w;
        if (total < best) {
            best = total;
            best_node = n;
        }
    }
    if (direct_face >= 0 && chord <= best) {
        est.graph_bound = chord;
        est.value = chord;
        est.slack = resolution_slack(T, graph.effective_resolution());
        est.path.points = {pa.pos, qa.pos};
        est.path.faces = {direct_face};
        est.path.straightened = true;
        est.path.length = chord;
        return est;
    }
    if (best_node < 0) throw Disconnected("no path through the geodesic graph");

    std::vector<int> chain{best_node};
    while (field.parent[static_cast<std::size_t>(chain.back())] >= 0)
        chain.push_back(field.parent[static_cast<std::size_t>(chain.back())]);
    std::reverse(chain.begin(), chain.end());

    PathBuilder builder;
    builder.T = &T;
    builder.pts.push_back(pa.pos);
    builder.faces.push_back(pa.faces);
    const double merge_tol = 1e-12 * scale;
    for (const int n : chain) {
        const Point3 np = graph.node_position(n);
        if (distance(np, builder.pts.back()) <= merge_tol) {
            builder.faces.back() = graph.node_faces(n);
            continue;
        }
        builder.pts.push_back(np);
        builder.faces.push_back(graph.node_faces(n));
    }
    if (distance(qa.pos, builder.pts.back()) > merge_tol) {
        builder.pts.push_back(qa.pos);
        builder.faces.push_back(qa.faces);
    } else {
        builder.faces.back() = qa.faces;
    }
    if (builder.pts.size() < 2) {
        est.graph_bound = best;
        est.value = 0.0;
        est.path.points = {pa.pos, qa.pos};
        est.path.faces = {direct_face >= 0 ? direct_face : pa.faces.front()};
        return est;
    }
    builder.build();

    est.graph_bound = best;
    est.path.points = std::move(builder.out_points);
    est.path.faces = std::move(builder.out_faces);
    est.path.straightened = builder.fully_straight;
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < est.path.points.size(); ++i)
        len += distance(est.path.points[i], est.path.points[i + 1]);
    est.value = std::min(len, best);
    est.path.length = est.value;
    est.slack =
        (est.graph_bound - est.value) + resolution_slack(T, graph.effective_resolution());
    return est;
}

}  // namespace

GeodesicEstimate geodesic_distance(const GeodesicGraph& graph, const SurfacePoint& p,
                                   const SurfacePoint& q) {
    return geodesic_between(graph, anchor_of(graph.base(), p), anchor_of(graph.base(), q),
                            p, q);
}

GeodesicEstimate geodesic_distance(const ConvexPolytope& S, const SurfacePoint& p,
                                   const SurfacePoint& q, int steiner_per_edge) {
    GeodesicGraph graph(S, steiner_per_edge);
    return geodesic_distance(graph, p, q);
}

std::optional<double> straighten_in_sequence(const ConvexPolytope& S,
                                             const std::vector<int>& face_seq, Point3 p,
                                             Point3 q, UnfoldedStrip* strip) {
    if (face_seq.empty()) throw NonAdjacentSequence("empty face sequence");
    std::vector<int> seq;
    for (const int f : face_seq) {
        if (f < 0 || f >= S.face_count())
            throw NonAdjacentSequence("face index " + std::to_string(f) + " out of range");
        if (seq.empty() || seq.back() != f) seq.push_back(f);
    }
    const double tol = 1e-6 * std::max(1.0, S.bounding_radius());
    if (std::abs(dot(S.face_normal(seq.front()), p - S.face_centroid(seq.front()))) > tol)
        throw NotOnBoundary("start point is not on the first face");
    if (std::abs(dot(S.face_normal(seq.back()), q - S.face_centroid(seq.back()))) > tol)
        throw NotOnBoundary("end point is not on the last face");
    if (seq.size() == 1) {
        if (strip) {
            const Development dev = develop_strip(S, seq);
            strip->face_polygons = dev.face_polygons;
            strip->p = dev.maps.front().apply(p);
            strip->q = dev.maps.front().apply(q);
            strip->crossings.clear();
        }
        return distance(p, q);
    }
    if (auto run = straighten_run(S, seq, p, q, strip)) return run->length;
    return std::nullopt;
}

std::vector<SurfacePoint> face_samples(const ConvexPolytope& S, int density) {
    std::vector<SurfacePoint> out;
    if (density <= 0) return out;
    for (int f = 0; f < S.face_count(); ++f) {
        const auto& cyc = S.faces()[static_cast<std::size_t>(f)];
        const std::size_t k = cyc.size();
        out.push_back(
            SurfacePoint::on_face(f, std::vector<double>(k, 1.0 / static_cast<double>(k))));
        if (density < 3) continue;
        for (std::size_t fan = 1; fan + 1 < k; ++fan)
            for (int i = 1; i < density; ++i)
                for (int j = 1; i + j < density; ++j) {
                    const int l = density - i - j;
                    std::vector<double> w(k, 0.0);
                    w[0] += static_cast<double>(i) / density;
                    w[fan] += static_cast<double>(j) / density;
                    w[fan + 1] += static_cast<double>(l) / density;
                    out.push_back(SurfacePoint::on_face(f, std::move(w)));
                }
    }
    return out;
}

namespace {

double cover_radius(const ConvexPolytope& S, int sampling, int eff) {
    const double longest = S.longest_edge();
    const double grid = longest / std::max(1, sampling);
    const double steiner = longest / static_cast<double>(eff + 1);
    return std::max(grid, steiner);
}

struct CandidateTargets {
    std::vector<Anchor> anchors;
    std::vector<SurfacePoint> points;
};

CandidateTargets make_targets(const ConvexPolytope& S, int sampling) {
    CandidateTargets t;
    for (auto& sp : face_samples(S, sampling)) {
        t.anchors.push_back(anchor_of(S, sp));
        t.points.push_back(std::move(sp));
    }
    return t;
}

double field_to_anchor(const GeodesicGraph& graph, const GeodesicGraph::Field& field,
                       const Anchor& anchor) {
    double best = kInf;
    for (const int f : anchor.faces)
        for (const int n : graph.face_nodes(f)) {
            const double d = field.dist[static_cast<std::size_t>(n)] +
                             distance(anchor.pos, graph.node_position(n));
            best = std::min(best, d);
        }
    return best;
}

struct BestPair {
    double graph_value = -1.0;
    SurfacePoint a, b;
};

void scan_source(const GeodesicGraph& graph, const SurfacePoint& src_pt, const Anchor& src,
                 const CandidateTargets& targets, std::vector<BestPair>& top,
                 std::size_t top_k) {
    const auto field = graph.shortest_paths(attachments(graph, src));
    auto offer = [&](double value, const SurfacePoint& tgt) {
        if (top.size() >= top_k && value <= top.back().graph_value) return;
        top.push_back({value, src_pt, tgt});
        std::sort(top.begin(), top.end(), [](const BestPair& x, const BestPair& y) {
            return x.graph_value > y.graph_value;
        });
        if (top.size() > top_k) top.pop_back();
    };
    for (int n = 0; n < graph.node_count(); ++n)
        offer(field.dist[static_cast<std::size_t>(n)], graph.node_point(n));
    for (std::size_t s = 0; s < targets.anchors.size(); ++s)
        offer(field_to_anchor(graph, field, targets.anchors[s]), targets.points[s]);
}

IntrinsicDiameterEstimate estimate_with_graph(const ConvexPolytope& S,
                                              const GeodesicGraph& graph, int sampling,
                                              const EstimateBudget& budget) {
    const double cost = static_cast<double>(S.vertex_count() + 8) *
                        static_cast<double>(graph.arc_count());
    if (cost > budget.max_cost)
        throw BudgetExceeded("sampling x resolution exceeds the configured cost cap");

    const CandidateTargets targets = make_targets(S, sampling);
    std::vector<BestPair> top;
    const std::size_t top_k = 4;
    for (int v = 0; v < S.vertex_count(); ++v)
        scan_source(graph, SurfacePoint::at_vertex(v),
                    anchor_of(S, SurfacePoint::at_vertex(v)), targets, top, top_k);
    if (top.empty()) throw Disconnected("no candidate pairs");

    // refinement: rescan from the incumbent's far endpoint when it is not a
    // vertex (vertex sources were already scanned)
    const SurfacePoint far = top.front().b;
    if (far.kind != SurfacePoint::Kind::vertex)
        scan_source(graph, far, anchor_of(S, far), targets, top, top_k);

    IntrinsicDiameterEstimate est;
    est.resolution = graph.effective_resolution();
    est.sampling = sampling;
    est.cover_radius = cover_radius(S, sampling, graph.effective_resolution());
    double best_value = -1.0;
    for (const auto& bp : top) {
        const GeodesicEstimate ge = geodesic_distance(graph, bp.a, bp.b);
        if (ge.value > best_value) {
            best_value = ge.value;
            est.value = ge.value;
            est.graph_bound = ge.graph_bound;
            est.slack = ge.slack;
            est.witness = {bp.a, bp.b};
        }
    }
    est.lower_bound = est.value - est.slack;
    return est;
}

}  // namespace

IntrinsicDiameterEstimate intrinsic_diameter_estimate(const ConvexPolytope& S, int sampling,
                                                      int steiner_per_edge,
                                                      const EstimateBudget& budget) {
    GeodesicGraph graph(S, steiner_per_edge);
    return estimate_with_graph(S, graph, sampling, budget);
}

SurfaceVerdict evaluate_criterion_surface(const ConvexPolytope& S,
                                          const std::vector<SurfacePoint>& E,
                                          int steiner_per_edge, int sampling,
                                          double tol_abs) {
    if (E.empty() || E.size() > 3)
        throw BadCardinality("criterion needs 1-3 points, got " + std::to_string(E.size()));
    GeodesicGraph graph(S, steiner_per_edge);
    SurfaceVerdict verdict;
    verdict.diameter = estimate_with_graph(S, graph, sampling, EstimateBudget{});

    const double tol = tol_abs * std::max(1.0, S.bounding_radius());
    std::vector<Point3> unique_pts;
    for (const auto& sp : E) {
        const Point3 p = solid::surface_point(S, sp);
        bool seen = false;
        for (const auto& q : unique_pts) seen = seen || distance(p, q) <= tol;
        if (!seen) {
            unique_pts.push_back(p);
            verdict.angle_sum += solid::complete_angle(S, sp);
        }
    }
    static constexpr double bounds[3] = {2.0 * kPi / 3.0, 5.0 * kPi / 3.0, 5.0 * kPi / 2.0};
    verdict.bound = bounds[unique_pts.size() - 1];
    verdict.margin = verdict.bound - verdict.angle_sum;
    verdict.hypothesis_holds = verdict.angle_sum <= verdict.bound + tol_abs;

    const CandidateTargets targets = make_targets(S, sampling);
    for (const auto& sp : E) {
        PointAssessment pa;
        const Anchor anchor = anchor_of(S, sp);
        const auto field = graph.shortest_paths(attachments(graph, anchor));
        double best_graph = 0.0;
        SurfacePoint best_tgt = SurfacePoint::at_vertex(0);
        for (int n = 0; n < graph.node_count(); ++n)
            if (field.dist[static_cast<std::size_t>(n)] > best_graph) {
                best_graph = field.dist[static_cast<std::size_t>(n)];
                best_tgt = graph.node_point(n);
            }
        for (std::size_t s = 0; s < targets.anchors.size(); ++s) {
            const double d = field_to_anchor(graph, field, targets.anchors[s]);
            if (d > best_graph) {
                best_graph = d;
                best_tgt = targets.points[s];
            }
        }
        const GeodesicEstimate ge = geodesic_distance(graph, sp, best_tgt);
        pa.best_graph = best_graph;
        pa.best_value = ge.value;
        pa.slack = ge.slack;
        // a farther witness pushes the diameter estimate up
        if (ge.value - ge.slack > verdict.diameter.lower_bound) {
            verdict.diameter.value = ge.value;
            verdict.diameter.graph_bound = ge.graph_bound;
            verdict.diameter.slack = ge.slack;
            verdict.diameter.lower_bound = ge.value - ge.slack;
            verdict.diameter.witness = {sp, best_tgt};
        }
        verdict.points.push_back(pa);
    }

    bool any_holds = false, all_fail = true;
    for (auto& pa : verdict.points) {
        if (pa.best_graph + verdict.diameter.cover_radius <
            verdict.diameter.lower_bound - tol) {
            pa.verdict = Tristate::fails;
        } else if (pa.best_value >= verdict.diameter.lower_bound - pa.slack - tol) {
            pa.verdict = Tristate::holds;
        } else {
            pa.verdict = Tristate::inconclusive;
        }
        any_holds = any_holds || pa.verdict == Tristate::holds;
        all_fail = all_fail && pa.verdict == Tristate::fails;
    }
    verdict.conclusion = any_holds   ? Tristate::holds
                         : all_fail  ? Tristate::fails
                                     : Tristate::inconclusive;
    return verdict;
}

namespace {

// angle between two surface directions, measured in the tangent cone as the
// smaller of the two sector sweeps
double cone_angle_between(const ConvexPolytope& T, const SurfacePoint& at, Point3 w1,
                          int f1, Point3 w2, int f2) {
    const Point3 pos = solid::surface_point(T, at);
    if (at.kind == SurfacePoint::Kind::face || f1 == f2)
        return solid::angle_at(pos, w1, w2);
    if (at.kind == SurfacePoint::Kind::edge) {
        const auto& e = T.edges()[static_cast<std::size_t>(at.index)];
        const Point3 dir = T.vertex(e.b) - T.vertex(e.a);
        const double phi1 = solid::angle_at(pos, pos + dir, w1);
        const double phi2 = solid::angle_at(pos, pos + dir, w2);
        const double around = phi1 + phi2;
        return std::min(around, 2.0 * kPi - around);
    }
    const int v = at.index;
    const auto& fan = T.vertex_faces(v);
    auto pred_of = [&](int f) {
        const auto& cyc = T.faces()[static_cast<std::size_t>(f)];
        for (std::size_t i = 0; i < cyc.size(); ++i)
            if (cyc[i] == v) return cyc[(i + cyc.size() - 1) % cyc.size()];
        return -1;
    };
    auto sector = [&](int f) {
        const auto& cyc = T.faces()[static_cast<std::size_t>(f)];
        for (std::size_t i = 0; i < cyc.size(); ++i)
            if (cyc[i] == v)
                return solid::angle_at(pos, T.vertex(cyc[(i + 1) % cyc.size()]),
                                       T.vertex(cyc[(i + cyc.size() - 1) % cyc.size()]));
        return 0.0;
    };
    double theta = 0.0;
    double phi1 = -1.0, phi2 = -1.0;
    for (const int f : fan) {
        const Point3 start = T.vertex(pred_of(f));
        if (f == f1 && phi1 < 0) phi1 = theta + solid::angle_at(pos, w1, start);
        if (f == f2 && phi2 < 0) phi2 = theta + solid::angle_at(pos, w2, start);
        theta += sector(f);
    }
    if (phi1 < 0 || phi2 < 0)
        throw NotOnBoundary("direction face is not incident to the corner");
    const double alpha = std::abs(phi1 - phi2);
    return std::min(alpha, theta - alpha);
}

std::pair<Point3, int> initial_leg(const GeodesicPath& path, double tol) {
    for (std::size_t i = 1; i < path.points.size(); ++i)
        if (distance(path.points[i], path.points[0]) > tol)
            return {path.points[i], path.faces[i - 1]};
    throw DegenerateTriangle("zero-length geodesic");
}

std::pair<Point3, int> final_leg(const GeodesicPath& path, double tol) {
    const std::size_t last = path.points.size() - 1;
    for (std::size_t i = last; i-- > 0;)
        if (distance(path.points[i], path.points[last]) > tol)
            return {path.points[i], path.faces[i]};
    throw DegenerateTriangle("zero-length geodesic");
}

}  // namespace

AngleComparisonReport comparison_angle_check(const ConvexPolytope& S, const SurfacePoint& a,
                                             const SurfacePoint& b, const SurfacePoint& c,
                                             int steiner_per_edge) {
    GeodesicGraph graph(S, steiner_per_edge);
    const GeodesicEstimate ab = geodesic_distance(graph, a, b);
    const GeodesicEstimate bc = geodesic_distance(graph, b, c);
    const GeodesicEstimate ca = geodesic_distance(graph, c, a);

    AngleComparisonReport report;
    report.side_lengths = {bc.value, ca.value, ab.value};
    const double slack_len = ab.slack + bc.slack + ca.slack;
    const double min_side = std::min({ab.value, bc.value, ca.value});
    if (min_side <= 1e-12) throw DegenerateTriangle("coincident triangle corners");
    if (ab.value > bc.value + ca.value + slack_len ||
        bc.value > ab.value + ca.value + slack_len ||
        ca.value > ab.value + bc.value + slack_len)
        throw DegenerateTriangle("side lengths violate the triangle inequality");

    auto comparison_angle = [](double opposite, double s1, double s2) {
        const double cosv = std::clamp(
            (s1 * s1 + s2 * s2 - opposite * opposite) / (2.0 * s1 * s2), -1.0, 1.0);
        return std::acos(cosv);
    };
    report.comparison_angles = {comparison_angle(bc.value, ab.value, ca.value),
                                comparison_angle(ca.value, ab.value, bc.value),
                                comparison_angle(ab.value, bc.value, ca.value)};

    const double tol = 1e-12 * std::max(1.0, S.bounding_radius());
    const auto [dir_ab, f_ab] = initial_leg(ab.path, tol);
    const auto [dir_bc, f_bc] = initial_leg(bc.path, tol);
    const auto [dir_ca, f_ca] = initial_leg(ca.path, tol);
    const auto [rdir_ab, rf_ab] = final_leg(ab.path, tol);
    const auto [rdir_bc, rf_bc] = final_leg(bc.path, tol);
    const auto [rdir_ca, rf_ca] = final_leg(ca.path, tol);

    report.surface_angles = {
        cone_angle_between(S, a, dir_ab, f_ab, rdir_ca, rf_ca),
        cone_angle_between(S, b, dir_bc, f_bc, rdir_ab, rf_ab),
        cone_angle_between(S, c, dir_ca, f_ca, rdir_bc, rf_bc),
    };
    for (std::size_t i = 0; i < 3; ++i)
        report.margins[i] = report.surface_angles[i] - report.comparison_angles[i];
    report.slack = 4.0 * slack_len / min_side + 1e-7;
    report.pass = true;
    for (const double m : report.margins) report.pass = report.pass && m >= -report.slack;
    return report;
}

DistanceComparisonReport comparison_distance_check(const ConvexPolytope& S,
                                                   const SurfacePoint& a,
                                                   const SurfacePoint& b,
                                                   const SurfacePoint& c, double t,
                                                   int steiner_per_edge) {
    if (!(t > 0.0 && t < 1.0)) throw InvalidParams("fraction must lie in (0,1)");
    GeodesicGraph graph(S, steiner_per_edge);
    const GeodesicEstimate ab = geodesic_distance(graph, a, b);
    const GeodesicEstimate ac = geodesic_distance(graph, a, c);
    const GeodesicEstimate bc = geodesic_distance(graph, b, c);

    // d at arclength t * |bc| along the b-c path
    const double target = t * bc.value;
    Point3 dpos = bc.path.points.front();
    int dface = bc.path.faces.empty() ? 0 : bc.path.faces.front();
    double walked = 0.0;
    for (std::size_t i = 0; i + 1 < bc.path.points.size(); ++i) {
        const double leg = distance(bc.path.points[i], bc.path.points[i + 1]);
        if (walked + leg >= target || i + 2 == bc.path.points.size()) {
            const double s = leg > 0 ? std::clamp((target - walked) / leg, 0.0, 1.0) : 0.0;
            dpos = bc.path.points[i] + s * (bc.path.points[i + 1] - bc.path.points[i]);
            dface = bc.path.faces[i];
            break;
        }
        walked += leg;
    }
    const Anchor da{dpos, {dface}};
    const GeodesicEstimate ad =
        geodesic_between(graph, anchor_of(S, a), da, a, SurfacePoint::at_vertex(0));

    // comparison triangle: b' at the origin, c' on the positive axis
    const double L = bc.value;
    const double cosb = std::clamp(
        (ab.value * ab.value + L * L - ac.value * ac.value) / (2.0 * ab.value * L), -1.0, 1.0);
    const double sinb = std::sqrt(std::max(0.0, 1.0 - cosb * cosb));
    const planar::Point2 aprime{ab.value * cosb, ab.value * sinb};
    const planar::Point2 dprime{t * L, 0.0};

    DistanceComparisonReport report;
    report.rho_ad = ad.value;
    report.comparison_ad = planar::distance(aprime, dprime);
    report.margin = report.rho_ad - report.comparison_ad;
    report.slack = ab.slack + ac.slack + bc.slack + ad.slack;
    report.pass = report.margin >= -report.slack;
    return report;
}

DiameterRatioReport makuha_check(const ConvexPolytope& S, int steiner_per_edge,
                                 int sampling) {
    DiameterRatioReport report;
    const IntrinsicDiameterEstimate intr =
        intrinsic_diameter_estimate(S, sampling, steiner_per_edge);
    report.extrinsic = solid::extrinsic_diameter(S).length;
    report.intrinsic_value = intr.value;
    report.intrinsic_lower = intr.lower_bound;
    report.slack = intr.slack;
    report.ratio_extrinsic = report.extrinsic / (kPi / 2.0 * intr.value);
    report.ratio_intrinsic = intr.value / (kPi / 2.0 * report.extrinsic);
    const double rel_slack = intr.slack / (kPi / 2.0 * report.extrinsic);
    report.pass = report.extrinsic <= kPi / 2.0 * intr.value + intr.slack &&
                  report.ratio_intrinsic <= 1.0 + rel_slack;
    return report;
}

FarthestQuery farthest_from(const GeodesicGraph& graph, const SurfacePoint& p,
                            int sampling) {
    const ConvexPolytope& S = graph.base();
    const auto field = graph.shortest_paths(attachments(graph, anchor_of(S, p)));
    FarthestQuery q;
    q.target = SurfacePoint::at_vertex(0);
    for (int n = 0; n < graph.node_count(); ++n)
        if (field.dist[static_cast<std::size_t>(n)] > q.graph_max) {
            q.graph_max = field.dist[static_cast<std::size_t>(n)];
            q.target = graph.node_point(n);
        }
    const CandidateTargets targets = make_targets(S, sampling);
    for (std::size_t s = 0; s < targets.anchors.size(); ++s) {
        const double d = field_to_anchor(graph, field, targets.anchors[s]);
        if (d > q.graph_max) {
            q.graph_max = d;
            q.target = targets.points[s];
        }
    }
    q.refined = geodesic_distance(graph, p, q.target);
    return q;
}

Tristate symmetric_surface_check(const ConvexPolytope& S, int vertex, int steiner_per_edge,
                                 int sampling, double tol_abs) {
    const int opposite = solid::opposite_vertex(S, vertex, tol_abs);
    if (solid::complete_angle(S, SurfacePoint::at_vertex(vertex)) > 5.0 * kPi / 6.0 + tol_abs)
        throw HypothesisNotMet("complete angle exceeds 5pi/6");
    GeodesicGraph graph(S, steiner_per_edge);
    IntrinsicDiameterEstimate est = estimate_with_graph(S, graph, sampling, EstimateBudget{});
    const GeodesicEstimate pq = geodesic_distance(graph, SurfacePoint::at_vertex(vertex),
                                                  SurfacePoint::at_vertex(opposite));
    if (pq.value - pq.slack > est.lower_bound) {
        est.value = pq.value;
        est.lower_bound = pq.value - pq.slack;
    }
    const double tol = tol_abs * std::max(1.0, S.bounding_radius());
    if (pq.graph_bound < est.lower_bound - tol) return Tristate::fails;
    if (pq.value >= est.lower_bound - pq.slack - tol) return Tristate::holds;
    return Tristate::inconclusive;
}

}  // namespace diametral::surface
