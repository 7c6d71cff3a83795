#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "diametral/common.hpp"
#include "diametral/solid.hpp"

namespace diametral::surface {

using solid::ConvexPolytope;
using solid::Point3;
using solid::SurfacePoint;

// Shortest-path substrate: polytope vertices plus Steiner points per edge,
// with straight-chord arcs between nodes on the boundary of a common face.
// The requested resolution is rounded up to 2^k - 1 so that node sets nest
// as the resolution grows; graph distances are then non-increasing in m.
class GeodesicGraph {
public:
    GeodesicGraph(const ConvexPolytope& base, int steiner_per_edge);

    const ConvexPolytope& base() const { return *base_; }
    int requested_resolution() const { return requested_; }
    int effective_resolution() const { return effective_; }
    int node_count() const { return static_cast<int>(pos_.size()); }
    long arc_count() const { return static_cast<long>(arcs_.size()); }
    Point3 node_position(int n) const { return pos_[static_cast<std::size_t>(n)]; }
    SurfacePoint node_point(int n) const;
    // both faces for edge nodes, the full fan for vertex nodes
    const std::vector<int>& node_faces(int n) const {
        return node_faces_[static_cast<std::size_t>(n)];
    }
    const std::vector<int>& face_nodes(int f) const {
        return face_nodes_[static_cast<std::size_t>(f)];
    }

    struct Field {
        std::vector<double> dist;
        std::vector<int> parent;  // -1 at sources
    };
    Field shortest_paths(const std::vector<std::pair<int, double>>& sources) const;

private:
    const ConvexPolytope* base_;
    int requested_ = 0;
    int effective_ = 0;
    std::vector<Point3> pos_;
    std::vector<int> node_edge_;   // -1 for vertex nodes
    std::vector<double> node_t_;   // edge parameter for edge nodes
    std::vector<std::vector<int>> node_faces_;
    std::vector<std::vector<int>> face_nodes_;
    std::vector<int> adj_start_;
    std::vector<std::pair<int, double>> arcs_;
};

struct GeodesicPath {
    SurfacePoint a, b;
    std::vector<Point3> points;  // polyline including both endpoints
    std::vector<int> faces;      // face carrying each leg, size points.size()-1
    double length = 0.0;
    bool straightened = false;   // true when every run unfolded to a straight segment
};

struct GeodesicEstimate {
    double graph_bound = 0.0;  // length of the Steiner-graph path (upper bound)
    double value = 0.0;        // straightened length, <= graph_bound
    double slack = 0.0;        // (graph_bound - value) + resolution term
    GeodesicPath path;
};

GeodesicEstimate geodesic_distance(const GeodesicGraph& graph, const SurfacePoint& p,
                                   const SurfacePoint& q);
GeodesicEstimate geodesic_distance(const ConvexPolytope& S, const SurfacePoint& p,
                                   const SurfacePoint& q, int steiner_per_edge);

// Planar development of a face strip, for inspection and plotting.
struct UnfoldedStrip {
    std::vector<std::vector<planar::Point2>> face_polygons;
    planar::Point2 p, q;
    std::vector<planar::Point2> crossings;
};

// Unfolds the faces of `face_seq` into the plane across their shared edges.
// Returns the straight-segment length when the segment from p to q stays
// inside the strip, std::nullopt (blocked) otherwise. Consecutive faces must
// share an edge.
std::optional<double> straighten_in_sequence(const ConvexPolytope& S,
                                             const std::vector<int>& face_seq,
                                             Point3 p, Point3 q,
                                             UnfoldedStrip* strip = nullptr);

struct IntrinsicDiameterEstimate {
    double value = 0.0;        // straightened distance of the witness pair
    double graph_bound = 0.0;  // graph distance of the witness pair
    double lower_bound = 0.0;  // value - slack; certified against the true diameter
    double slack = 0.0;
    double cover_radius = 0.0;  // max distance from the surface to a sample/node
    std::pair<SurfacePoint, SurfacePoint> witness;
    int resolution = 0;  // effective Steiner resolution
    int sampling = 0;
};

struct EstimateBudget {
    double max_cost = 4e9;  // sources x arcs
};

// Maximizes the straightened distance over vertices and per-face sample
// grids, with one local refinement pass around the incumbent pair.
IntrinsicDiameterEstimate intrinsic_diameter_estimate(const ConvexPolytope& S,
                                                      int sampling, int steiner_per_edge,
                                                      const EstimateBudget& budget = {});

struct PointAssessment {
    Tristate verdict = Tristate::inconclusive;
    double best_graph = 0.0;  // max graph distance from the point
    double best_value = 0.0;  // straightened distance to its farthest sample
    double slack = 0.0;
};

// Criterion verdict with a three-valued conclusion; near-boundary verdicts
// come out inconclusive rather than guessed.
struct SurfaceVerdict {
    double angle_sum = 0.0;
    double bound = 0.0;
    bool hypothesis_holds = false;
    Tristate conclusion = Tristate::inconclusive;
    double margin = 0.0;
    std::vector<PointAssessment> points;  // one per entry of E
    IntrinsicDiameterEstimate diameter;
};

// Angle-sum criterion for |E| in {1,2,3}; bounds 2pi/3, 5pi/3, 5pi/2.
SurfaceVerdict evaluate_criterion_surface(const ConvexPolytope& S,
                                          const std::vector<SurfacePoint>& E,
                                          int steiner_per_edge, int sampling,
                                          double tol_abs = 1e-9);

struct AngleComparisonReport {
    std::array<double, 3> side_lengths;       // bc, ca, ab
    std::array<double, 3> surface_angles;     // at a, b, c
    std::array<double, 3> comparison_angles;  // Euclidean triangle angles
    std::array<double, 3> margins;            // surface - comparison
    double slack = 0.0;
    bool pass = false;  // all margins >= -slack
};

// Geodesic-triangle corner angles vs the Euclidean comparison triangle.
AngleComparisonReport comparison_angle_check(const ConvexPolytope& S,
                                             const SurfacePoint& a, const SurfacePoint& b,
                                             const SurfacePoint& c, int steiner_per_edge);

struct DistanceComparisonReport {
    double rho_ad = 0.0;         // measured surface distance a-d
    double comparison_ad = 0.0;  // |a' - d'| in the comparison triangle
    double margin = 0.0;         // rho_ad - comparison_ad
    double slack = 0.0;
    bool pass = false;
};

// d sits on the geodesic from b to c at fraction t of its length.
DistanceComparisonReport comparison_distance_check(const ConvexPolytope& S,
                                                   const SurfacePoint& a,
                                                   const SurfacePoint& b,
                                                   const SurfacePoint& c, double t,
                                                   int steiner_per_edge);

struct DiameterRatioReport {
    double extrinsic = 0.0;
    double intrinsic_value = 0.0;
    double intrinsic_lower = 0.0;
    double slack = 0.0;
    // extrinsic vs (pi/2) * intrinsic; far below 1 for every convex surface
    double ratio_extrinsic = 0.0;
    // intrinsic vs (pi/2) * extrinsic; approaches 1 for sphere-like bodies
    double ratio_intrinsic = 0.0;
    bool pass = false;
};

// Checks both couplings of the extrinsic and intrinsic diameters:
// extrinsic <= (pi/2) * intrinsic and intrinsic <= (pi/2) * extrinsic.
DiameterRatioReport makuha_check(const ConvexPolytope& S, int steiner_per_edge,
                                 int sampling);

// Origin-symmetric surface, complete angle <= 5pi/6 at the vertex: does the
// pair (v, -v) realize the intrinsic diameter?
Tristate symmetric_surface_check(const ConvexPolytope& S, int vertex,
                                 int steiner_per_edge, int sampling,
                                 double tol_abs = 1e-9);

// Interior sample points of every face, as a barycentric grid of the given
// density over a fan triangulation.
std::vector<SurfacePoint> face_samples(const ConvexPolytope& S, int density);

struct FarthestQuery {
    double graph_max = 0.0;   // max graph distance from the source
    SurfacePoint target;      // where the max was attained
    GeodesicEstimate refined; // straightened estimate for that pair
};

// Farthest target from p over graph nodes and face samples.
FarthestQuery farthest_from(const GeodesicGraph& graph, const SurfacePoint& p,
                            int sampling);

}  // namespace diametral::surface
