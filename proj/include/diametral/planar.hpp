#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "diametral/common.hpp"

namespace diametral::planar {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

using Vec2 = Point2;

inline Vec2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator+(Point2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

// cross(b-a, c-a): > 0 when a,b,c make a left turn
inline double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

// Angle at p between directions to a and to b, in [0, pi].
double angle_at(Point2 p, Point2 a, Point2 b);

double distance_to_segment(Point2 p, Point2 a, Point2 b);

bool segments_meet(Point2 a, Point2 b, Point2 c, Point2 d, double tol_abs = 1e-9);

// Strictly convex counterclockwise vertex cycle. Construction rejects
// cycles with fewer than 3 vertices, repeated vertices, non-left turns, and
// near-degenerate (angle > pi - tol) vertices.
class ConvexPolygon {
public:
    explicit ConvexPolygon(std::vector<Point2> vertices, double tol_abs = 1e-9);

    const std::vector<Point2>& vertices() const { return verts_; }
    int size() const { return static_cast<int>(verts_.size()); }
    Point2 vertex(int i) const { return verts_[static_cast<std::size_t>(i)]; }
    // edge i runs from vertex i to vertex (i+1) mod n
    Point2 edge_start(int i) const { return verts_[static_cast<std::size_t>(i)]; }
    Point2 edge_end(int i) const { return verts_[static_cast<std::size_t>((i + 1) % size())]; }
    double perimeter() const;
    Point2 centroid() const;
    bool contains(Point2 p, double tol_abs = 1e-9) const;

private:
    std::vector<Point2> verts_;
};

// A boundary location: either a vertex or an interior point of an edge.
struct BoundaryPoint2 {
    enum class Kind { vertex, edge };
    Kind kind = Kind::vertex;
    int index = 0;
    double t = 0.0;  // edge parameter in (0,1), unused for vertices

    static BoundaryPoint2 at_vertex(int i) { return {Kind::vertex, i, 0.0}; }
    static BoundaryPoint2 on_edge(int e, double t) { return {Kind::edge, e, t}; }
};

Point2 boundary_point(const ConvexPolygon& poly, const BoundaryPoint2& bp);

// Boundary location at arc length s from vertex 0, counterclockwise.
BoundaryPoint2 boundary_at_arclength(const ConvexPolygon& poly, double s, double tol_abs = 1e-9);

ConvexPolygon convex_hull(std::vector<Point2> points, double tol_abs = 1e-9);

// Rotating-calipers diameter; lists every antipodal vertex pair whose
// distance is within relative tolerance tol_diam of the maximum.
DiameterResult polygon_diameter(const ConvexPolygon& poly, double tol_diam = 1e-7);

// Interior angle at vertex i, in (0, pi).
double vertex_angle(const ConvexPolygon& poly, int i);

// Tangent-cone angle: vertex angle at vertices, exactly pi inside an edge.
double boundary_angle(const ConvexPolygon& poly, const BoundaryPoint2& bp);

bool is_diametral(const ConvexPolygon& poly, const BoundaryPoint2& bp,
                  double tol_diam = 1e-7, double tol_abs = 1e-9);

// Angle-sum criterion for |E| in {1,2,3}; bounds pi/3, 5pi/6, 4pi/3.
CriterionVerdict evaluate_criterion(const ConvexPolygon& poly,
                                    const std::vector<BoundaryPoint2>& E,
                                    double tol_diam = 1e-7, double tol_abs = 1e-9);

// For two vertices with angles <= pi/3: do they form a diameter pair?
bool two_point_diameter_check(const ConvexPolygon& poly, int i, int j,
                              double tol_diam = 1e-7, double tol_abs = 1e-9);

// Sum of the angles under which p and q see segment uv.
double sees_angle(Point2 u, Point2 v, Point2 p, Point2 q, double tol_abs = 1e-9);

// Do p and q lie so that segment pq meets the diameter segment (u,v)?
bool is_separated_pair(const ConvexPolygon& poly, std::pair<int, int> diameter_pair,
                       Point2 p, Point2 q, double tol_abs = 1e-9);

struct SeparatedPairViolation {
    std::pair<int, int> diameter_pair;
    Point2 p, q;
    double angle;
};

struct SeparatedPairReport {
    double min_angle = 0.0;   // minimum observed sees-angle (quiet NaN if none)
    long pairs_tested = 0;
    std::vector<SeparatedPairViolation> violations;  // sees-angle < 5pi/6 - tol
    bool pass() const { return violations.empty(); }
};

// Samples boundary-point pairs separated by each diameter and records the
// minimum sees-angle; values below 5pi/6 - tol_abs are violations.
SeparatedPairReport separated_pair_property(const ConvexPolygon& poly,
                                            int samples_per_diameter,
                                            std::uint64_t seed,
                                            double tol_diam = 1e-7,
                                            double tol_abs = 1e-9);

// Convex quadrilateral with angle(v0) + angle(v1) <= pi: is v0 or v1 diametral?
bool quad_lemma_check(const ConvexPolygon& quad, double tol_diam = 1e-7,
                      double tol_abs = 1e-9);

bool is_centrally_symmetric(const ConvexPolygon& poly, double tol_abs = 1e-9);

// Index of the vertex closest to -vertex(i); throws NotSymmetric when the
// polygon is not origin-symmetric.
int opposite_vertex(const ConvexPolygon& poly, int i, double tol_abs = 1e-9);

// Origin-symmetric polygon, vertex angle <= 5pi/12: is (v, -v) a diameter?
bool symmetric_diameter_check(const ConvexPolygon& poly, int i,
                              double tol_diam = 1e-7, double tol_abs = 1e-9);

// CSV with header "x,y", one vertex per line, counterclockwise.
ConvexPolygon read_polygon_csv(std::istream& in, double tol_abs = 1e-9);
ConvexPolygon load_polygon_csv(const std::string& path, double tol_abs = 1e-9);

}  // namespace diametral::planar
