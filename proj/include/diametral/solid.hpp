#pragma once

#include <array>
#include <cmath>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "diametral/common.hpp"
#include "diametral/planar.hpp"

namespace diametral::solid {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

using Vec3 = Point3;

inline Vec3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Point3 operator+(Point3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline double distance(Point3 a, Point3 b) { return norm(a - b); }
inline Vec3 normalized(Vec3 v) {
    const double n = norm(v);
    return {v.x / n, v.y / n, v.z / n};
}

// Angle at p between directions to a and to b, in [0, pi].
double angle_at(Point3 p, Point3 a, Point3 b);

struct Edge {
    int a, b;        // vertex indices, a < b
    int face_left;   // face containing directed edge a->b
    int face_right;  // face containing directed edge b->a
};

// Closed convex polyhedral surface: vertex coordinates plus face cycles
// (counterclockwise seen from outside). Construction validates convexity,
// 2-manifoldness, the Euler relation and the 4pi total angular defect.
class ConvexPolytope {
public:
    ConvexPolytope(std::vector<Point3> vertices, std::vector<std::vector<int>> faces,
                   double tol_abs = 1e-9);

    const std::vector<Point3>& vertices() const { return verts_; }
    const std::vector<std::vector<int>>& faces() const { return faces_; }
    const std::vector<Edge>& edges() const { return edges_; }
    int vertex_count() const { return static_cast<int>(verts_.size()); }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    Point3 vertex(int i) const { return verts_[static_cast<std::size_t>(i)]; }

    // unit outward normal of face f
    Vec3 face_normal(int f) const { return normals_[static_cast<std::size_t>(f)]; }
    Point3 face_centroid(int f) const;
    // index into edges() for the undirected pair (a, b); -1 when absent
    int edge_index(int a, int b) const;
    // the two faces sharing edge e
    std::pair<int, int> edge_faces(int e) const;
    // faces incident to vertex v in rotational order around v
    const std::vector<int>& vertex_faces(int v) const {
        return vertex_faces_[static_cast<std::size_t>(v)];
    }
    // index of the edge shared by faces f and g, -1 if none
    int shared_edge(int f, int g) const;
    double longest_edge() const;
    double bounding_radius() const;

private:
    std::vector<Point3> verts_;
    std::vector<std::vector<int>> faces_;
    std::vector<Edge> edges_;
    std::vector<Vec3> normals_;
    std::vector<std::vector<int>> vertex_faces_;
};

// A location on the surface: a vertex, a point inside an edge (parameter t
// toward the higher-indexed endpoint), or a point inside a face given by
// cycle weights (convex coefficients over the face's vertex cycle).
struct SurfacePoint {
    enum class Kind { vertex, edge, face };
    Kind kind = Kind::vertex;
    int index = 0;
    double t = 0.0;
    std::vector<double> weights;

    static SurfacePoint at_vertex(int v) { return {Kind::vertex, v, 0.0, {}}; }
    static SurfacePoint on_edge(int e, double t) { return {Kind::edge, e, t, {}}; }
    static SurfacePoint on_face(int f, std::vector<double> w) {
        return {Kind::face, f, 0.0, std::move(w)};
    }
};

Point3 surface_point(const ConvexPolytope& T, const SurfacePoint& p);

// faces whose closure contains p
std::vector<int> containing_faces(const ConvexPolytope& T, const SurfacePoint& p);

// Complete angle: sum of incident face angles at a vertex; 2pi inside an
// edge or a face (flat tangent cone).
double complete_angle(const ConvexPolytope& T, const SurfacePoint& p);

// Angular defect 2pi - complete angle; sums to 4pi over all vertices.
double curvature(const ConvexPolytope& T, const SurfacePoint& p);

// Maximum pairwise vertex distance with all near-maximal pairs; diameter
// endpoints of a convex body are extreme points, i.e. vertices.
DiameterResult extrinsic_diameter(const ConvexPolytope& T, double tol_diam = 1e-7);

// Angle-sum criterion for |E| in {1,2,3}; bounds 2pi/3, 3pi/2, 9pi/4.
CriterionVerdict evaluate_criterion_3d(const ConvexPolytope& T,
                                       const std::vector<SurfacePoint>& E,
                                       double tol_diam = 1e-7, double tol_abs = 1e-9);

// For two surface points with complete angles <= 2pi/3: do they realize the
// extrinsic diameter?
bool two_point_diameter_check_3d(const ConvexPolytope& T, const SurfacePoint& p,
                                 const SurfacePoint& q, double tol_diam = 1e-7,
                                 double tol_abs = 1e-9);

// Orthonormal 2D chart of a plane in space.
struct PlaneFrame {
    Point3 origin;
    Vec3 e1, e2, normal;
    planar::Point2 project(Point3 p) const {
        return {dot(p - origin, e1), dot(p - origin, e2)};
    }
    Point3 lift(planar::Point2 q) const { return origin + q.x * e1 + q.y * e2; }
};

struct CrossSection {
    planar::ConvexPolygon polygon;
    PlaneFrame frame;
    // section vertex index closest to a given space point, -1 if > tol away
    int find_vertex(Point3 p, double tol_abs = 1e-9) const;
};

// The convex polygon T cut by the plane through a, b, c, in plane
// coordinates. Throws EmptySection when the plane misses the interior.
CrossSection cross_section(const ConvexPolytope& T, Point3 a, Point3 b, Point3 c,
                           double tol_abs = 1e-9);

// Planar images of x, u, y, v after unfolding two triangles across the named
// diagonal; x and y land on opposite sides of the diagonal's image.
struct UnfoldedQuad {
    planar::Point2 x, u, y, v;
    std::string source_edge;  // "uv" or "xy"
    // interior angles at (x, u, y, v); angles at the diagonal's endpoints are
    // sums of the two triangle angles and may exceed pi
    std::array<double, 4> corner_angles() const;
};

// Unfolds triangles xuv and yuv across uv (first quad) and triangles uxy and
// vxy across xy (second quad). Coplanar inputs are accepted (flat case).
std::pair<UnfoldedQuad, UnfoldedQuad> unfold_tetrahedron(Point3 x, Point3 u, Point3 y,
                                                         Point3 v, double tol_abs = 1e-9);

bool is_centrally_symmetric(const ConvexPolytope& T, double tol_abs = 1e-9);

// Index of the vertex closest to -vertex(i); throws NotSymmetric otherwise.
int opposite_vertex(const ConvexPolytope& T, int i, double tol_abs = 1e-9);

// Origin-symmetric polytope, complete angle <= 5pi/6: is (v, -v) a diameter?
bool symmetric_diameter_check_3d(const ConvexPolytope& T, int vertex,
                                 double tol_diam = 1e-7, double tol_abs = 1e-9);

// OFF input/output. Accepts an optional leading "OFF" line, then the counts
// line "V F E", V vertex lines and F face lines. Errors cite line numbers.
ConvexPolytope read_off(std::istream& in, double tol_abs = 1e-9);
ConvexPolytope load_off(const std::string& path, double tol_abs = 1e-9);
void write_off(std::ostream& out, const ConvexPolytope& T);
std::string to_off(const ConvexPolytope& T);

}  // namespace diametral::solid
