#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "diametral/common.hpp"
#include "diametral/planar.hpp"
#include "diametral/solid.hpp"
#include "diametral/surface.hpp"

namespace diametral::lab {

// ---- generators -----------------------------------------------------------

// Hull of n points at uniform random parameter angles on a random ellipse.
// The vertex count can drop below n only through collinearity pruning.
planar::ConvexPolygon random_convex_polygon(int n, std::uint64_t seed);

// Origin-symmetric polygon with 2*half_n vertices on a random ellipse.
planar::ConvexPolygon random_symmetric_polygon(int half_n, std::uint64_t seed);

// Generator-grade incremental 3D hull; inputs must be in general position
// (no 4 coplanar points on the hull), as produced by the random generators.
solid::ConvexPolytope convex_hull3(const std::vector<solid::Point3>& points,
                                   double tol_abs = 1e-9);

// Hull of n random points on a random ellipsoid.
solid::ConvexPolytope random_polytope(int n, std::uint64_t seed);

// Hull of n uniform points on the unit sphere; the near-equality case of the
// intrinsic-vs-extrinsic diameter coupling.
solid::ConvexPolytope sphere_hull(int n, std::uint64_t seed);

// Right pyramid over a regular base_n-gon of circumradius r, apex at height h.
solid::ConvexPolytope spike_pyramid(int base_n, double height, double radius = 1.0);

// Complete angle at the pyramid apex: base_n * 2 * asin(r*sin(pi/base_n)/sqrt(r^2+h^2)).
double pyramid_apex_angle(int base_n, double height, double radius = 1.0);

// Bipyramid over a regular base_n-gon with apexes at (0,0,+-h).
solid::ConvexPolytope bipyramid(int base_n, double height, double radius = 1.0);
double bipyramid_apex_angle(int base_n, double height, double radius = 1.0);
// height that realizes a target apex angle; InvalidParams when unreachable
double bipyramid_height_for_angle(int base_n, double apex_angle, double radius = 1.0);

// Origin-symmetric "drum with spikes": two rings at z = +-ring_z and two
// apexes at z = +-h. ring_n must be even for central symmetry.
solid::ConvexPolytope symmetric_lens(int ring_n, double height, double radius = 1.0,
                                     double ring_z = 0.3);
double lens_apex_angle(int ring_n, double height, double radius = 1.0,
                       double ring_z = 0.3);
double lens_height_for_angle(int ring_n, double apex_angle, double radius = 1.0,
                             double ring_z = 0.3);

struct SharpTriangle {
    planar::ConvexPolygon poly;
    int apex;  // vertex with angle pi/3 + eps
    double eps;
};
// Isosceles triangle with apex angle pi/3 + eps and unit legs; the base is
// the unique diameter, so the apex is not diametral.
SharpTriangle gen_sharp_triangle(double eps);

struct SharpQuad {
    planar::ConvexPolygon poly;
    int x, v, y, u;  // vertex indices in the cycle
    double eps;
};
// Quadrilateral xuyv with angle(x) + angle(y) = 5pi/6 + eps and uv as the
// unique diameter; neither x nor y is diametral.
SharpQuad gen_sharp_quad(double eps);

struct SharpPentagon {
    planar::ConvexPolygon poly;
    int x, y, v, z, u;  // vertex indices in the cycle
    double delta;
    double angle_sum;  // angle(x) + angle(y) + angle(z)
};
// Pentagon with x, y on the circle over the diameter uv and a near-60-degree
// corner z; the angle sum at {x,y,z} approaches 4pi/3 from above as delta->0.
SharpPentagon gen_sharp_pentagon(double delta);

struct RemarkPolygon {
    planar::ConvexPolygon poly;
    std::vector<int> xs;  // cycle indices of x_1..x_n
    int u, v;             // cycle indices of the unique diameter endpoints
    double delta;
};
// (n+2)-gon on a circle with the diameter chord uv and n points split k on
// one side, n-k on the other; the angle sum over the x_i tends to (n-2)pi
// while none of them is ever diametral.
RemarkPolygon gen_remark_polygon(int n, int k, double delta);

// ---- verification harness --------------------------------------------------

struct Violation {
    std::string description;
    std::string body;         // inline CSV (2D) or OFF (3D)
    std::vector<int> points;  // offending vertex indices, when applicable
};

struct Sharpness {
    double angle_sum = 0.0;
    double bound = 0.0;
    double gap = 0.0;
    std::string witness_body;
};

struct SearchReport {
    std::string family;
    long trials = 0;
    std::vector<Violation> violations;    // build-breaking findings
    std::vector<Violation> observations;  // descriptive log entries
    Sharpness best_sharpness;
    std::map<std::string, double> stats;
    std::map<std::string, long> counters;
    double runtime_ms = 0.0;
    bool pass() const { return violations.empty(); }
};

struct VerifyOptions {
    long trials = 1000;
    std::uint64_t seed = 1;
    int steiner = 4;
    int sampling = 3;
    double tol_abs = 1e-9;
    double tol_diam = 1e-7;
    long set_samples = 100;  // E-set draws per body when enumeration is large
    double cost_cap = 4e9;
};

const std::vector<std::string>& known_suites();
SearchReport verify_theorem(const std::string& suite, const VerifyOptions& options);

// Parameter search that walks each construction family toward the smallest
// angle sum that still leaves every point of E non-diametral.
SearchReport sharpness_search(const std::string& setting, long iterations,
                              std::uint64_t seed);

enum class CaseClass { consistent, bug, refutation_hit };
// A pair with angle sum <= 3pi/2 and no diametral member contradicts a
// proven statement and is flagged as an implementation bug, never as a
// refutation; hits live strictly in (3pi/2, 5pi/3].
CaseClass classify_conjecture_case(double angle_sum, bool has_diametral_member,
                                   double tol_abs = 1e-9);

// Scans 3D families for vertex pairs in the open window (3pi/2, 5pi/3]
// without a diametral member.
SearchReport conjecture_probe(long trials, std::uint64_t seed);

// Is y (complete angle <= pi) at maximal intrinsic distance from some
// sampled source? fails means every sampled source had a strictly farther
// point at definite margin.
Tristate farthest_point_witness(const solid::ConvexPolytope& S, int y_vertex,
                                int sampling, int steiner_per_edge,
                                double tol_abs = 1e-9);

// inline serializations used in reports
std::string polygon_csv(const planar::ConvexPolygon& poly);

}  // namespace diametral::lab
