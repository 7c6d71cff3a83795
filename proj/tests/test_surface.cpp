#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <limits>

#include "diametral/rng.hpp"
#include "diametral/surface.hpp"

using namespace diametral;
using namespace diametral::solid;
using namespace diametral::surface;

namespace {

ConvexPolytope unit_cube() {
    std::vector<Point3> v = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                             {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    std::vector<std::vector<int>> f = {
        {0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4}, {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7},
    };
    return ConvexPolytope(std::move(v), std::move(f));
}

ConvexPolytope regular_tetrahedron() {
    std::vector<Point3> v = {{1, 0, -1 / std::sqrt(2.0)},
                             {-1, 0, -1 / std::sqrt(2.0)},
                             {0, 1, 1 / std::sqrt(2.0)},
                             {0, -1, 1 / std::sqrt(2.0)}};
    const double e = distance(v[0], v[1]);
    for (auto& p : v) p = (1.0 / e) * p;
    std::vector<std::vector<int>> f = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
    return ConvexPolytope(std::move(v), std::move(f));
}

ConvexPolytope square_bipyramid(double h) {
    std::vector<Point3> v;
    for (int i = 0; i < 4; ++i) {
        const double t = 2.0 * kPi * i / 4.0;
        v.push_back({std::cos(t), std::sin(t), 0.0});
    }
    v.push_back({0, 0, h});
    v.push_back({0, 0, -h});
    std::vector<std::vector<int>> f;
    for (int i = 0; i < 4; ++i) f.push_back({i, (i + 1) % 4, 4});
    for (int i = 0; i < 4; ++i) f.push_back({(i + 1) % 4, i, 5});
    return ConvexPolytope(std::move(v), std::move(f));
}

}  // namespace

TEST_CASE("graph resolution rounds up to nesting values") {
    auto cube = unit_cube();
    CHECK(GeodesicGraph(cube, 0).effective_resolution() == 0);
    CHECK(GeodesicGraph(cube, 1).effective_resolution() == 1);
    CHECK(GeodesicGraph(cube, 2).effective_resolution() == 3);
    CHECK(GeodesicGraph(cube, 8).effective_resolution() == 15);
    CHECK(GeodesicGraph(cube, 2).node_count() == 8 + 12 * 3);
}

TEST_CASE("adjacent cube vertices are one edge apart") {
    auto cube = unit_cube();
    auto est = geodesic_distance(cube, SurfacePoint::at_vertex(0), SurfacePoint::at_vertex(1), 2);
    CHECK(est.value == doctest::Approx(1.0));
    CHECK(est.graph_bound == doctest::Approx(1.0));
}

TEST_CASE("cube opposite corners: straightened distance is sqrt(5)") {
    auto cube = unit_cube();
    for (const int m : {0, 2, 8}) {
        auto est = geodesic_distance(cube, SurfacePoint::at_vertex(0),
                                     SurfacePoint::at_vertex(6), m);
        CHECK(std::abs(est.value - std::sqrt(5.0)) < 1e-6);
        CHECK(est.value <= est.graph_bound + 1e-12);
    }
}

TEST_CASE("graph bound is non-increasing in the resolution") {
    auto cube = unit_cube();
    auto tet = regular_tetrahedron();
    for (const auto* body : {&cube, &tet}) {
        double prev = 1e100;
        for (const int m : {2, 4, 8, 16}) {
            auto est = geodesic_distance(*body, SurfacePoint::at_vertex(0),
                                         SurfacePoint::at_vertex(body->vertex_count() - 1), m);
            CHECK(est.graph_bound <= prev + 1e-12);
            prev = est.graph_bound;
        }
    }
}

TEST_CASE("tetrahedron vertices: distance equals the edge") {
    auto tet = regular_tetrahedron();
    auto est = geodesic_distance(tet, SurfacePoint::at_vertex(0), SurfacePoint::at_vertex(1), 4);
    CHECK(est.value == doctest::Approx(1.0));
}

TEST_CASE("straighten_in_sequence on the cube") {
    auto cube = unit_cube();
    // faces y=0 (2) and x=1 (3) share the edge 1-5
    const Point3 c1 = cube.face_centroid(2);
    const Point3 c2 = cube.face_centroid(3);
    auto len = straighten_in_sequence(cube, {2, 3}, c1, c2);
    REQUIRE(len.has_value());
    CHECK(*len == doctest::Approx(1.0));

    // opposite cube corners through the two-face strip: sqrt(5)
    auto len2 = straighten_in_sequence(cube, {2, 3}, cube.vertex(0), cube.vertex(6));
    REQUIRE(len2.has_value());
    CHECK(*len2 == doctest::Approx(std::sqrt(5.0)));

    // blocked: the L-shaped strip through the bottom face cannot carry the
    // straight segment between two top corners
    auto blocked = straighten_in_sequence(cube, {2, 0, 3}, cube.vertex(4), cube.vertex(5));
    CHECK_FALSE(blocked.has_value());

    CHECK_THROWS_AS(straighten_in_sequence(cube, {0, 1}, cube.vertex(0), cube.vertex(6)),
                    NonAdjacentSequence);
}

TEST_CASE("geodesic symmetry and the chord lower bound") {
    auto bip = square_bipyramid(2.0);
    GeodesicGraph graph(bip, 4);
    Rng rng(7);
    for (int trial = 0; trial < 12; ++trial) {
        const int i = static_cast<int>(rng.uniform_int(0, bip.vertex_count() - 1));
        const int j = static_cast<int>(rng.uniform_int(0, bip.vertex_count() - 1));
        if (i == j) continue;
        auto pq = geodesic_distance(graph, SurfacePoint::at_vertex(i), SurfacePoint::at_vertex(j));
        auto qp = geodesic_distance(graph, SurfacePoint::at_vertex(j), SurfacePoint::at_vertex(i));
        CHECK(pq.value == doctest::Approx(qp.value).epsilon(1e-9));
        CHECK(pq.value >= distance(bip.vertex(i), bip.vertex(j)) - 1e-9);
        CHECK(pq.value <= pq.graph_bound + 1e-12);
    }
}

TEST_CASE("triangle inequality within slack") {
    auto cube = unit_cube();
    GeodesicGraph graph(cube, 4);
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const int a = static_cast<int>(rng.uniform_int(0, 7));
        const int b = static_cast<int>(rng.uniform_int(0, 7));
        const int c = static_cast<int>(rng.uniform_int(0, 7));
        if (a == b || b == c || a == c) continue;
        auto ab = geodesic_distance(graph, SurfacePoint::at_vertex(a), SurfacePoint::at_vertex(b));
        auto bc = geodesic_distance(graph, SurfacePoint::at_vertex(b), SurfacePoint::at_vertex(c));
        auto ac = geodesic_distance(graph, SurfacePoint::at_vertex(a), SurfacePoint::at_vertex(c));
        CHECK(ac.value <= ab.value + bc.value + 2.0 * (ab.slack + bc.slack));
    }
}

TEST_CASE("intrinsic diameter of the cube is at least sqrt(5)") {
    auto cube = unit_cube();
    auto est = intrinsic_diameter_estimate(cube, 4, 4);
    CHECK(est.value >= std::sqrt(5.0) - 1e-6);
    CHECK(est.lower_bound <= est.value);
    CHECK(est.value <= est.graph_bound + 1e-12);
}

TEST_CASE("intrinsic diameter of the tetrahedron is at least 1") {
    auto tet = regular_tetrahedron();
    auto est = intrinsic_diameter_estimate(tet, 4, 4);
    CHECK(est.value >= 1.0 - 1e-9);
}

TEST_CASE("budget cap") {
    auto cube = unit_cube();
    EstimateBudget tiny;
    tiny.max_cost = 10.0;
    CHECK_THROWS_AS(intrinsic_diameter_estimate(cube, 4, 8, tiny), BudgetExceeded);
}

TEST_CASE("surface criterion on a spiky bipyramid") {
    auto bip = square_bipyramid(6.0);
    const double apex = complete_angle(bip, SurfacePoint::at_vertex(4));
    CHECK(2.0 * apex < 5.0 * kPi / 3.0);
    auto verdict = evaluate_criterion_surface(
        bip, {SurfacePoint::at_vertex(4), SurfacePoint::at_vertex(5)}, 4, 4);
    CHECK(verdict.hypothesis_holds);
    CHECK(verdict.conclusion == Tristate::holds);
}

TEST_CASE("surface criterion hypothesis fails on the tetrahedron pair") {
    auto tet = regular_tetrahedron();
    auto verdict = evaluate_criterion_surface(
        tet, {SurfacePoint::at_vertex(0), SurfacePoint::at_vertex(1)}, 4, 4);
    CHECK(verdict.angle_sum == doctest::Approx(2.0 * kPi));
    CHECK_FALSE(verdict.hypothesis_holds);  // 2pi > 5pi/3
}

TEST_CASE("flat geodesic triangle has zero comparison margins") {
    auto cube = unit_cube();
    auto report = comparison_angle_check(
        cube, SurfacePoint::on_face(1, {0.6, 0.2, 0.1, 0.1}),
        SurfacePoint::on_face(1, {0.1, 0.7, 0.1, 0.1}),
        SurfacePoint::on_face(1, {0.1, 0.2, 0.6, 0.1}), 2);
    for (const double m : report.margins) CHECK(std::abs(m) < 1e-6);
    CHECK(report.pass);
}

TEST_CASE("cube corner triangle: comparison angles never exceed surface angles") {
    auto cube = unit_cube();
    auto report = comparison_angle_check(cube, SurfacePoint::at_vertex(2),
                                         SurfacePoint::at_vertex(5),
                                         SurfacePoint::at_vertex(7), 6);
    CHECK(report.pass);
    for (const double m : report.margins) CHECK(m >= -report.slack);
}

TEST_CASE("comparison distance check") {
    auto cube = unit_cube();
    auto report = comparison_distance_check(cube, SurfacePoint::at_vertex(0),
                                            SurfacePoint::at_vertex(2),
                                            SurfacePoint::at_vertex(7), 0.5, 4);
    CHECK(report.pass);

    auto flat = comparison_distance_check(
        cube, SurfacePoint::on_face(1, {0.7, 0.1, 0.1, 0.1}),
        SurfacePoint::on_face(1, {0.1, 0.7, 0.1, 0.1}),
        SurfacePoint::on_face(1, {0.1, 0.1, 0.7, 0.1}), 0.4, 2);
    CHECK(std::abs(flat.margin) < 1e-6);
}

TEST_CASE("diameter ratio couplings on the cube") {
    auto cube = unit_cube();
    auto report = makuha_check(cube, 4, 4);
    CHECK(report.pass);
    CHECK(report.extrinsic == doctest::Approx(std::sqrt(3.0)));
    CHECK(report.intrinsic_value >= std::sqrt(5.0) - 1e-6);
    CHECK(report.ratio_extrinsic < 1.0);
    CHECK(report.ratio_intrinsic < 1.0);
}

TEST_CASE("symmetric surface check on a bipyramid") {
    auto bip = square_bipyramid(4.0);
    CHECK(is_centrally_symmetric(bip));
    const double apex = complete_angle(bip, SurfacePoint::at_vertex(4));
    REQUIRE(apex <= 5.0 * kPi / 6.0);
    CHECK(symmetric_surface_check(bip, 4, 4, 4) == Tristate::holds);

    auto cube = unit_cube();
    std::vector<Point3> v;
    for (const auto& p : cube.vertices()) v.push_back(p + Point3{-0.5, -0.5, -0.5});
    ConvexPolytope centered(v, cube.faces());
    CHECK_THROWS_AS(symmetric_surface_check(centered, 0, 2, 2), HypothesisNotMet);
}

namespace {

// Independent oracle: enumerate every face sequence up to a length cap,
// straighten each, take the minimum. The true geodesic is straight within
// its own crossing sequence, so with a large enough cap this is exact.
double oracle_distance(const ConvexPolytope& S, const SurfacePoint& p,
                       const SurfacePoint& q, int max_len) {
    const Point3 pp = surface_point(S, p);
    const Point3 qq = surface_point(S, q);
    const auto p_faces = containing_faces(S, p);
    const auto q_faces = containing_faces(S, q);
    auto q_contains = [&](int f) {
        for (const int g : q_faces)
            if (f == g) return true;
        return false;
    };
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> seq;
    std::function<void(int)> extend = [&](int depth) {
        const int cur = seq.back();
        if (q_contains(cur)) {
            if (auto len = straighten_in_sequence(S, seq, pp, qq))
                best = std::min(best, *len);
        }
        if (depth >= max_len) return;
        const auto& cyc = S.faces()[static_cast<std::size_t>(cur)];
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            const int e = S.edge_index(cyc[i], cyc[(i + 1) % cyc.size()]);
            const auto [fl, fr] = S.edge_faces(e);
            const int next = (fl == cur) ? fr : fl;
            if (next == cur) continue;
            if (seq.size() >= 2 && seq[seq.size() - 2] == next) continue;
            seq.push_back(next);
            extend(depth + 1);
            seq.pop_back();
        }
    };
    for (const int f : p_faces) {
        seq = {f};
        extend(1);
    }
    return best;
}

}  // namespace

TEST_CASE("geodesics agree with the sequence-enumeration oracle") {
    // the oracle is exact on small bodies; the graph estimate must stay an
    // upper bound and come close at moderate resolution
    std::vector<ConvexPolytope> bodies;
    bodies.push_back(unit_cube());
    bodies.push_back(regular_tetrahedron());
    bodies.push_back(square_bipyramid(1.3));
    bodies.push_back(square_bipyramid(0.45));
    for (const auto& body : bodies) {
        GeodesicGraph graph(body, 8);
        for (int i = 0; i < body.vertex_count(); ++i)
            for (int j = i + 1; j < body.vertex_count(); ++j) {
                const double exact = oracle_distance(body, SurfacePoint::at_vertex(i),
                                                     SurfacePoint::at_vertex(j), 5);
                REQUIRE(std::isfinite(exact));
                const auto est = geodesic_distance(graph, SurfacePoint::at_vertex(i),
                                                   SurfacePoint::at_vertex(j));
                // never below the true distance
                CHECK(est.value >= exact - 1e-9);
                // and close to it at this resolution
                CHECK(est.value <= exact + 0.06 * exact);
                CHECK(est.value - est.slack <= exact + 1e-9);
            }
    }
}

TEST_CASE("oracle on cube opposite corners is sqrt(5)") {
    auto cube = unit_cube();
    const double exact =
        oracle_distance(cube, SurfacePoint::at_vertex(0), SurfacePoint::at_vertex(6), 4);
    CHECK(exact == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("face samples lie on their faces") {
    auto cube = unit_cube();
    auto samples = face_samples(cube, 5);
    CHECK(samples.size() > 6u);
    for (const auto& sp : samples) {
        const Point3 p = surface_point(cube, sp);
        const double d = dot(cube.face_normal(sp.index), p - cube.face_centroid(sp.index));
        CHECK(std::abs(d) < 1e-9);
    }
}
