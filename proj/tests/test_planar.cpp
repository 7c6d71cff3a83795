#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diametral/planar.hpp"
#include "diametral/rng.hpp"

using namespace diametral;
using namespace diametral::planar;

namespace {

ConvexPolygon unit_square() {
    return ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

ConvexPolygon equilateral_triangle() {
    return ConvexPolygon({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}});
}

ConvexPolygon regular_ngon(int n, double circumradius = 1.0) {
    std::vector<Point2> v;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        v.push_back({circumradius * std::cos(t), circumradius * std::sin(t)});
    }
    return ConvexPolygon(std::move(v));
}

// independent O(n^2) oracle for diameter pairs
DiameterResult brute_force_diameter(const ConvexPolygon& p, double tol_diam) {
    DiameterResult r;
    r.tolerance = tol_diam;
    const int n = p.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            r.length = std::max(r.length, distance(p.vertex(i), p.vertex(j)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (distance(p.vertex(i), p.vertex(j)) >= r.length * (1.0 - tol_diam))
                r.pairs.emplace_back(i, j);
    std::sort(r.pairs.begin(), r.pairs.end());
    return r;
}

ConvexPolygon random_ellipse_polygon(int n, std::uint64_t seed) {
    Rng rng(seed);
    const double a = rng.uniform(0.5, 1.5);
    const double b = rng.uniform(0.5, 1.5);
    const double rot = rng.uniform(0.0, kPi);
    std::vector<double> angles;
    for (int i = 0; i < n; ++i) angles.push_back(rng.uniform(0.0, 2.0 * kPi));
    std::sort(angles.begin(), angles.end());
    std::vector<Point2> pts;
    for (double t : angles) {
        const double x = a * std::cos(t), y = b * std::sin(t);
        pts.push_back({x * std::cos(rot) - y * std::sin(rot),
                       x * std::sin(rot) + y * std::cos(rot)});
    }
    return convex_hull(pts);
}

}  // namespace

TEST_CASE("convex hull basics") {
    auto tri = convex_hull({{0, 0}, {1, 0}, {0, 1}});
    CHECK(tri.size() == 3);

    auto sq = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
    CHECK(sq.size() == 4);

    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}}), DegenerateInput);
}

TEST_CASE("convex hull contains inputs") {
    Rng rng(12345);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Point2> pts;
        for (int i = 0; i < 100; ++i) {
            const double r = std::sqrt(rng.uniform());
            const double t = rng.uniform(0.0, 2.0 * kPi);
            pts.push_back({r * std::cos(t), r * std::sin(t)});
        }
        auto hull = convex_hull(pts);
        for (const auto& p : pts) CHECK(hull.contains(p, 1e-9));
        // hull vertices are a subset of the inputs
        for (const auto& hv : hull.vertices()) {
            bool found = false;
            for (const auto& p : pts)
                if (distance(p, hv) < 1e-12) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("polygon construction rejects degenerate input") {
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), DegenerateInput);
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {1, 0}}), DegenerateInput);
    // clockwise
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 0}}), DegenerateInput);
    // near-pi vertex
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 1e-12}, {2, 0}, {1, 1}}), DegenerateInput);
    // reflex quad
    CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {0.1, 0.1}, {0, 2}}), DegenerateInput);
}

TEST_CASE("polygon diameter on symmetric shapes") {
    auto tri = equilateral_triangle();
    auto d = polygon_diameter(tri);
    CHECK(d.length == doctest::Approx(1.0));
    CHECK(d.pairs.size() == 3);

    auto sq = unit_square();
    d = polygon_diameter(sq);
    CHECK(d.length == doctest::Approx(std::sqrt(2.0)));
    CHECK(d.pairs.size() == 2);
    CHECK(d.contains(0, 2));
    CHECK(d.contains(1, 3));

    // regular pentagon with unit side: diameter is the golden ratio
    const double side = 2.0 * std::sin(kPi / 5.0);
    auto pent = regular_ngon(5, 1.0 / side);
    d = polygon_diameter(pent);
    CHECK(d.length == doctest::Approx(1.6180339887).epsilon(1e-9));
    CHECK(d.pairs.size() == 5);
    CHECK(d.pairs == brute_force_diameter(pent, 1e-7).pairs);
}

TEST_CASE("rotating calipers equals brute force on random polygons") {
    for (std::uint64_t s = 0; s < 300; ++s) {
        const int n = 3 + static_cast<int>(s % 40);
        auto poly = random_ellipse_polygon(n, splitmix64(s + 99));
        auto fast = polygon_diameter(poly);
        auto slow = brute_force_diameter(poly, 1e-7);
        CHECK(fast.length == doctest::Approx(slow.length).epsilon(1e-12));
        CHECK(fast.pairs == slow.pairs);
    }
}

TEST_CASE("diameter is invariant under adding interior points") {
    Rng rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        auto poly = random_ellipse_polygon(12, splitmix64(trial));
        auto d1 = polygon_diameter(poly);
        std::vector<Point2> pts = poly.vertices();
        const Point2 c = poly.centroid();
        for (int k = 0; k < 5; ++k) {
            const auto v = poly.vertex(static_cast<int>(rng.uniform_int(0, poly.size() - 1)));
            const double t = rng.uniform(0.05, 0.9);
            pts.push_back(c + t * (v - c));
        }
        auto d2 = polygon_diameter(convex_hull(pts));
        CHECK(d1.length == doctest::Approx(d2.length).epsilon(1e-12));
    }
}

TEST_CASE("vertex angles") {
    auto sq = unit_square();
    for (int i = 0; i < 4; ++i)
        CHECK(vertex_angle(sq, i) == doctest::Approx(kPi / 2.0));

    auto tri = equilateral_triangle();
    for (int i = 0; i < 3; ++i)
        CHECK(vertex_angle(tri, i) == doctest::Approx(kPi / 3.0));

    CHECK_THROWS_AS(vertex_angle(sq, 4), IndexOutOfRange);
    CHECK_THROWS_AS(vertex_angle(sq, -1), IndexOutOfRange);
}

TEST_CASE("angle sum identity (n-2)pi") {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const int n = 3 + static_cast<int>(s % 30);
        auto poly = random_ellipse_polygon(n, splitmix64(s * 31 + 5));
        double sum = 0.0;
        for (int i = 0; i < poly.size(); ++i) sum += vertex_angle(poly, i);
        CHECK(std::abs(sum - (poly.size() - 2) * kPi) <= poly.size() * 1e-9);
    }
}

TEST_CASE("boundary angle") {
    auto sq = unit_square();
    CHECK(boundary_angle(sq, BoundaryPoint2::on_edge(0, 0.5)) == doctest::Approx(kPi));
    CHECK(boundary_angle(sq, BoundaryPoint2::at_vertex(0)) == doctest::Approx(kPi / 2.0));
    auto tri = equilateral_triangle();
    for (int e = 0; e < 3; ++e)
        CHECK(boundary_angle(tri, BoundaryPoint2::on_edge(e, 0.25)) == doctest::Approx(kPi));
    CHECK_THROWS_AS(boundary_angle(sq, BoundaryPoint2::on_edge(0, 1.5)), NotOnBoundary);
}

TEST_CASE("is_diametral") {
    auto tri = equilateral_triangle();
    for (int i = 0; i < 3; ++i)
        CHECK(is_diametral(tri, BoundaryPoint2::at_vertex(i)));
    CHECK_FALSE(is_diametral(tri, BoundaryPoint2::on_edge(0, 0.5)));

    // isosceles with apex angle pi/3 + 0.3: apex is not diametral
    const double apex = kPi / 3.0 + 0.3;
    const double w = std::sin(apex / 2.0), h = std::cos(apex / 2.0);
    ConvexPolygon sharp({{-w, 0}, {w, 0}, {0, h}});
    CHECK_FALSE(is_diametral(sharp, BoundaryPoint2::at_vertex(2)));
    CHECK(is_diametral(sharp, BoundaryPoint2::at_vertex(0)));
}

TEST_CASE("evaluate_criterion") {
    auto tri = equilateral_triangle();
    auto v = evaluate_criterion(tri, {BoundaryPoint2::at_vertex(0)});
    CHECK(v.angle_sum == doctest::Approx(kPi / 3.0));
    CHECK(v.bound == doctest::Approx(kPi / 3.0));
    CHECK(v.hypothesis_holds);
    CHECK(v.conclusion_holds());

    auto sq = unit_square();
    v = evaluate_criterion(sq, {BoundaryPoint2::at_vertex(0), BoundaryPoint2::at_vertex(1)});
    CHECK(v.angle_sum == doctest::Approx(kPi));
    CHECK(v.bound == doctest::Approx(5.0 * kPi / 6.0));
    CHECK_FALSE(v.hypothesis_holds);
    CHECK(v.conclusion_holds());  // square corners are all diametral

    CHECK_THROWS_AS(evaluate_criterion(sq, {}), BadCardinality);
    CHECK_THROWS_AS(evaluate_criterion(
                        sq, std::vector<BoundaryPoint2>(4, BoundaryPoint2::at_vertex(0))),
                    BadCardinality);
}

TEST_CASE("two_point_diameter_check") {
    auto tri = equilateral_triangle();
    CHECK(two_point_diameter_check(tri, 0, 1));
    CHECK(two_point_diameter_check(tri, 1, 2));

    // thin rhombus with two opposite angles pi/4: long diagonal is the diameter
    const double half = kPi / 8.0;
    const double b = std::tan(half);
    ConvexPolygon rhombus({{1, 0}, {0, b}, {-1, 0}, {0, -b}});
    CHECK(vertex_angle(rhombus, 0) == doctest::Approx(kPi / 4.0));
    CHECK(two_point_diameter_check(rhombus, 0, 2));

    auto hex = regular_ngon(6);
    CHECK_THROWS_AS(two_point_diameter_check(hex, 0, 3), HypothesisNotMet);
}

TEST_CASE("sees_angle") {
    CHECK(sees_angle({-1, 0}, {1, 0}, {0, 1}, {0, -1}) == doctest::Approx(kPi));
    CHECK(sees_angle({-1, 0}, {1, 0}, {0, 100}, {0, -100}) < 0.05);
    CHECK_THROWS_AS(sees_angle({-1, 0}, {1, 0}, {0.0, 0.0}, {0, 1}), DegenerateAngle);
    CHECK_THROWS_AS(sees_angle({-1, 0}, {1, 0}, {0, 1}, {1, 0}), DegenerateAngle);
}

TEST_CASE("is_separated_pair") {
    auto sq = unit_square();
    auto d = polygon_diameter(sq);
    REQUIRE(d.contains(0, 2));
    CHECK(is_separated_pair(sq, {0, 2}, sq.vertex(1), sq.vertex(3)));
    // two points on the same side of the diagonal
    CHECK_FALSE(is_separated_pair(sq, {0, 2}, {0.9, 0.1}, {0.8, 0.05}));
    CHECK_THROWS_AS(is_separated_pair(sq, {0, 2}, {0.5, 0.5}, {0.9, 0.1}), OnDiameter);
}

TEST_CASE("separated pair property on the square") {
    auto report = separated_pair_property(unit_square(), 30, 42);
    CHECK(report.pass());
    CHECK(report.pairs_tested > 0);
    CHECK(report.min_angle >= 5.0 * kPi / 6.0 - 1e-9);
}

TEST_CASE("separated pair property randomized") {
    for (std::uint64_t s = 0; s < 60; ++s) {
        const int n = 3 + static_cast<int>(s % 20);
        auto poly = random_ellipse_polygon(n, splitmix64(s + 1234));
        auto report = separated_pair_property(poly, 20, splitmix64(s));
        CHECK(report.pass());
    }
}

TEST_CASE("quad lemma") {
    CHECK(quad_lemma_check(unit_square()));
    // 2x1 rectangle: first two vertices on a short side
    ConvexPolygon rect({{0, 0}, {1, 0}, {1, 2}, {0, 2}});
    CHECK(quad_lemma_check(rect));
    auto hexagon = regular_ngon(6);
    CHECK_THROWS_AS(quad_lemma_check(hexagon), InvalidParams);
    // sum of two adjacent angles > pi
    ConvexPolygon fat({{0, 0}, {3, 0}, {3.2, 1.0}, {-0.2, 1.0}});
    CHECK(vertex_angle(fat, 0) + vertex_angle(fat, 1) > kPi + 1e-9);
    CHECK_THROWS_AS(quad_lemma_check(fat), HypothesisNotMet);
}

TEST_CASE("quad lemma randomized") {
    Rng rng(5150);
    int tested = 0;
    for (int trial = 0; trial < 4000 && tested < 600; ++trial) {
        auto poly = random_ellipse_polygon(4, splitmix64(trial + 31));
        if (poly.size() != 4) continue;
        for (int r = 0; r < 4; ++r) {
            std::vector<Point2> rotated;
            for (int i = 0; i < 4; ++i) rotated.push_back(poly.vertex((i + r) % 4));
            ConvexPolygon q(rotated);
            if (vertex_angle(q, 0) + vertex_angle(q, 1) > kPi) continue;
            ++tested;
            CHECK(quad_lemma_check(q));
        }
    }
    CHECK(tested >= 100);
}

TEST_CASE("symmetric diameter check") {
    // rhombus with acute angle pi/3 at (1,0): long diagonal is the diameter
    const double b = std::tan(kPi / 6.0);
    ConvexPolygon rhombus({{1, 0}, {0, b}, {-1, 0}, {0, -b}});
    CHECK(vertex_angle(rhombus, 0) == doctest::Approx(kPi / 3.0));
    CHECK(symmetric_diameter_check(rhombus, 0));

    // acute angle exactly 5pi/12
    const double b2 = std::tan(5.0 * kPi / 24.0);
    ConvexPolygon rhombus2({{1, 0}, {0, b2}, {-1, 0}, {0, -b2}});
    CHECK(symmetric_diameter_check(rhombus2, 0));

    auto hex = regular_ngon(6);
    CHECK_THROWS_AS(symmetric_diameter_check(hex, 0), HypothesisNotMet);

    CHECK_THROWS_AS(symmetric_diameter_check(equilateral_triangle(), 0), NotSymmetric);
}

TEST_CASE("similarity equivariance") {
    Rng rng(8080);
    for (int trial = 0; trial < 25; ++trial) {
        auto poly = random_ellipse_polygon(10, splitmix64(trial + 400));
        const double scale = rng.uniform(0.3, 4.0);
        const double rot = rng.uniform(0.0, 2.0 * kPi);
        const Point2 shift{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        std::vector<Point2> tv;
        for (const auto& p : poly.vertices()) {
            const double x = scale * (p.x * std::cos(rot) - p.y * std::sin(rot));
            const double y = scale * (p.x * std::sin(rot) + p.y * std::cos(rot));
            tv.push_back({x + shift.x, y + shift.y});
        }
        ConvexPolygon moved(tv);
        auto d0 = polygon_diameter(poly);
        auto d1 = polygon_diameter(moved);
        CHECK(d1.length == doctest::Approx(scale * d0.length).epsilon(1e-9));
        CHECK(d0.pairs == d1.pairs);
        for (int i = 0; i < poly.size(); ++i)
            CHECK(vertex_angle(moved, i) == doctest::Approx(vertex_angle(poly, i)).epsilon(1e-9));
    }
}

TEST_CASE("criterion property on random polygons") {
    // hypothesis => conclusion over random polygons and random vertex sets
    Rng rng(220);
    for (std::uint64_t s = 0; s < 400; ++s) {
        const int n = 3 + static_cast<int>(s % 12);
        auto poly = random_ellipse_polygon(n, splitmix64(s + 5000));
        for (int rep = 0; rep < 8; ++rep) {
            const int k = 1 + static_cast<int>(rng.uniform_int(0, 2));
            std::vector<BoundaryPoint2> e;
            for (int j = 0; j < k; ++j)
                e.push_back(BoundaryPoint2::at_vertex(
                    static_cast<int>(rng.uniform_int(0, poly.size() - 1))));
            auto v = evaluate_criterion(poly, e);
            if (v.hypothesis_holds) CHECK(v.conclusion_holds());
        }
    }
}

TEST_CASE("mixed edge-point triple") {
    // two sharp vertices plus a flat edge point: sum can stay under 4pi/3
    const double apex = kPi / 7.0;
    const double w = std::sin(apex / 2.0), h = std::cos(apex / 2.0);
    ConvexPolygon needle({{-w, 0}, {w, 0}, {0, h}});
    const double base_angle = vertex_angle(needle, 0);
    std::vector<BoundaryPoint2> e{BoundaryPoint2::at_vertex(0),
                                  BoundaryPoint2::at_vertex(1),
                                  BoundaryPoint2::on_edge(1, 0.5)};
    auto v = evaluate_criterion(needle, e);
    CHECK(v.angle_sum == doctest::Approx(2 * base_angle + kPi));
    if (v.hypothesis_holds) CHECK(v.conclusion_holds());
}

TEST_CASE("thin polygons keep the invariants") {
    // strongly eccentric ellipses produce near-collinear runs that the hull
    // must prune, and calipers must still agree with brute force
    Rng rng(31415);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Point2> pts;
        const int n = 6 + static_cast<int>(rng.uniform_int(0, 40));
        for (int i = 0; i < n; ++i) {
            const double t = rng.uniform(0.0, 2.0 * kPi);
            pts.push_back({1.5 * std::cos(t), 0.01 * std::sin(t)});
        }
        ConvexPolygon poly = [&] {
            try {
                return convex_hull(pts);
            } catch (const DegenerateInput&) {
                pts.push_back({0.0, 0.5});
                return convex_hull(pts);
            }
        }();
        auto fast = polygon_diameter(poly);
        auto slow = brute_force_diameter(poly, 1e-7);
        CHECK(fast.pairs == slow.pairs);
        double sum = 0.0;
        for (int i = 0; i < poly.size(); ++i) sum += vertex_angle(poly, i);
        CHECK(std::abs(sum - (poly.size() - 2) * kPi) <= poly.size() * 1e-9);
    }
}

TEST_CASE("csv round trip errors") {
    std::istringstream bad_header("a,b\n0,0\n1,0\n0,1\n");
    CHECK_THROWS_AS(read_polygon_csv(bad_header), ParseError);
    std::istringstream bad_number("x,y\n0,0\n1,zzz\n0,1\n");
    CHECK_THROWS_AS(read_polygon_csv(bad_number), ParseError);
    std::istringstream good("x,y\n0,0\n1,0\n0,1\n");
    auto poly = read_polygon_csv(good);
    CHECK(poly.size() == 3);
}
