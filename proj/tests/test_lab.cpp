#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "diametral/lab.hpp"
#include "diametral/rng.hpp"

using namespace diametral;
using namespace diametral::lab;
using planar::BoundaryPoint2;
using solid::SurfacePoint;

TEST_CASE("random polygons are deterministic and valid") {
    auto a = random_convex_polygon(50, 1234);
    auto b = random_convex_polygon(50, 1234);
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i)
        CHECK(planar::distance(a.vertex(i), b.vertex(i)) == 0.0);

    auto c = random_convex_polygon(3, 7);
    CHECK(c.size() == 3);

    double sum = 0.0;
    for (int i = 0; i < a.size(); ++i) sum += planar::vertex_angle(a, i);
    CHECK(std::abs(sum - (a.size() - 2) * kPi) <= a.size() * 1e-9);
}

TEST_CASE("random symmetric polygons are symmetric") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto poly = random_symmetric_polygon(2 + static_cast<int>(s % 9), splitmix64(s));
        CHECK(planar::is_centrally_symmetric(poly));
    }
}

TEST_CASE("3d hull of random sphere points") {
    for (std::uint64_t s = 0; s < 15; ++s) {
        auto body = random_polytope(10 + static_cast<int>(s * 3), splitmix64(s + 50));
        double defect = 0.0;
        for (int v = 0; v < body.vertex_count(); ++v)
            defect += solid::curvature(body, SurfacePoint::at_vertex(v));
        CHECK(std::abs(defect - 4.0 * kPi) <= body.vertex_count() * 1e-9);
        auto d = solid::extrinsic_diameter(body);
        CHECK(d.length > 0.0);
    }
}

TEST_CASE("hull3 deterministic") {
    auto a = random_polytope(30, 99);
    auto b = random_polytope(30, 99);
    REQUIRE(a.vertex_count() == b.vertex_count());
    for (int i = 0; i < a.vertex_count(); ++i)
        CHECK(solid::distance(a.vertex(i), b.vertex(i)) == 0.0);
}

TEST_CASE("pyramid apex angle matches the closed form") {
    for (const int base : {3, 4, 6, 9}) {
        for (const double h : {0.4, 1.0, 5.0, 12.0}) {
            auto p = spike_pyramid(base, h);
            const double measured = solid::complete_angle(p, SurfacePoint::at_vertex(base));
            CHECK(measured == doctest::Approx(pyramid_apex_angle(base, h)).epsilon(1e-12));
        }
    }
    auto p = spike_pyramid(4, 10.0);
    CHECK(pyramid_apex_angle(4, 10.0) < 2.0 * kPi / 3.0);
    CHECK(solid::extrinsic_diameter(p).has_endpoint(4));
}

TEST_CASE("bipyramid angle inversion") {
    for (const double target : {0.5, 1.2, 2.0, 2.6}) {
        const double h = bipyramid_height_for_angle(6, target);
        CHECK(bipyramid_apex_angle(6, h) == doctest::Approx(target).epsilon(1e-9));
        auto b = bipyramid(6, h);
        CHECK(solid::complete_angle(b, SurfacePoint::at_vertex(6)) ==
              doctest::Approx(target).epsilon(1e-9));
    }
}

TEST_CASE("lens is symmetric and angle inversion holds") {
    auto lens = symmetric_lens(6, 3.0);
    CHECK(solid::is_centrally_symmetric(lens));
    const double h = lens_height_for_angle(6, 1.5);
    CHECK(lens_apex_angle(6, h) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("sharp triangle") {
    for (const double eps : {0.01, 0.1, 0.3}) {
        const auto t = gen_sharp_triangle(eps);
        CHECK(std::abs(planar::vertex_angle(t.poly, t.apex) - (kPi / 3.0 + eps)) < 1e-9);
        CHECK_FALSE(planar::is_diametral(t.poly, BoundaryPoint2::at_vertex(t.apex)));
        CHECK(planar::is_diametral(t.poly, BoundaryPoint2::at_vertex(0)));
    }
    CHECK_THROWS_AS(gen_sharp_triangle(0.0), InvalidParams);
    CHECK_THROWS_AS(gen_sharp_triangle(1.0), InvalidParams);
}

TEST_CASE("sharp quad identities") {
    for (const double eps : {1e-3, 1e-2, 0.1}) {
        const auto q = gen_sharp_quad(eps);
        const double sum = planar::vertex_angle(q.poly, q.x) + planar::vertex_angle(q.poly, q.y);
        CHECK(std::abs(sum - (5.0 * kPi / 6.0 + eps)) < 1e-9);
        const auto d = planar::polygon_diameter(q.poly);
        REQUIRE(d.pairs.size() == 1);
        CHECK(d.contains(q.u, q.v));
        CHECK_FALSE(planar::is_diametral(q.poly, BoundaryPoint2::at_vertex(q.x)));
        CHECK_FALSE(planar::is_diametral(q.poly, BoundaryPoint2::at_vertex(q.y)));
        const auto v = planar::evaluate_criterion(
            q.poly, {BoundaryPoint2::at_vertex(q.x), BoundaryPoint2::at_vertex(q.y)});
        CHECK_FALSE(v.hypothesis_holds);
        CHECK_FALSE(v.conclusion_holds());
        const double sees = planar::sees_angle(q.poly.vertex(q.u), q.poly.vertex(q.v),
                                               q.poly.vertex(q.x), q.poly.vertex(q.y));
        CHECK(sees == doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("sharp quad construction lengths") {
    const auto q = gen_sharp_quad(1e-6);
    const auto& poly = q.poly;
    CHECK(planar::distance(poly.vertex(q.u), poly.vertex(q.v)) == doctest::Approx(1.0));
    CHECK(planar::distance(poly.vertex(q.x), poly.vertex(q.v)) ==
          doctest::Approx(1.0).epsilon(1e-4));
    CHECK(planar::distance(poly.vertex(q.x), poly.vertex(q.y)) ==
          doctest::Approx(1.0).epsilon(1e-4));
    CHECK(planar::distance(poly.vertex(q.u), poly.vertex(q.x)) ==
          doctest::Approx(planar::distance(poly.vertex(q.u), poly.vertex(q.y))).epsilon(1e-12));
}

TEST_CASE("sharp pentagon identities") {
    double prev_gap = 1e9;
    for (const double delta : {0.1, 0.05, 0.01}) {
        const auto p = gen_sharp_pentagon(delta);
        const double gap = p.angle_sum - 4.0 * kPi / 3.0;
        CHECK(gap > 0.0);
        CHECK(gap < prev_gap);
        prev_gap = gap;
        const auto d = planar::polygon_diameter(p.poly);
        REQUIRE(d.pairs.size() == 1);
        CHECK(d.contains(std::min(p.u, p.v), std::max(p.u, p.v)));
        for (const int i : {p.x, p.y, p.z})
            CHECK_FALSE(planar::is_diametral(p.poly, BoundaryPoint2::at_vertex(i)));
        CHECK(planar::angle_at(p.poly.vertex(p.x), p.poly.vertex(p.u), p.poly.vertex(p.v)) ==
              doctest::Approx(kPi / 2.0).epsilon(1e-9));
    }
    CHECK(gen_sharp_pentagon(0.05).angle_sum - 4.0 * kPi / 3.0 < 0.2);
}

TEST_CASE("remark polygon identities") {
    for (int n = 4; n <= 8; ++n) {
        const int k = n / 2;
        double prev_gap = 1e9;
        for (const double delta : {0.2, 0.1, 0.05}) {
            const auto r = gen_remark_polygon(n, k, delta);
            CHECK(r.poly.size() == n + 2);
            double sum = 0.0;
            for (const int i : r.xs) sum += planar::vertex_angle(r.poly, i);
            const double gap = sum - (n - 2) * kPi;
            CHECK(gap > 0.0);
            CHECK(gap < prev_gap);
            prev_gap = gap;
            const auto d = planar::polygon_diameter(r.poly);
            REQUIRE(d.pairs.size() == 1);
            CHECK(d.contains(std::min(r.u, r.v), std::max(r.u, r.v)));
            for (const int i : r.xs)
                CHECK_FALSE(planar::is_diametral(r.poly, BoundaryPoint2::at_vertex(i)));
        }
    }
    const auto hexagon = gen_remark_polygon(4, 2, 0.05);
    double sum = 0.0;
    for (const int i : hexagon.xs) sum += planar::vertex_angle(hexagon.poly, i);
    CHECK(sum < 2.0 * kPi + 0.3);
    CHECK_THROWS_AS(gen_remark_polygon(3, 2, 0.1), InvalidParams);
    CHECK_THROWS_AS(gen_remark_polygon(6, 5, 0.1), InvalidParams);
}

TEST_CASE("verify planar suites on small runs") {
    VerifyOptions opt;
    opt.trials = 120;
    opt.seed = 42;
    for (const char* suite : {"thm2.3", "lemma2.2", "cor2.4", "calipers"}) {
        const auto report = verify_theorem(suite, opt);
        INFO(suite);
        CHECK(report.pass());
    }
    VerifyOptions sep = opt;
    sep.trials = 40;
    const auto r21 = verify_theorem("lemma2.1", sep);
    CHECK(r21.pass());
    CHECK(r21.stats.at("min_sees_angle") >= 5.0 * kPi / 6.0 - 1e-9);
}

TEST_CASE("verify solid suites on small runs") {
    VerifyOptions opt;
    opt.trials = 60;
    opt.seed = 43;
    for (const char* suite : {"thm3.1", "thm3.2", "crosssection", "unfolding"}) {
        const auto report = verify_theorem(suite, opt);
        INFO(suite);
        CHECK(report.pass());
    }
}

TEST_CASE("verify surface suites on small runs") {
    VerifyOptions opt;
    opt.trials = 8;
    opt.seed = 44;
    opt.steiner = 3;
    opt.sampling = 3;
    for (const char* suite : {"thm4.4", "cor4.5", "lemma4.1", "lemma4.2", "makuha", "farthest"}) {
        const auto report = verify_theorem(suite, opt);
        INFO(suite);
        CHECK(report.pass());
    }
}

TEST_CASE("unknown suite") {
    CHECK_THROWS_AS(verify_theorem("thm9.9", VerifyOptions{}), UnknownSuite);
}

TEST_CASE("report determinism") {
    VerifyOptions opt;
    opt.trials = 50;
    opt.seed = 77;
    const auto a = verify_theorem("thm2.3", opt);
    const auto b = verify_theorem("thm2.3", opt);
    CHECK(a.counters == b.counters);
    CHECK(a.stats == b.stats);
    CHECK(a.violations.size() == b.violations.size());
}

TEST_CASE("sharpness search reaches the planar bounds") {
    const auto r1 = sharpness_search("planar-1", 400, 5);
    CHECK(r1.pass());
    CHECK(r1.best_sharpness.gap >= 0.0);
    CHECK(r1.best_sharpness.gap <= 0.05);

    const auto r2 = sharpness_search("planar-2", 400, 5);
    CHECK(r2.pass());
    CHECK(r2.best_sharpness.gap <= 0.05);

    const auto r3 = sharpness_search("planar-3", 400, 5);
    CHECK(r3.pass());
    CHECK(r3.best_sharpness.gap <= 0.05);
}

TEST_CASE("sharpness search reports solid families") {
    const auto r = sharpness_search("solid-1", 120, 6);
    CHECK(r.pass());
    CHECK(r.best_sharpness.gap > 0.0);
    CHECK_THROWS_AS(sharpness_search("planar-9", 10, 1), InvalidSetting);
}

TEST_CASE("conjecture classification flags bugs") {
    CHECK(classify_conjecture_case(4.0, true) == CaseClass::consistent);
    CHECK(classify_conjecture_case(3.0 * kPi / 2.0 - 0.1, false) == CaseClass::bug);
    CHECK(classify_conjecture_case(3.0 * kPi / 2.0 + 0.1, false) == CaseClass::refutation_hit);
    CHECK(classify_conjecture_case(5.0 * kPi / 3.0 + 0.1, false) == CaseClass::consistent);
}

TEST_CASE("conjecture probe small run") {
    const auto report = conjecture_probe(40, 11);
    CHECK(report.pass());
    CHECK(report.counters.count("pairs_le_3pi2"));
}

TEST_CASE("farthest point witness") {
    std::vector<solid::Point3> v = {{1, 0, -1 / std::sqrt(2.0)},
                                    {-1, 0, -1 / std::sqrt(2.0)},
                                    {0, 1, 1 / std::sqrt(2.0)},
                                    {0, -1, 1 / std::sqrt(2.0)}};
    const double e = solid::distance(v[0], v[1]);
    for (auto& p : v) p = (1.0 / e) * p;
    solid::ConvexPolytope tet(v, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}});
    CHECK(farthest_point_witness(tet, 0, 4, 4) == Tristate::holds);

    const auto spike = spike_pyramid(4, 8.0);
    CHECK(farthest_point_witness(spike, 4, 4, 4) == Tristate::holds);

    std::vector<solid::Point3> cv = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                     {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    std::vector<std::vector<int>> cf = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                                        {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
    solid::ConvexPolytope cube(cv, cf);
    CHECK_THROWS_AS(farthest_point_witness(cube, 0, 2, 2), HypothesisNotMet);
}
