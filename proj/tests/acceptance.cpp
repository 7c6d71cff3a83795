// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Every tolerance is pinned here, not tuned at runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "diametral/cli/report.hpp"
#include "diametral/lab.hpp"
#include "diametral/rng.hpp"
#include "diametral/surface.hpp"

using namespace diametral;
using planar::BoundaryPoint2;
using solid::SurfacePoint;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

// criterion 1: planar criterion over 10^4 random polygons, zero violations,
// within two minutes
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    lab::VerifyOptions opt;
    opt.trials = 10000;
    opt.seed = 20260810;
    opt.set_samples = 100;
    const auto r = lab::verify_theorem("thm2.3", opt);
    const double elapsed = seconds_since(t0);
    report(1,
           r.pass() && elapsed <= 120.0,
           fmt("violations=%.0f sets=%.0f runtime=%.1fs (limit 120s)",
               static_cast<double>(r.violations.size()),
               static_cast<double>(r.counters.at("sets_evaluated")), elapsed));
}

// criterion 2: separated pairs see every diameter under at least 5pi/6, and
// the sharp quadrilateral witnesses the bound within 5e-3
void criterion_2() {
    lab::VerifyOptions opt;
    opt.trials = 1000;
    opt.seed = 77001;
    const auto r = lab::verify_theorem("lemma2.1", opt);
    const double min_angle = r.stats.at("min_sees_angle");
    const bool lower_ok = r.pass() && min_angle >= 5.0 * kPi / 6.0 - 1e-9;

    const auto q = lab::gen_sharp_quad(1e-3);
    const auto sep = planar::separated_pair_property(q.poly, 50, 4242);
    const bool sharp_ok =
        sep.pass() && std::abs(sep.min_angle - 5.0 * kPi / 6.0) <= 5e-3;
    report(2, lower_ok && sharp_ok,
           fmt("min sees-angle=%.9f sharp-quad min=%.9f", min_angle, sep.min_angle));
}

// criterion 3: the explicit constructions reproduce their identities
void criterion_3() {
    bool ok = true;
    std::string detail;

    for (const double eps : {1e-3, 1e-2, 0.1}) {
        const auto t = lab::gen_sharp_triangle(eps);
        ok = ok && std::abs(planar::vertex_angle(t.poly, t.apex) - (kPi / 3.0 + eps)) <= 1e-9;
        ok = ok && !planar::is_diametral(t.poly, BoundaryPoint2::at_vertex(t.apex));
    }

    for (const double eps : {1e-3, 1e-2, 0.1}) {
        const auto q = lab::gen_sharp_quad(eps);
        const double sum =
            planar::vertex_angle(q.poly, q.x) + planar::vertex_angle(q.poly, q.y);
        ok = ok && std::abs(sum - (5.0 * kPi / 6.0 + eps)) <= 1e-6;
        const auto d = planar::polygon_diameter(q.poly);
        ok = ok && d.pairs.size() == 1 && d.contains(q.u, q.v);
    }

    double prev = 1e9;
    for (const double delta : {0.1, 0.05, 0.01}) {
        const auto p = lab::gen_sharp_pentagon(delta);
        const double gap = p.angle_sum - 4.0 * kPi / 3.0;
        ok = ok && gap > 0.0 && gap < prev;
        prev = gap;
    }

    for (int n = 4; n <= 8; ++n) {
        double prev_gap = 1e9;
        for (const double delta : {0.2, 0.1, 0.05}) {
            const auto r = lab::gen_remark_polygon(n, n / 2, delta);
            double sum = 0.0;
            for (const int i : r.xs) sum += planar::vertex_angle(r.poly, i);
            const double gap = sum - (n - 2) * kPi;
            ok = ok && gap > 0.0 && gap < prev_gap;
            prev_gap = gap;
            for (const int i : r.xs)
                ok = ok && !planar::is_diametral(r.poly, BoundaryPoint2::at_vertex(i));
        }
    }
    report(3, ok, "triangle/quad/pentagon/remark identities");
}

// criterion 4: rotating calipers equals the quadratic oracle on 10^4 polygons
void criterion_4() {
    lab::VerifyOptions opt;
    opt.trials = 10000;
    opt.seed = 90101;
    const auto r = lab::verify_theorem("calipers", opt);
    report(4, r.pass(), fmt("violations=%.0f", static_cast<double>(r.violations.size())));
}

// criterion 5: extrinsic criterion over 10^3 polytopes with families spanning
// the bounds; angular defect closes to 4pi on every instance
void criterion_5() {
    lab::VerifyOptions opt;
    opt.trials = 1000;
    opt.seed = 51515;
    opt.set_samples = 60;
    const auto r = lab::verify_theorem("thm3.1", opt);
    report(5, r.pass(),
           fmt("violations=%.0f hypothesis-true sets=%.0f",
               static_cast<double>(r.violations.size()),
               static_cast<double>(r.counters.at("hypothesis_true"))));
}

// criterion 6: cross-section angle bound and the tetrahedron unfolding sum
void criterion_6() {
    lab::VerifyOptions opt;
    opt.trials = 1000;
    opt.seed = 61616;
    const auto rc = lab::verify_theorem("crosssection", opt);
    const auto ru = lab::verify_theorem("unfolding", opt);
    const bool enough = rc.counters.at("measured") >= 800 && ru.counters.at("unfolded") >= 900;
    report(6, rc.pass() && ru.pass() && enough,
           fmt("sections measured=%.0f unfolds=%.0f",
               static_cast<double>(rc.counters.at("measured")),
               static_cast<double>(ru.counters.at("unfolded"))));
}

// criterion 7: cube ground truth sqrt(5) at m in {0,2,8}; graph bound
// non-increasing across m in {2,4,8,16}
void criterion_7() {
    std::vector<solid::Point3> v = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                    {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
    std::vector<std::vector<int>> f = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
                                       {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
    const solid::ConvexPolytope cube(v, f);
    bool ok = true;
    double worst = 0.0;
    for (const int m : {0, 2, 8}) {
        const auto est = surface::geodesic_distance(cube, SurfacePoint::at_vertex(0),
                                                    SurfacePoint::at_vertex(6), m);
        worst = std::max(worst, std::abs(est.value - std::sqrt(5.0)));
        ok = ok && std::abs(est.value - std::sqrt(5.0)) <= 1e-6;
    }
    double prev = 1e100;
    for (const int m : {2, 4, 8, 16}) {
        const auto est = surface::geodesic_distance(cube, SurfacePoint::at_vertex(0),
                                                    SurfacePoint::at_vertex(6), m);
        ok = ok && est.graph_bound <= prev + 1e-12;
        prev = est.graph_bound;
    }
    report(7, ok, fmt("max |value - sqrt5| = %.2e", worst));
}

// criterion 8: intrinsic criterion over 200 seeded surfaces at m=8, sampling
// 5: no definite fails, inconclusive rate at most 20%, within ten minutes
void criterion_8() {
    const auto t0 = std::chrono::steady_clock::now();
    lab::VerifyOptions opt;
    opt.trials = 200;
    opt.seed = 81818;
    opt.steiner = 8;
    opt.sampling = 5;
    const auto r = lab::verify_theorem("thm4.4", opt);
    const double elapsed = seconds_since(t0);
    const double rate = r.stats.at("inconclusive_rate");
    report(8, r.pass() && rate <= 0.20 && elapsed <= 600.0,
           fmt("violations=%.0f inconclusive_rate=%.3f runtime=%.1fs (limit 600s)",
               static_cast<double>(r.violations.size()), rate, elapsed));
}

// criterion 9: diameter couplings hold on every tested body; a 200-point
// sphere-like hull approaches the equality case
void criterion_9() {
    lab::VerifyOptions opt;
    opt.trials = 60;
    opt.seed = 91919;
    opt.steiner = 4;
    opt.sampling = 3;
    const auto r = lab::verify_theorem("makuha", opt);

    const auto sphere = lab::sphere_hull(200, 321321);
    const auto rep = surface::makuha_check(sphere, 8, 3);
    const double rel_slack = rep.slack / (kPi / 2.0 * rep.extrinsic);
    const bool sphere_ok = rep.pass && rep.ratio_intrinsic >= 0.9 &&
                           rep.ratio_intrinsic <= 1.0 + rel_slack;
    report(9, r.pass() && sphere_ok,
           fmt("suite violations=%.0f sphere ratio=%.4f (slack %.4f)",
               static_cast<double>(r.violations.size()), rep.ratio_intrinsic, rel_slack));
}

// criterion 10: the probe never sees a pair at or below 3pi/2 without a
// diametral member; window pairs are logged, not failed
void criterion_10() {
    const auto r = lab::conjecture_probe(1000, 101010);
    const long hits = r.counters.count("hits") ? r.counters.at("hits") : 0;
    report(10, r.pass(),
           fmt("bugs=%.0f window hits=%.0f pairs<=3pi/2=%.0f",
               static_cast<double>(r.violations.size()), static_cast<double>(hits),
               static_cast<double>(r.counters.count("pairs_le_3pi2")
                                       ? r.counters.at("pairs_le_3pi2")
                                       : 0)));
}

// criterion 11: byte-identical reports for identical seeds (timing excluded)
void criterion_11() {
    bool ok = true;
    {
        lab::VerifyOptions opt;
        opt.trials = 300;
        opt.seed = 111111;
        const auto a = cli::to_json(lab::verify_theorem("thm2.3", opt), false).dump();
        const auto b = cli::to_json(lab::verify_theorem("thm2.3", opt), false).dump();
        ok = ok && a == b;
    }
    {
        lab::VerifyOptions opt;
        opt.trials = 10;
        opt.seed = 121212;
        opt.steiner = 3;
        const auto a = cli::to_json(lab::verify_theorem("thm4.4", opt), false).dump();
        const auto b = cli::to_json(lab::verify_theorem("thm4.4", opt), false).dump();
        ok = ok && a == b;
    }
    {
        const auto a = cli::to_json(lab::sharpness_search("planar-2", 200, 5), false).dump();
        const auto b = cli::to_json(lab::sharpness_search("planar-2", 200, 5), false).dump();
        ok = ok && a == b;
    }
    {
        const auto a = cli::to_json(lab::conjecture_probe(100, 7), false).dump();
        const auto b = cli::to_json(lab::conjecture_probe(100, 7), false).dump();
        ok = ok && a == b;
    }
    report(11, ok, "verify/search re-runs byte-identical without timing");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%s: %d of 11 criteria failed\n", failures == 0 ? "SUCCESS" : "FAILURE",
                failures);
    return failures;
}
