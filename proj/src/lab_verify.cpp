#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>

#include "diametral/lab.hpp"
#include "diametral/rng.hpp"

namespace diametral::lab {

namespace {

using planar::BoundaryPoint2;
using planar::ConvexPolygon;
using solid::ConvexPolytope;
using solid::Point3;
using solid::SurfacePoint;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// all vertex sets of size 1..3 when few, otherwise a seeded sample
std::vector<std::vector<int>> vertex_sets(int n, long cap, Rng& rng) {
    const long total = n + static_cast<long>(n) * (n - 1) / 2 +
                       static_cast<long>(n) * (n - 1) * (n - 2) / 6;
    std::vector<std::vector<int>> sets;
    if (total <= cap) {
        for (int i = 0; i < n; ++i) sets.push_back({i});
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) sets.push_back({i, j});
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) sets.push_back({i, j, k});
        return sets;
    }
    for (long s = 0; s < cap; ++s) {
        const int size = 1 + static_cast<int>(s % 3);
        std::vector<int> set;
        while (static_cast<int>(set.size()) < size) {
            const int v = static_cast<int>(rng.uniform_int(0, n - 1));
            if (std::find(set.begin(), set.end(), v) == set.end()) set.push_back(v);
        }
        std::sort(set.begin(), set.end());
        sets.push_back(std::move(set));
    }
    return sets;
}

std::string describe_set(const std::vector<int>& set) {
    std::string out = "E={";
    for (std::size_t i = 0; i < set.size(); ++i)
        out += (i ? "," : "") + std::to_string(set[i]);
    return out + "}";
}

// ---- planar suites ---------------------------------------------------------

SearchReport run_thm23(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "thm2.3";
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        const int n = 3 + static_cast<int>(rng.uniform_int(0, 61));
        const ConvexPolygon poly =
            random_convex_polygon(n, trial_seed(opt.seed, 0x10000 + static_cast<std::uint64_t>(t)));
        const DiameterResult diam = planar::polygon_diameter(poly, opt.tol_diam);
        std::vector<double> angles(static_cast<std::size_t>(poly.size()));
        for (int i = 0; i < poly.size(); ++i)
            angles[static_cast<std::size_t>(i)] = planar::vertex_angle(poly, i);
        static const double bounds[3] = {kPi / 3.0, 5.0 * kPi / 6.0, 4.0 * kPi / 3.0};

        for (const auto& set : vertex_sets(poly.size(), opt.set_samples, rng)) {
            ++report.counters["sets_evaluated"];
            double sum = 0.0;
            for (const int i : set) sum += angles[static_cast<std::size_t>(i)];
            if (sum > bounds[set.size() - 1] + opt.tol_abs) continue;
            ++report.counters["hypothesis_true"];
            bool any = false;
            for (const int i : set) any = any || diam.has_endpoint(i);
            // cross-check through the full criterion evaluation
            std::vector<BoundaryPoint2> e;
            for (const int i : set) e.push_back(BoundaryPoint2::at_vertex(i));
            const CriterionVerdict v =
                planar::evaluate_criterion(poly, e, opt.tol_diam, opt.tol_abs);
            if (v.conclusion_holds() != any)
                report.violations.push_back({"criterion path disagrees with the harness, " +
                                                 describe_set(set),
                                             polygon_csv(poly), set});
            if (!any)
                report.violations.push_back(
                    {"hypothesis holds but no point is diametral, " + describe_set(set),
                     polygon_csv(poly), set});
        }
    }
    report.trials = opt.trials;
    return report;
}

SearchReport run_lemma21(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "lemma2.1";
    double min_angle = std::numeric_limits<double>::quiet_NaN();
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        const int n = 3 + static_cast<int>(rng.uniform_int(0, 37));
        const ConvexPolygon poly =
            random_convex_polygon(n, trial_seed(opt.seed, 0x20000 + static_cast<std::uint64_t>(t)));
        const auto sep = planar::separated_pair_property(
            poly, 50, trial_seed(opt.seed, 0x30000 + static_cast<std::uint64_t>(t)),
            opt.tol_diam, opt.tol_abs);
        report.counters["pairs_tested"] += sep.pairs_tested;
        if (!(min_angle <= sep.min_angle)) min_angle = sep.min_angle;
        for (const auto& v : sep.violations)
            report.violations.push_back(
                {"separated pair sees the diameter under " + std::to_string(v.angle),
                 polygon_csv(poly),
                 {v.diameter_pair.first, v.diameter_pair.second}});
    }
    report.stats["min_sees_angle"] = min_angle;
    report.trials = opt.trials;
    return report;
}

SearchReport run_lemma22(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "lemma2.2";
    for (long t = 0; t < opt.trials; ++t) {
        const ConvexPolygon poly =
            random_convex_polygon(4, trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        if (poly.size() != 4) {
            ++report.counters["degenerate_skipped"];
            continue;
        }
        for (int r = 0; r < 4; ++r) {
            std::vector<planar::Point2> rotated;
            for (int i = 0; i < 4; ++i) rotated.push_back(poly.vertex((i + r) % 4));
            const ConvexPolygon quad(rotated);
            if (planar::vertex_angle(quad, 0) + planar::vertex_angle(quad, 1) > kPi) continue;
            ++report.counters["tested"];
            if (!planar::quad_lemma_check(quad, opt.tol_diam, opt.tol_abs))
                report.violations.push_back(
                    {"neither of the first two vertices is diametral", polygon_csv(quad), {0, 1}});
        }
    }
    report.trials = opt.trials;
    return report;
}

SearchReport run_cor24(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "cor2.4";
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        std::optional<ConvexPolygon> poly;
        if (t % 2 == 0) {
            poly = random_symmetric_polygon(
                2 + static_cast<int>(rng.uniform_int(0, 10)),
                trial_seed(opt.seed, 0x40000 + static_cast<std::uint64_t>(t)));
        } else {
            // rhombus sweep, hitting the 5pi/12 boundary exactly every so often
            const double acute =
                (t % 10 == 1) ? 5.0 * kPi / 12.0 : rng.uniform(0.05, 5.0 * kPi / 12.0);
            const double b = std::tan(acute / 2.0);
            poly = ConvexPolygon({{1, 0}, {0, b}, {-1, 0}, {0, -b}});
        }
        for (int i = 0; i < poly->size(); ++i) {
            if (planar::vertex_angle(*poly, i) > 5.0 * kPi / 12.0 + opt.tol_abs) {
                ++report.counters["skipped"];
                continue;
            }
            ++report.counters["checked"];
            if (!planar::symmetric_diameter_check(*poly, i, opt.tol_diam, opt.tol_abs))
                report.violations.push_back(
                    {"sharp vertex does not pair with its antipode", polygon_csv(*poly), {i}});
        }
    }
    report.trials = opt.trials;
    return report;
}

SearchReport run_calipers(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "calipers";
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        const int n = 3 + static_cast<int>(rng.uniform_int(0, 61));
        const ConvexPolygon poly =
            random_convex_polygon(n, trial_seed(opt.seed, 0x50000 + static_cast<std::uint64_t>(t)));
        const DiameterResult fast = planar::polygon_diameter(poly, opt.tol_diam);
        // independent quadratic oracle
        DiameterResult slow;
        slow.tolerance = opt.tol_diam;
        for (int i = 0; i < poly.size(); ++i)
            for (int j = i + 1; j < poly.size(); ++j)
                slow.length = std::max(slow.length,
                                       planar::distance(poly.vertex(i), poly.vertex(j)));
        for (int i = 0; i < poly.size(); ++i)
            for (int j = i + 1; j < poly.size(); ++j)
                if (planar::distance(poly.vertex(i), poly.vertex(j)) >=
                    slow.length * (1.0 - opt.tol_diam))
                    slow.pairs.emplace_back(i, j);
        if (std::abs(fast.length - slow.length) > 1e-12 * std::max(1.0, slow.length) ||
            fast.pairs != slow.pairs)
            report.violations.push_back(
                {"rotating calipers disagrees with the quadratic oracle", polygon_csv(poly), {}});
    }
    report.trials = opt.trials;
    return report;
}

// ---- 3D body stream --------------------------------------------------------

struct SolidCase {
    ConvexPolytope body;
    std::vector<std::vector<int>> interesting;  // sharp vertex sets
    bool symmetric = false;
};

SolidCase make_solid_case(std::uint64_t seed, long flavor, bool small) {
    Rng rng(seed);
    switch (flavor % 5) {
        case 0: {
            const int n = small ? 8 + static_cast<int>(rng.uniform_int(0, 16))
                                : 8 + static_cast<int>(rng.uniform_int(0, 42));
            return {random_polytope(n, splitmix64(seed)), {}, false};
        }
        case 1: {
            const int base = 3 + static_cast<int>(rng.uniform_int(0, 5));
            const double h = std::exp(rng.uniform(std::log(0.2), std::log(20.0)));
            SolidCase c{spike_pyramid(base, h), {}, false};
            c.interesting.push_back({base});  // the apex
            return c;
        }
        case 2: {
            const int base = 3 + static_cast<int>(rng.uniform_int(0, 5));
            const double h = std::exp(rng.uniform(std::log(0.05), std::log(20.0)));
            SolidCase c{bipyramid(base, h), {}, base % 2 == 0};
            c.interesting.push_back({base});
            c.interesting.push_back({base, base + 1});
            c.interesting.push_back({0, 1, 2});  // base vertices, sharp when oblate
            return c;
        }
        case 3: {
            const int ring = 2 * (2 + static_cast<int>(rng.uniform_int(0, 2)));
            const double h = rng.uniform(0.35, 8.0);
            SolidCase c{symmetric_lens(ring, h), {}, true};
            c.interesting.push_back({2 * ring});
            c.interesting.push_back({2 * ring, 2 * ring + 1});
            return c;
        }
        default: {
            // bipyramid tuned to straddle the pair and single-point bounds
            const int base = 4 + static_cast<int>(rng.uniform_int(0, 2));
            const double target = (flavor % 2 == 0)
                                      ? rng.uniform(2.0 * kPi / 3.0 - 0.25, 2.0 * kPi / 3.0 + 0.25)
                                      : rng.uniform(3.0 * kPi / 4.0 - 0.25, 3.0 * kPi / 4.0 + 0.25);
            const double h = bipyramid_height_for_angle(base, target);
            SolidCase c{bipyramid(base, h), {}, base % 2 == 0};
            c.interesting.push_back({base});
            c.interesting.push_back({base, base + 1});
            return c;
        }
    }
}

SearchReport run_thm31(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "thm3.1";
    for (long t = 0; t < opt.trials; ++t) {
        const SolidCase c = make_solid_case(trial_seed(opt.seed, static_cast<std::uint64_t>(t)),
                                            t, false);
        Rng rng(trial_seed(opt.seed, 0x60000 + static_cast<std::uint64_t>(t)));
        const ConvexPolytope& body = c.body;

        double defect = 0.0;
        std::vector<double> theta(static_cast<std::size_t>(body.vertex_count()));
        for (int v = 0; v < body.vertex_count(); ++v) {
            theta[static_cast<std::size_t>(v)] =
                solid::complete_angle(body, SurfacePoint::at_vertex(v));
            defect += 2.0 * kPi - theta[static_cast<std::size_t>(v)];
        }
        if (std::abs(defect - 4.0 * kPi) > body.vertex_count() * opt.tol_abs)
            report.violations.push_back(
                {"total angular defect differs from 4pi", solid::to_off(body), {}});

        auto sets = c.interesting;
        for (const auto& s : vertex_sets(body.vertex_count(), opt.set_samples / 2, rng))
            sets.push_back(s);
        for (const auto& set : sets) {
            ++report.counters["sets_evaluated"];
            std::vector<SurfacePoint> e;
            for (const int i : set) e.push_back(SurfacePoint::at_vertex(i));
            const CriterionVerdict v =
                solid::evaluate_criterion_3d(body, e, opt.tol_diam, opt.tol_abs);
            if (!v.hypothesis_holds) continue;
            ++report.counters["hypothesis_true"];
            if (!v.conclusion_holds())
                report.violations.push_back(
                    {"hypothesis holds but no point is diametral, " + describe_set(set),
                     solid::to_off(body), set});
            // second clause: two sharp points must realize the diameter
            if (set.size() == 2 && theta[static_cast<std::size_t>(set[0])] <= 2.0 * kPi / 3.0 &&
                theta[static_cast<std::size_t>(set[1])] <= 2.0 * kPi / 3.0) {
                ++report.counters["pair_clause_tested"];
                if (!solid::two_point_diameter_check_3d(body, SurfacePoint::at_vertex(set[0]),
                                                        SurfacePoint::at_vertex(set[1]),
                                                        opt.tol_diam, opt.tol_abs))
                    report.violations.push_back(
                        {"two sharp points do not realize the diameter, " + describe_set(set),
                         solid::to_off(body), set});
            }
        }
    }
    report.trials = opt.trials;
    return report;
}

SearchReport run_thm32(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "thm3.2";
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        ConvexPolytope body = [&] {
            if (t % 2 == 0) {
                const int base = 2 * (2 + static_cast<int>(rng.uniform_int(0, 2)));
                const double target = rng.uniform(0.25, 5.0 * kPi / 6.0 + 0.4);
                return bipyramid(base, bipyramid_height_for_angle(base, target));
            }
            const int ring = 2 * (2 + static_cast<int>(rng.uniform_int(0, 2)));
            return symmetric_lens(ring, rng.uniform(0.45, 10.0));
        }();
        if (!solid::is_centrally_symmetric(body, opt.tol_abs)) {
            report.violations.push_back(
                {"generator produced an asymmetric body", solid::to_off(body), {}});
            continue;
        }
        for (int v = 0; v < body.vertex_count(); ++v) {
            if (solid::complete_angle(body, SurfacePoint::at_vertex(v)) >
                5.0 * kPi / 6.0 + opt.tol_abs) {
                ++report.counters["skipped"];
                continue;
            }
            ++report.counters["checked"];
            if (!solid::symmetric_diameter_check_3d(body, v, opt.tol_diam, opt.tol_abs))
                report.violations.push_back(
                    {"sharp vertex does not pair with its antipode", solid::to_off(body), {v}});
        }
    }
    report.trials = opt.trials;
    return report;
}

SearchReport run_crosssection(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "crosssection";
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        const SolidCase c = make_solid_case(trial_seed(opt.seed, 0x70000 + static_cast<std::uint64_t>(t)),
                                            t % 2 == 0 ? 0 : 1 + (t % 4), true);
        const ConvexPolytope& body = c.body;
        Point3 centroid{0, 0, 0};
        for (const auto& v : body.vertices())
            centroid = centroid + (1.0 / body.vertex_count()) * v;
        auto interior = [&] {
            const int v = static_cast<int>(rng.uniform_int(0, body.vertex_count() - 1));
            return centroid + rng.uniform(0.1, 0.75) * (body.vertex(v) - centroid);
        };
        // draw planes until one yields a measurable section at the vertex
        bool measured = false;
        for (int attempt = 0; attempt < 8 && !measured; ++attempt) {
            const int x = static_cast<int>(rng.uniform_int(0, body.vertex_count() - 1));
            try {
                const auto cs =
                    solid::cross_section(body, body.vertex(x), interior(), interior());
                const int idx = cs.find_vertex(body.vertex(x),
                                               1e-7 * std::max(1.0, body.bounding_radius()));
                if (idx < 0) {
                    ++report.counters["vertex_missed"];
                    continue;
                }
                measured = true;
                ++report.counters["measured"];
                const double section_angle = planar::vertex_angle(cs.polygon, idx);
                const double theta = solid::complete_angle(body, SurfacePoint::at_vertex(x));
                if (section_angle > theta / 2.0 + 1e-9)
                    report.violations.push_back(
                        {"section angle exceeds half the complete angle", solid::to_off(body),
                         {x}});
            } catch (const EmptySection&) {
                ++report.counters["empty_section"];
            } catch (const DegenerateInput&) {
                ++report.counters["degenerate_plane"];
            }
        }
    }
    report.trials = opt.trials;
    return report;
}

SearchReport run_unfolding(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "unfolding";
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        auto pt = [&] { return Point3{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}; };
        const Point3 x = pt(), u = pt(), y = pt(), v = pt();
        try {
            const auto [q, qp] = solid::unfold_tetrahedron(x, u, y, v, opt.tol_abs);
            ++report.counters["unfolded"];
            double total = 0.0;
            for (const double a : q.corner_angles()) total += a;
            for (const double a : qp.corner_angles()) total += a;
            if (std::abs(total - 4.0 * kPi) > 1e-9)
                report.violations.push_back({"eight unfolded angles do not sum to 4pi", "", {}});
            const double scale = std::max({1.0, distance(x, u), distance(y, v), distance(u, v)});
            const bool lengths_ok =
                std::abs(planar::distance(q.x, q.u) - distance(x, u)) <= 1e-9 * scale &&
                std::abs(planar::distance(q.x, q.v) - distance(x, v)) <= 1e-9 * scale &&
                std::abs(planar::distance(q.y, q.u) - distance(y, u)) <= 1e-9 * scale &&
                std::abs(planar::distance(q.y, q.v) - distance(y, v)) <= 1e-9 * scale &&
                std::abs(planar::distance(qp.x, qp.y) - distance(x, y)) <= 1e-9 * scale &&
                std::abs(planar::distance(qp.u, qp.v) - distance(u, v)) >= 0.0;
            if (!lengths_ok)
                report.violations.push_back({"unfolding does not preserve side lengths", "", {}});
        } catch (const DegeneratePoints&) {
            ++report.counters["degenerate_skipped"];
        }
    }
    report.trials = opt.trials;
    return report;
}

// ---- surface suites --------------------------------------------------------

SearchReport run_thm44(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "thm4.4";
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        const SolidCase c = [&]() -> SolidCase {
            switch (t % 4) {
                case 0:
                    return make_solid_case(trial_seed(opt.seed, 0x80000 + static_cast<std::uint64_t>(t)),
                                           0, true);
                case 1:
                    return make_solid_case(trial_seed(opt.seed, 0x80000 + static_cast<std::uint64_t>(t)),
                                           1, true);
                case 2: {
                    const int base = 3 + static_cast<int>(rng.uniform_int(0, 3));
                    const double target =
                        rng.uniform(5.0 * kPi / 6.0 - 0.3, 5.0 * kPi / 6.0 + 0.3);
                    SolidCase sc{bipyramid(base, bipyramid_height_for_angle(base, target)),
                                 {},
                                 base % 2 == 0};
                    sc.interesting.push_back({base});
                    sc.interesting.push_back({base, base + 1});
                    return sc;
                }
                default: {
                    const int ring = 4 + 2 * static_cast<int>(rng.uniform_int(0, 1));
                    const double target =
                        rng.uniform(5.0 * kPi / 6.0 - 0.3, 5.0 * kPi / 6.0 + 0.3);
                    SolidCase sc{symmetric_lens(ring, lens_height_for_angle(ring, target)),
                                 {},
                                 true};
                    sc.interesting.push_back({2 * ring});
                    sc.interesting.push_back({2 * ring, 2 * ring + 1});
                    return sc;
                }
            }
        }();
        const ConvexPolytope& body = c.body;
        auto sets = c.interesting;
        {
            std::vector<int> random_set;
            const int size = 1 + static_cast<int>(rng.uniform_int(0, 2));
            while (static_cast<int>(random_set.size()) < size) {
                const int v = static_cast<int>(rng.uniform_int(0, body.vertex_count() - 1));
                if (std::find(random_set.begin(), random_set.end(), v) == random_set.end())
                    random_set.push_back(v);
            }
            sets.push_back(random_set);
        }
        for (const auto& set : sets) {
            std::vector<SurfacePoint> e;
            for (const int i : set) e.push_back(SurfacePoint::at_vertex(i));
            surface::SurfaceVerdict v =
                surface::evaluate_criterion_surface(body, e, opt.steiner, opt.sampling, opt.tol_abs);
            ++report.counters["sets_evaluated"];
            if (!v.hypothesis_holds) continue;
            ++report.counters["hypothesis_true"];
            if (v.conclusion != Tristate::holds) {
                // one resolution escalation before judging
                ++report.counters["escalations"];
                v = surface::evaluate_criterion_surface(body, e, 2 * opt.steiner + 1,
                                                        opt.sampling + 2, opt.tol_abs);
            }
            switch (v.conclusion) {
                case Tristate::holds:
                    ++report.counters["holds"];
                    break;
                case Tristate::inconclusive:
                    ++report.counters["inconclusive"];
                    break;
                case Tristate::fails:
                    report.violations.push_back(
                        {"definite fail under a satisfied hypothesis, " + describe_set(set),
                         solid::to_off(body), set});
                    break;
            }
        }
    }
    const double hyp = static_cast<double>(report.counters["hypothesis_true"]);
    report.stats["inconclusive_rate"] =
        hyp > 0 ? static_cast<double>(report.counters["inconclusive"]) / hyp : 0.0;
    report.trials = opt.trials;
    return report;
}

SearchReport run_cor45(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "cor4.5";
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        const double target = rng.uniform(0.3, 5.0 * kPi / 6.0 - 1e-6);
        ConvexPolytope body = [&] {
            if (t % 2 == 0) {
                const int base = 4 + 2 * static_cast<int>(rng.uniform_int(0, 1));
                return bipyramid(base, bipyramid_height_for_angle(base, target));
            }
            const int ring = 4 + 2 * static_cast<int>(rng.uniform_int(0, 1));
            return symmetric_lens(ring, lens_height_for_angle(ring, target));
        }();
        const int apex = body.vertex_count() - 2;
        Tristate verdict = surface::symmetric_surface_check(body, apex, opt.steiner,
                                                            opt.sampling, opt.tol_abs);
        if (verdict != Tristate::holds)
            verdict = surface::symmetric_surface_check(body, apex, 2 * opt.steiner + 1,
                                                       opt.sampling + 2, opt.tol_abs);
        switch (verdict) {
            case Tristate::holds:
                ++report.counters["holds"];
                break;
            case Tristate::inconclusive:
                ++report.counters["inconclusive"];
                break;
            case Tristate::fails:
                report.violations.push_back(
                    {"antipodal pair misses the intrinsic diameter", solid::to_off(body), {apex}});
                break;
        }
    }
    report.trials = opt.trials;
    return report;
}

SearchReport run_lemma41(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "lemma4.1";
    double min_margin = std::numeric_limits<double>::quiet_NaN();
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        const SolidCase c = make_solid_case(trial_seed(opt.seed, 0x90000 + static_cast<std::uint64_t>(t)),
                                            t, true);
        const ConvexPolytope& body = c.body;
        std::vector<int> corners;
        while (corners.size() < 3) {
            const int v = static_cast<int>(rng.uniform_int(0, body.vertex_count() - 1));
            if (std::find(corners.begin(), corners.end(), v) == corners.end())
                corners.push_back(v);
        }
        try {
            const auto rep = surface::comparison_angle_check(
                body, SurfacePoint::at_vertex(corners[0]), SurfacePoint::at_vertex(corners[1]),
                SurfacePoint::at_vertex(corners[2]), opt.steiner);
            ++report.counters["measured"];
            for (const double m : rep.margins)
                if (!(min_margin <= m)) min_margin = m;
            if (!rep.pass)
                report.violations.push_back(
                    {"corner angle below the comparison angle", solid::to_off(body), corners});
        } catch (const DegenerateTriangle&) {
            ++report.counters["degenerate_skipped"];
        }
    }
    report.stats["min_margin"] = min_margin;
    report.trials = opt.trials;
    return report;
}

SearchReport run_lemma42(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "lemma4.2";
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        const SolidCase c = make_solid_case(trial_seed(opt.seed, 0xA0000 + static_cast<std::uint64_t>(t)),
                                            t, true);
        const ConvexPolytope& body = c.body;
        std::vector<int> corners;
        while (corners.size() < 3) {
            const int v = static_cast<int>(rng.uniform_int(0, body.vertex_count() - 1));
            if (std::find(corners.begin(), corners.end(), v) == corners.end())
                corners.push_back(v);
        }
        try {
            const auto rep = surface::comparison_distance_check(
                body, SurfacePoint::at_vertex(corners[0]), SurfacePoint::at_vertex(corners[1]),
                SurfacePoint::at_vertex(corners[2]), rng.uniform(0.2, 0.8), opt.steiner);
            ++report.counters["measured"];
            if (!rep.pass)
                report.violations.push_back(
                    {"distance below the comparison distance", solid::to_off(body), corners});
        } catch (const DegenerateTriangle&) {
            ++report.counters["degenerate_skipped"];
        }
    }
    report.trials = opt.trials;
    return report;
}

SearchReport run_makuha(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "makuha";
    double max_ratio = 0.0;
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        const ConvexPolytope body = [&] {
            if (t % 3 == 0)
                return make_solid_case(
                           trial_seed(opt.seed, 0xB0000 + static_cast<std::uint64_t>(t)),
                           1 + (t % 4), true)
                    .body;
            return random_polytope(12 + static_cast<int>(rng.uniform_int(0, 28)),
                                   trial_seed(opt.seed, 0xB0000 + static_cast<std::uint64_t>(t)));
        }();
        const auto rep = surface::makuha_check(body, opt.steiner, opt.sampling);
        max_ratio = std::max(max_ratio, rep.ratio_intrinsic);
        if (!rep.pass)
            report.violations.push_back(
                {"diameter coupling violated, ratio " + std::to_string(rep.ratio_intrinsic),
                 solid::to_off(body), {}});
    }
    report.stats["max_ratio_intrinsic"] = max_ratio;
    report.trials = opt.trials;
    return report;
}

SearchReport run_farthest(const VerifyOptions& opt) {
    SearchReport report;
    report.family = "farthest";
    for (long t = 0; t < opt.trials; ++t) {
        Rng rng(trial_seed(opt.seed, static_cast<std::uint64_t>(t)));
        const ConvexPolytope body = [&]() -> ConvexPolytope {
            if (t % 2 == 0) {
                const int base = 3 + static_cast<int>(rng.uniform_int(0, 3));
                return spike_pyramid(base, std::exp(rng.uniform(std::log(0.8), std::log(12.0))));
            }
            return random_polytope(4 + static_cast<int>(rng.uniform_int(0, 4)),
                                   trial_seed(opt.seed, 0xC0000 + static_cast<std::uint64_t>(t)));
        }();
        // sharpest vertex
        int y = -1;
        double best = kPi + opt.tol_abs;
        for (int v = 0; v < body.vertex_count(); ++v) {
            const double theta = solid::complete_angle(body, SurfacePoint::at_vertex(v));
            if (theta <= best) {
                best = theta;
                y = v;
            }
        }
        if (y < 0) {
            ++report.counters["skipped"];
            continue;
        }
        switch (farthest_point_witness(body, y, opt.sampling, opt.steiner, opt.tol_abs)) {
            case Tristate::holds:
                ++report.counters["holds"];
                break;
            case Tristate::inconclusive:
                ++report.counters["inconclusive"];
                break;
            case Tristate::fails:
                report.violations.push_back(
                    {"no sampled source has the sharp vertex as its farthest point",
                     solid::to_off(body),
                     {y}});
                break;
        }
    }
    report.trials = opt.trials;
    return report;
}

}  // namespace

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> suites = {
        "thm2.3",  "lemma2.1", "lemma2.2", "cor2.4",  "calipers",
        "thm3.1",  "thm3.2",   "crosssection", "unfolding",
        "thm4.4",  "cor4.5",   "lemma4.1", "lemma4.2", "makuha", "farthest"};
    return suites;
}

SearchReport verify_theorem(const std::string& suite, const VerifyOptions& options) {
    Stopwatch watch;
    SearchReport report;
    if (suite == "thm2.3") report = run_thm23(options);
    else if (suite == "lemma2.1") report = run_lemma21(options);
    else if (suite == "lemma2.2") report = run_lemma22(options);
    else if (suite == "cor2.4") report = run_cor24(options);
    else if (suite == "calipers") report = run_calipers(options);
    else if (suite == "thm3.1") report = run_thm31(options);
    else if (suite == "thm3.2") report = run_thm32(options);
    else if (suite == "crosssection") report = run_crosssection(options);
    else if (suite == "unfolding") report = run_unfolding(options);
    else if (suite == "thm4.4") report = run_thm44(options);
    else if (suite == "cor4.5") report = run_cor45(options);
    else if (suite == "lemma4.1") report = run_lemma41(options);
    else if (suite == "lemma4.2") report = run_lemma42(options);
    else if (suite == "makuha") report = run_makuha(options);
    else if (suite == "farthest") report = run_farthest(options);
    else throw UnknownSuite("unknown suite '" + suite + "'");
    report.runtime_ms = watch.ms();
    return report;
}

}  // namespace diametral::lab
