#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "diametral/lab.hpp"
#include "diametral/rng.hpp"

namespace diametral::lab {

namespace {

using planar::BoundaryPoint2;
using solid::ConvexPolytope;
using solid::SurfacePoint;

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// One feasible evaluation of a construction family: the angle sum at E plus
// the serialized witness. Infeasible parameters return nullopt.
struct Probe {
    double angle_sum;
    std::string witness;
};

using Family = std::function<std::optional<Probe>(double)>;

struct ClimbSpec {
    double lo, hi;
    bool log_scale = false;
};

// Local descent on one parameter: shrink steps around the best feasible
// point, minimizing the angle sum.
void hill_climb(const Family& family, const ClimbSpec& spec, double start, long budget,
                double& best_sum, std::string& best_witness) {
    auto to_internal = [&](double p) { return spec.log_scale ? std::log(p) : p; };
    auto from_internal = [&](double q) { return spec.log_scale ? std::exp(q) : q; };
    const double ilo = to_internal(spec.lo), ihi = to_internal(spec.hi);
    double cur = std::clamp(to_internal(start), ilo, ihi);
    auto eval = [&](double q) -> std::optional<Probe> {
        if (q < ilo || q > ihi) return std::nullopt;
        try {
            return family(from_internal(q));
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    std::optional<Probe> cur_probe = eval(cur);
    long used = 1;
    double step = (ihi - ilo) / 4.0;
    while (step > (ihi - ilo) * 1e-13 && used < budget) {
        bool moved = false;
        for (const double dir : {-1.0, 1.0}) {
            const double cand = cur + dir * step;
            const auto probe = eval(cand);
            ++used;
            if (probe && (!cur_probe || probe->angle_sum < cur_probe->angle_sum)) {
                cur = cand;
                cur_probe = probe;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    if (cur_probe && cur_probe->angle_sum < best_sum) {
        best_sum = cur_probe->angle_sum;
        best_witness = cur_probe->witness;
    }
}

bool planar_all_nondiametral(const planar::ConvexPolygon& poly, const std::vector<int>& e) {
    for (const int i : e)
        if (planar::is_diametral(poly, BoundaryPoint2::at_vertex(i))) return false;
    return true;
}

double planar_sum(const planar::ConvexPolygon& poly, const std::vector<int>& e) {
    double s = 0.0;
    for (const int i : e) s += planar::vertex_angle(poly, i);
    return s;
}

bool solid_all_nondiametral(const ConvexPolytope& body, const std::vector<int>& e) {
    const DiameterResult d = solid::extrinsic_diameter(body);
    for (const int i : e)
        if (d.has_endpoint(i)) return false;
    return true;
}

double solid_sum(const ConvexPolytope& body, const std::vector<int>& e) {
    double s = 0.0;
    for (const int i : e) s += solid::complete_angle(body, SurfacePoint::at_vertex(i));
    return s;
}

// definite intrinsic non-diametrality for every point of E
bool surface_all_definite_fail(const ConvexPolytope& body, const std::vector<int>& e,
                               int steiner, int sampling) {
    std::vector<SurfacePoint> pts;
    for (const int i : e) pts.push_back(SurfacePoint::at_vertex(i));
    const auto v = surface::evaluate_criterion_surface(body, pts, steiner, sampling);
    for (const auto& pa : v.points)
        if (pa.verdict != Tristate::fails) return false;
    return true;
}

struct SettingPlan {
    double bound;
    std::vector<std::pair<Family, ClimbSpec>> families;
    bool requirement_within_005 = false;  // planar settings must reach the bound
};

SettingPlan make_plan(const std::string& setting, Rng& rng) {
    SettingPlan plan;
    if (setting == "planar-1") {
        plan.bound = kPi / 3.0;
        plan.requirement_within_005 = true;
        plan.families.push_back({[](double eps) -> std::optional<Probe> {
                                     const SharpTriangle t = gen_sharp_triangle(eps);
                                     if (!planar_all_nondiametral(t.poly, {t.apex}))
                                         return std::nullopt;
                                     return Probe{planar_sum(t.poly, {t.apex}),
                                                  polygon_csv(t.poly)};
                                 },
                                 {1e-8, 0.29, true}});
        return plan;
    }
    if (setting == "planar-2") {
        plan.bound = 5.0 * kPi / 6.0;
        plan.requirement_within_005 = true;
        plan.families.push_back({[](double eps) -> std::optional<Probe> {
                                     const SharpQuad q = gen_sharp_quad(eps);
                                     if (!planar_all_nondiametral(q.poly, {q.x, q.y}))
                                         return std::nullopt;
                                     return Probe{planar_sum(q.poly, {q.x, q.y}),
                                                  polygon_csv(q.poly)};
                                 },
                                 {1e-6, 0.5, true}});
        return plan;
    }
    if (setting == "planar-3") {
        plan.bound = 4.0 * kPi / 3.0;
        plan.requirement_within_005 = true;
        plan.families.push_back({[](double delta) -> std::optional<Probe> {
                                     const SharpPentagon p = gen_sharp_pentagon(delta);
                                     if (!planar_all_nondiametral(p.poly, {p.x, p.y, p.z}))
                                         return std::nullopt;
                                     return Probe{p.angle_sum, polygon_csv(p.poly)};
                                 },
                                 {1e-5, 0.3, true}});
        return plan;
    }
    if (setting == "solid-1") {
        plan.bound = 2.0 * kPi / 3.0;
        for (const int base : {3, 4, 6, 8, 12}) {
            plan.families.push_back({[base](double h) -> std::optional<Probe> {
                                         const ConvexPolytope p = spike_pyramid(base, h);
                                         if (!solid_all_nondiametral(p, {base}))
                                             return std::nullopt;
                                         return Probe{solid_sum(p, {base}), solid::to_off(p)};
                                     },
                                     {0.02, 60.0, true}});
        }
        return plan;
    }
    if (setting == "solid-2") {
        plan.bound = 3.0 * kPi / 2.0;
        for (const int base : {3, 4, 6, 8}) {
            plan.families.push_back(
                {[base](double h) -> std::optional<Probe> {
                     const ConvexPolytope p = bipyramid(base, h);
                     if (!solid_all_nondiametral(p, {base, base + 1})) return std::nullopt;
                     return Probe{solid_sum(p, {base, base + 1}), solid::to_off(p)};
                 },
                 {0.02, 60.0, true}});
        }
        return plan;
    }
    if (setting == "solid-3") {
        plan.bound = 9.0 * kPi / 4.0;
        // random hulls with their three sharpest non-diametral vertices
        for (int restart = 0; restart < 6; ++restart) {
            const std::uint64_t seed = rng.bits();
            plan.families.push_back(
                {[seed](double size) -> std::optional<Probe> {
                     const int n = 6 + static_cast<int>(size);
                     const ConvexPolytope p = random_polytope(n, seed);
                     std::vector<std::pair<double, int>> sharp;
                     const DiameterResult d = solid::extrinsic_diameter(p);
                     for (int v = 0; v < p.vertex_count(); ++v)
                         if (!d.has_endpoint(v))
                             sharp.push_back(
                                 {solid::complete_angle(p, SurfacePoint::at_vertex(v)), v});
                     if (sharp.size() < 3) return std::nullopt;
                     std::sort(sharp.begin(), sharp.end());
                     const std::vector<int> e = {sharp[0].second, sharp[1].second,
                                                 sharp[2].second};
                     return Probe{solid_sum(p, e), solid::to_off(p)};
                 },
                 {4.0, 40.0, false}});
        }
        return plan;
    }
    if (setting == "surface-1") {
        plan.bound = 2.0 * kPi / 3.0;
        for (const int base : {4, 6}) {
            plan.families.push_back(
                {[base](double h) -> std::optional<Probe> {
                     const ConvexPolytope p = spike_pyramid(base, h);
                     if (!surface_all_definite_fail(p, {base}, 3, 3)) return std::nullopt;
                     return Probe{solid_sum(p, {base}), solid::to_off(p)};
                 },
                 {0.02, 3.0, true}});
        }
        return plan;
    }
    if (setting == "surface-2") {
        plan.bound = 5.0 * kPi / 3.0;
        for (const int base : {4, 6}) {
            plan.families.push_back(
                {[base](double h) -> std::optional<Probe> {
                     const ConvexPolytope p = bipyramid(base, h);
                     if (!surface_all_definite_fail(p, {base, base + 1}, 3, 3))
                         return std::nullopt;
                     return Probe{solid_sum(p, {base, base + 1}), solid::to_off(p)};
                 },
                 {0.02, 3.0, true}});
        }
        return plan;
    }
    if (setting == "surface-3") {
        plan.bound = 5.0 * kPi / 2.0;
        for (int restart = 0; restart < 4; ++restart) {
            const std::uint64_t seed = rng.bits();
            plan.families.push_back(
                {[seed](double size) -> std::optional<Probe> {
                     const int n = 6 + static_cast<int>(size);
                     const ConvexPolytope p = random_polytope(n, seed);
                     std::vector<std::pair<double, int>> sharp;
                     for (int v = 0; v < p.vertex_count(); ++v)
                         sharp.push_back(
                             {solid::complete_angle(p, SurfacePoint::at_vertex(v)), v});
                     std::sort(sharp.begin(), sharp.end());
                     const std::vector<int> e = {sharp[0].second, sharp[1].second,
                                                 sharp[2].second};
                     if (!surface_all_definite_fail(p, e, 2, 2)) return std::nullopt;
                     return Probe{solid_sum(p, e), solid::to_off(p)};
                 },
                 {4.0, 20.0, false}});
        }
        return plan;
    }
    throw InvalidSetting("unknown setting '" + setting + "'");
}

}  // namespace

SearchReport sharpness_search(const std::string& setting, long iterations,
                              std::uint64_t seed) {
    const double t0 = now_ms();
    Rng rng(seed);
    const SettingPlan plan = make_plan(setting, rng);

    SearchReport report;
    report.family = setting;
    report.trials = iterations;
    double best_sum = std::numeric_limits<double>::infinity();
    std::string best_witness;
    const long budget =
        std::max<long>(8, iterations / std::max<std::size_t>(1, plan.families.size() * 2));
    for (const auto& [family, spec] : plan.families) {
        for (int restart = 0; restart < 2; ++restart) {
            const double start =
                spec.log_scale
                    ? std::exp(rng.uniform(std::log(spec.lo), std::log(spec.hi)))
                    : rng.uniform(spec.lo, spec.hi);
            hill_climb(family, spec, start, budget, best_sum, best_witness);
        }
    }
    if (std::isfinite(best_sum)) {
        report.best_sharpness.angle_sum = best_sum;
        report.best_sharpness.bound = plan.bound;
        report.best_sharpness.gap = best_sum - plan.bound;
        report.best_sharpness.witness_body = best_witness;
        // a feasible sum at or below the bound would contradict a proven
        // statement: that is an implementation bug, not a discovery
        if (best_sum < plan.bound - 1e-6)
            report.violations.push_back(
                {"non-diametral configuration below the bound", best_witness, {}});
        if (plan.requirement_within_005 && report.best_sharpness.gap > 0.05)
            report.violations.push_back(
                {"search failed to approach the bound within 0.05", best_witness, {}});
    } else {
        report.violations.push_back({"no feasible configuration found", "", {}});
    }
    report.counters["families"] = static_cast<long>(plan.families.size());
    report.runtime_ms = now_ms() - t0;
    return report;
}

CaseClass classify_conjecture_case(double angle_sum, bool has_diametral_member,
                                   double tol_abs) {
    if (has_diametral_member) return CaseClass::consistent;
    if (angle_sum <= 3.0 * kPi / 2.0 + tol_abs) return CaseClass::bug;
    if (angle_sum <= 5.0 * kPi / 3.0 + tol_abs) return CaseClass::refutation_hit;
    return CaseClass::consistent;
}

SearchReport conjecture_probe(long trials, std::uint64_t seed) {
    const double t0 = now_ms();
    SearchReport report;
    report.family = "conjecture";
    report.trials = trials;
    for (long t = 0; t < trials; ++t) {
        Rng rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
        const ConvexPolytope body = [&]() -> ConvexPolytope {
            switch (t % 4) {
                case 0: {
                    const int base = 3 + static_cast<int>(rng.uniform_int(0, 5));
                    const double target =
                        rng.uniform(3.0 * kPi / 4.0 - 0.35, 5.0 * kPi / 6.0 + 0.12);
                    return bipyramid(base, bipyramid_height_for_angle(base, target));
                }
                case 1: {
                    const int ring = 2 * (2 + static_cast<int>(rng.uniform_int(0, 2)));
                    const double target =
                        rng.uniform(3.0 * kPi / 4.0 - 0.35, 5.0 * kPi / 6.0 + 0.12);
                    return symmetric_lens(ring, lens_height_for_angle(ring, target));
                }
                case 2: {
                    const int base = 3 + static_cast<int>(rng.uniform_int(0, 5));
                    return spike_pyramid(base,
                                         std::exp(rng.uniform(std::log(0.5), std::log(20.0))));
                }
                default:
                    return random_polytope(8 + static_cast<int>(rng.uniform_int(0, 24)),
                                           trial_seed(seed, 0xD0000 + static_cast<std::uint64_t>(t)));
            }
        }();
        const DiameterResult diam = solid::extrinsic_diameter(body);
        std::vector<double> theta(static_cast<std::size_t>(body.vertex_count()));
        for (int v = 0; v < body.vertex_count(); ++v)
            theta[static_cast<std::size_t>(v)] =
                solid::complete_angle(body, SurfacePoint::at_vertex(v));
        for (int i = 0; i < body.vertex_count(); ++i)
            for (int j = i + 1; j < body.vertex_count(); ++j) {
                const double sum =
                    theta[static_cast<std::size_t>(i)] + theta[static_cast<std::size_t>(j)];
                if (sum > 5.0 * kPi / 3.0 + 1e-9) {
                    ++report.counters["pairs_above_window"];
                    continue;
                }
                const bool member = diam.has_endpoint(i) || diam.has_endpoint(j);
                if (sum <= 3.0 * kPi / 2.0 + 1e-9) {
                    ++report.counters["pairs_le_3pi2"];
                    if (member) ++report.counters["pairs_le_3pi2_diametral"];
                } else {
                    ++report.counters["pairs_in_window"];
                    if (member) ++report.counters["pairs_in_window_diametral"];
                }
                switch (classify_conjecture_case(sum, member)) {
                    case CaseClass::consistent:
                        break;
                    case CaseClass::bug:
                        report.violations.push_back(
                            {"pair below 3pi/2 lacks a diametral member", solid::to_off(body),
                             {i, j}});
                        break;
                    case CaseClass::refutation_hit:
                        ++report.counters["hits"];
                        report.observations.push_back(
                            {"window pair without a diametral member, sum " +
                                 std::to_string(sum),
                             solid::to_off(body),
                             {i, j}});
                        break;
                }
            }
    }
    report.runtime_ms = now_ms() - t0;
    return report;
}

Tristate farthest_point_witness(const ConvexPolytope& S, int y_vertex, int sampling,
                                int steiner_per_edge, double tol_abs) {
    if (solid::complete_angle(S, SurfacePoint::at_vertex(y_vertex)) > kPi + tol_abs)
        throw HypothesisNotMet("complete angle exceeds pi");
    surface::GeodesicGraph graph(S, steiner_per_edge);
    const double tol = tol_abs * std::max(1.0, S.bounding_radius());

    std::vector<SurfacePoint> candidates;
    for (int v = 0; v < S.vertex_count(); ++v)
        if (v != y_vertex) candidates.push_back(SurfacePoint::at_vertex(v));
    for (auto& sp : surface::face_samples(S, 1)) candidates.push_back(std::move(sp));

    bool all_definite_miss = true;
    for (const auto& x : candidates) {
        const auto far = surface::farthest_from(graph, x, sampling);
        const auto xy = surface::geodesic_distance(graph, x, SurfacePoint::at_vertex(y_vertex));
        const double combined = far.refined.slack + xy.slack;
        if (xy.value >= far.refined.value - combined - tol) return Tristate::holds;
        if (xy.graph_bound >= far.refined.value - far.refined.slack - tol)
            all_definite_miss = false;
    }
    return all_definite_miss ? Tristate::fails : Tristate::inconclusive;
}

}  // namespace diametral::lab
