#include "diametral/cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "diametral/cli/report.hpp"
#include "diametral/cli/svg.hpp"
#include "diametral/lab.hpp"

namespace diametral::cli {

namespace {

using planar::BoundaryPoint2;
using solid::ConvexPolytope;
using solid::SurfacePoint;

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

// point specs: "3" (vertex), "e:2:0.25" (edge), "f:1:w0:w1:..." (face weights)
std::vector<BoundaryPoint2> parse_points_2d(const std::string& spec) {
    std::vector<BoundaryPoint2> out;
    if (spec.empty()) return out;
    for (const auto& token : split(spec, ',')) {
        try {
            const auto fields = split(token, ':');
            if (fields.size() == 1) {
                out.push_back(BoundaryPoint2::at_vertex(std::stoi(fields[0])));
            } else if (fields.size() == 3 && fields[0] == "e") {
                out.push_back(BoundaryPoint2::on_edge(std::stoi(fields[1]), std::stod(fields[2])));
            } else {
                throw BadPointSpec("bad 2d point token '" + token + "'");
            }
        } catch (const std::invalid_argument&) {
            throw BadPointSpec("bad 2d point token '" + token + "'");
        }
    }
    return out;
}

std::vector<SurfacePoint> parse_points_3d(const std::string& spec) {
    std::vector<SurfacePoint> out;
    if (spec.empty()) return out;
    for (const auto& token : split(spec, ',')) {
        try {
            const auto fields = split(token, ':');
            if (fields.size() == 1) {
                out.push_back(SurfacePoint::at_vertex(std::stoi(fields[0])));
            } else if (fields.size() == 3 && fields[0] == "e") {
                out.push_back(SurfacePoint::on_edge(std::stoi(fields[1]), std::stod(fields[2])));
            } else if (fields.size() >= 3 && fields[0] == "f") {
                std::vector<double> w;
                for (std::size_t i = 2; i < fields.size(); ++i) w.push_back(std::stod(fields[i]));
                out.push_back(SurfacePoint::on_face(std::stoi(fields[1]), std::move(w)));
            } else {
                throw BadPointSpec("bad 3d point token '" + token + "'");
            }
        } catch (const std::invalid_argument&) {
            throw BadPointSpec("bad 3d point token '" + token + "'");
        }
    }
    return out;
}

Json config_echo(const CommonFlags& flags) {
    Json j;
    j["seed"] = flags.seed;
    j["trials"] = flags.trials;
    j["steiner"] = flags.steiner;
    j["sampling"] = flags.sampling;
    j["tol_abs"] = flags.tol_abs;
    j["tol_diam"] = flags.tol_diam;
    return j;
}

// artifacts: auxiliary files the command produced (never the report itself,
// so identical runs stay byte-identical regardless of the output path)
void deliver(Json report, const CommonFlags& flags,
             const std::vector<std::string>& artifacts = {}) {
    report["artifacts"] = artifacts;
    const std::string text = report.dump(2) + "\n";
    if (!flags.out.empty()) write_text_atomic(flags.out, text);
    if (flags.out.empty() || flags.json_stdout) std::cout << text;
}

Json surface_verdict_json(const surface::SurfaceVerdict& v, const std::string& name,
             const std::string& anchor) {
    Json j;
    j["name"] = name;
    j["anchor"] = anchor;
    j["angle_sum"] = v.angle_sum;
    j["angle_sum_text"] = format_angle(v.angle_sum);
    j["bound"] = v.bound;
    j["bound_text"] = format_angle(v.bound);
    j["hypothesis_holds"] = v.hypothesis_holds;
    j["conclusion"] = to_string(v.conclusion);
    j["margin"] = v.margin;
    Json pts = Json::array();
    for (const auto& pa : v.points) {
        Json p;
        p["verdict"] = to_string(pa.verdict);
        p["best_distance"] = pa.best_value;
        p["best_graph_bound"] = pa.best_graph;
        p["slack"] = pa.slack;
        pts.push_back(p);
    }
    j["points"] = pts;
    Json d;
    d["value"] = v.diameter.value;
    d["lower_bound"] = v.diameter.lower_bound;
    d["graph_bound"] = v.diameter.graph_bound;
    d["slack"] = v.diameter.slack;
    d["resolution"] = v.diameter.resolution;
    j["intrinsic_diameter_estimate"] = d;
    j["verdict"] = !v.hypothesis_holds            ? "vacuous"
                   : v.conclusion == Tristate::holds ? "pass"
                   : v.conclusion == Tristate::fails ? "fail"
                                                     : "inconclusive";
    return j;
}

int analyze_polygon(const std::string& path, const std::string& points_spec,
                    const CommonFlags& flags) {
    const planar::ConvexPolygon poly = planar::load_polygon_csv(path, flags.tol_abs);
    Json report = report_skeleton("analyze");
    report["config"] = config_echo(flags);
    report["input"] = path;
    Json geom;
    geom["type"] = "polygon";
    geom["vertices"] = poly.size();
    report["geometry"] = geom;
    const DiameterResult diam = planar::polygon_diameter(poly, flags.tol_diam);
    report["diameter"] = to_json(diam);
    Json angles = Json::array();
    for (int i = 0; i < poly.size(); ++i)
        angles.push_back(format_angle(planar::vertex_angle(poly, i)));
    report["vertex_angles"] = angles;

    Json checks = Json::array();
    bool failed = false;
    const auto pts = parse_points_2d(points_spec);
    if (!pts.empty()) {
        Json pj = Json::array();
        for (const auto& bp : pts) {
            Json p;
            p["location"] = bp.kind == BoundaryPoint2::Kind::vertex
                                ? "v:" + std::to_string(bp.index)
                                : "e:" + std::to_string(bp.index) + ":" + std::to_string(bp.t);
            p["angle"] = format_angle(planar::boundary_angle(poly, bp));
            p["diametral"] = planar::is_diametral(poly, bp, flags.tol_diam, flags.tol_abs);
            pj.push_back(p);
        }
        report["points"] = pj;
        const CriterionVerdict v =
            planar::evaluate_criterion(poly, pts, flags.tol_diam, flags.tol_abs);
        const Json cj = to_json(v, "thm2.3",
                                "planar angle-sum bounds pi/3, 5pi/6, 4pi/3");
        checks.push_back(cj);
        failed = failed || cj["verdict"] == "fail";
    }
    report["checks"] = checks;
    deliver(report, flags);
    return failed ? 2 : 0;
}

int analyze_polytope(const std::string& path, const std::string& points_spec,
                     const std::string& pair_spec, const CommonFlags& flags) {
    const ConvexPolytope body = solid::load_off(path, flags.tol_abs);
    Json report = report_skeleton("analyze");
    report["config"] = config_echo(flags);
    report["input"] = path;
    Json geom;
    geom["type"] = "polytope";
    geom["vertices"] = body.vertex_count();
    geom["edges"] = body.edge_count();
    geom["faces"] = body.face_count();
    double defect = 0.0;
    for (int v = 0; v < body.vertex_count(); ++v)
        defect += solid::curvature(body, SurfacePoint::at_vertex(v));
    geom["total_defect"] = format_angle(defect);
    report["geometry"] = geom;
    report["extrinsic_diameter"] = to_json(solid::extrinsic_diameter(body, flags.tol_diam));

    Json checks = Json::array();
    bool failed = false;
    const auto pts = parse_points_3d(points_spec);
    if (!pts.empty()) {
        Json pj = Json::array();
        for (const auto& sp : pts) {
            Json p;
            p["angle"] = format_angle(solid::complete_angle(body, sp));
            p["curvature"] = format_angle(solid::curvature(body, sp) + 0.0);
            pj.push_back(p);
        }
        report["points"] = pj;
        const CriterionVerdict v3 =
            solid::evaluate_criterion_3d(body, pts, flags.tol_diam, flags.tol_abs);
        Json c3 = to_json(v3, "thm3.1", "extrinsic angle-sum bounds 2pi/3, 3pi/2, 9pi/4");
        checks.push_back(c3);
        failed = failed || c3["verdict"] == "fail";
        const surface::SurfaceVerdict v4 = surface::evaluate_criterion_surface(
            body, pts, flags.steiner, flags.sampling, flags.tol_abs);
        Json c4 = surface_verdict_json(v4, "thm4.4",
                                       "intrinsic angle-sum bounds 2pi/3, 5pi/3, 5pi/2");
        checks.push_back(c4);
        failed = failed || c4["verdict"] == "fail";
    }
    if (!pair_spec.empty()) {
        const auto fields = split(pair_spec, ',');
        if (fields.size() != 2) throw BadPointSpec("pair must be 'i,j'");
        const int i = std::stoi(fields[0]);
        const int j = std::stoi(fields[1]);
        const auto est = surface::geodesic_distance(body, SurfacePoint::at_vertex(i),
                                                    SurfacePoint::at_vertex(j), flags.steiner);
        Json g;
        g["pair"] = Json::array({i, j});
        g["graph_bound"] = est.graph_bound;
        g["value"] = est.value;
        g["slack"] = est.slack;
        g["straightened"] = est.path.straightened;
        Json poly = Json::array();
        for (const auto& p : est.path.points) poly.push_back(Json::array({p.x, p.y, p.z}));
        g["polyline"] = poly;
        // develop the crossing strip when the whole path ran through one
        std::vector<int> faces;
        for (const int f : est.path.faces)
            if (faces.empty() || faces.back() != f) faces.push_back(f);
        surface::UnfoldedStrip strip;
        try {
            if (surface::straighten_in_sequence(body, faces, est.path.points.front(),
                                                est.path.points.back(), &strip)) {
                Json sj;
                Json fpolys = Json::array();
                for (const auto& fp : strip.face_polygons) {
                    Json one = Json::array();
                    for (const auto& p : fp) one.push_back(Json::array({p.x, p.y}));
                    fpolys.push_back(one);
                }
                sj["faces"] = fpolys;
                sj["p"] = Json::array({strip.p.x, strip.p.y});
                sj["q"] = Json::array({strip.q.x, strip.q.y});
                Json cr = Json::array();
                for (const auto& c : strip.crossings) cr.push_back(Json::array({c.x, c.y}));
                sj["crossings"] = cr;
                g["strip"] = sj;
            }
        } catch (const Error&) {
            // strip development is best-effort decoration
        }
        report["geodesic"] = g;
    }
    report["checks"] = checks;
    deliver(report, flags);
    return failed ? 2 : 0;
}

}  // namespace

int cmd_analyze(const std::string& geometry_path, const std::string& points_spec,
                const std::string& pair_spec, const CommonFlags& flags) {
    if (ends_with(geometry_path, ".csv"))
        return analyze_polygon(geometry_path, points_spec, flags);
    if (ends_with(geometry_path, ".off"))
        return analyze_polytope(geometry_path, points_spec, pair_spec, flags);
    throw ParseError("unknown geometry format (expected .csv or .off): " + geometry_path);
}

int cmd_verify(const std::string& suite, const CommonFlags& flags) {
    lab::VerifyOptions options;
    options.trials = flags.trials;
    options.seed = flags.seed;
    options.steiner = flags.steiner;
    options.sampling = flags.sampling;
    options.tol_abs = flags.tol_abs;
    options.tol_diam = flags.tol_diam;
    const lab::SearchReport result = lab::verify_theorem(suite, options);

    Json report = report_skeleton("verify");
    report["config"] = config_echo(flags);
    report["suite"] = suite;
    report["report"] = to_json(result, true);
    deliver(report, flags);
    std::cout << "suite " << suite << ": " << (result.pass() ? "pass" : "FAIL") << " ("
              << result.violations.size() << " violations";
    for (const auto& [key, value] : result.counters) std::cout << ", " << key << "=" << value;
    for (const auto& [key, value] : result.stats) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", value);
        std::cout << ", " << key << "=" << buf;
    }
    std::cout << ")\n";
    return result.pass() ? 0 : 2;
}

int cmd_gen(const std::string& id, const GenParams& params, const std::string& out_path) {
    if (out_path.empty()) throw InvalidParams("gen requires --out");
    Json expected;
    expected["generator"] = id;
    std::string body_text;

    if (id == "triangle") {
        const auto t = lab::gen_sharp_triangle(params.eps);
        body_text = lab::polygon_csv(t.poly);
        expected["eps"] = params.eps;
        expected["apex_index"] = t.apex;
        expected["apex_angle"] = format_angle(planar::vertex_angle(t.poly, t.apex));
        expected["apex_diametral"] = false;
    } else if (id == "quad") {
        const auto q = lab::gen_sharp_quad(params.eps);
        body_text = lab::polygon_csv(q.poly);
        expected["eps"] = params.eps;
        expected["points"] = Json::array({q.x, q.y});
        expected["angle_sum"] =
            format_angle(planar::vertex_angle(q.poly, q.x) + planar::vertex_angle(q.poly, q.y));
        expected["unique_diameter"] = Json::array({std::min(q.u, q.v), std::max(q.u, q.v)});
    } else if (id == "pentagon") {
        const auto p = lab::gen_sharp_pentagon(params.delta);
        body_text = lab::polygon_csv(p.poly);
        expected["delta"] = params.delta;
        expected["points"] = Json::array({p.x, p.y, p.z});
        expected["angle_sum"] = format_angle(p.angle_sum);
        expected["unique_diameter"] = Json::array({std::min(p.u, p.v), std::max(p.u, p.v)});
    } else if (id == "remark") {
        const auto r = lab::gen_remark_polygon(params.n, params.k, params.delta);
        body_text = lab::polygon_csv(r.poly);
        expected["n"] = params.n;
        expected["k"] = params.k;
        expected["delta"] = params.delta;
        expected["points"] = r.xs;
        double sum = 0.0;
        for (const int i : r.xs) sum += planar::vertex_angle(r.poly, i);
        expected["angle_sum"] = format_angle(sum);
        expected["floor"] = format_angle((params.n - 2) * kPi);
        expected["unique_diameter"] = Json::array({std::min(r.u, r.v), std::max(r.u, r.v)});
    } else if (id == "spike") {
        const auto p = lab::spike_pyramid(params.base, params.height, params.radius);
        body_text = solid::to_off(p);
        expected["apex_index"] = params.base;
        expected["apex_angle"] =
            format_angle(lab::pyramid_apex_angle(params.base, params.height, params.radius));
    } else if (id == "bipyramid") {
        const auto p = lab::bipyramid(params.base, params.height, params.radius);
        body_text = solid::to_off(p);
        expected["apex_indices"] = Json::array({params.base, params.base + 1});
        expected["apex_angle"] =
            format_angle(lab::bipyramid_apex_angle(params.base, params.height, params.radius));
    } else if (id == "lens") {
        const auto p = lab::symmetric_lens(params.ring, params.height, params.radius);
        body_text = solid::to_off(p);
        expected["apex_indices"] = Json::array({2 * params.ring, 2 * params.ring + 1});
        expected["apex_angle"] =
            format_angle(lab::lens_apex_angle(params.ring, params.height, params.radius));
        expected["centrally_symmetric"] = true;
    } else {
        throw InvalidParams("unknown generator id '" + id + "'");
    }

    write_text_atomic(out_path, body_text);
    write_text_atomic(out_path + ".expected.json", expected.dump(2) + "\n");
    std::cout << "wrote " << out_path << " and " << out_path << ".expected.json\n";
    return 0;
}

int cmd_search(const std::string& setting, long iterations, const CommonFlags& flags) {
    const lab::SearchReport result =
        setting == "conjecture" ? lab::conjecture_probe(iterations, flags.seed)
                                : lab::sharpness_search(setting, iterations, flags.seed);
    Json report = report_skeleton("search");
    report["config"] = config_echo(flags);
    report["setting"] = setting;
    report["report"] = to_json(result, true);
    deliver(report, flags);
    std::cout << "search " << setting << ": " << (result.pass() ? "pass" : "FAIL");
    if (result.best_sharpness.bound != 0.0)
        std::cout << " best angle sum " << format_angle(result.best_sharpness.angle_sum)
                  << " vs bound " << format_angle(result.best_sharpness.bound);
    std::cout << "\n";
    return result.pass() ? 0 : 2;
}

int cmd_plot(const std::string& input_path, const std::string& report_path,
             const std::string& out_svg) {
    if (out_svg.empty()) throw InvalidParams("plot requires --out");
    if (ends_with(input_path, ".csv")) {
        const planar::ConvexPolygon poly = planar::load_polygon_csv(input_path);
        const DiameterResult diam = planar::polygon_diameter(poly);
        std::vector<std::pair<planar::Point2, std::string>> labels;
        if (!report_path.empty()) {
            std::ifstream in(report_path);
            if (!in) throw ParseError("cannot open " + report_path);
            const Json report = Json::parse(in, nullptr, true, true);
            if (report.contains("points"))
                for (const auto& p : report["points"]) {
                    if (!p.contains("location")) continue;
                    const auto bp = parse_points_2d(
                        std::string(p["location"]).substr(2)).front();
                    labels.push_back({planar::boundary_point(poly, bp),
                                      std::string(p["angle"])});
                }
        } else {
            for (int i = 0; i < poly.size(); ++i)
                labels.push_back(
                    {poly.vertex(i), format_angle(planar::vertex_angle(poly, i))});
        }
        write_text_atomic(out_svg, polygon_svg(poly, diam, labels));
        std::cout << "wrote " << out_svg << "\n";
        return 0;
    }
    if (ends_with(input_path, ".json")) {
        std::ifstream in(input_path);
        if (!in) throw ParseError("cannot open " + input_path);
        const Json report = Json::parse(in, nullptr, true, true);
        if (!report.contains("geodesic") || !report["geodesic"].contains("strip"))
            throw Unplottable("report carries no unfolded strip");
        const Json& sj = report["geodesic"]["strip"];
        surface::UnfoldedStrip strip;
        for (const auto& fp : sj["faces"]) {
            std::vector<planar::Point2> poly;
            for (const auto& p : fp) poly.push_back({p[0], p[1]});
            strip.face_polygons.push_back(std::move(poly));
        }
        strip.p = {sj["p"][0], sj["p"][1]};
        strip.q = {sj["q"][0], sj["q"][1]};
        for (const auto& c : sj["crossings"]) strip.crossings.push_back({c[0], c[1]});
        write_text_atomic(out_svg, strip_svg(strip));
        std::cout << "wrote " << out_svg << "\n";
        return 0;
    }
    throw Unplottable("cannot plot '" + input_path + "' (need .csv or a report .json)");
}

int run_manifest(const std::string& manifest_path, const CommonFlags& defaults) {
    std::ifstream in(manifest_path);
    if (!in) throw ParseError("cannot open " + manifest_path);
    Json manifest;
    try {
        manifest = Json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("manifest: ") + e.what());
    }
    if (!manifest.contains("jobs") || !manifest["jobs"].is_array())
        throw ParseError("manifest needs a 'jobs' array");
    int worst = 0;
    for (const auto& job : manifest["jobs"]) {
        CommonFlags flags = defaults;
        if (job.contains("out")) flags.out = job["out"];
        if (job.contains("seed")) flags.seed = job["seed"];
        if (job.contains("trials")) flags.trials = job["trials"];
        if (job.contains("steiner")) flags.steiner = job["steiner"];
        if (job.contains("sampling")) flags.sampling = job["sampling"];
        const std::string command = job.value("command", "");
        int code = 3;
        if (command == "analyze") {
            std::string geometry = job.value("geometry", "");
            if (job.contains("csv_text")) {
                // inline polygon: materialize next to the manifest outputs
                geometry = manifest_path + ".inline" +
                           std::to_string(&job - &*manifest["jobs"].begin()) + ".csv";
                write_text_atomic(geometry, job["csv_text"]);
            }
            if (geometry.empty()) throw ParseError("analyze job needs geometry or csv_text");
            code = cmd_analyze(geometry, job.value("points", ""), job.value("pair", ""),
                               flags);
        } else if (command == "verify") {
            code = cmd_verify(job.at("suite"), flags);
        } else if (command == "search") {
            code = cmd_search(job.at("setting"), flags.trials, flags);
        } else {
            throw ParseError("manifest job with unknown command '" + command + "'");
        }
        worst = std::max(worst, code);
    }
    return worst;
}

}  // namespace diametral::cli
