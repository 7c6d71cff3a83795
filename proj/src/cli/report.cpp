#include "diametral/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

namespace diametral::cli {

std::string format_angle(double radians) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", radians);
    std::string out = buf;
    for (int q = 1; q <= 24; ++q) {
        const double scaled = radians * q / kPi;
        const long p = std::lround(scaled);
        if (p <= 0 || p > 200) continue;
        if (std::abs(radians - static_cast<double>(p) * kPi / q) > 1e-9) continue;
        const long g = std::gcd(p, static_cast<long>(q));
        const long pr = p / g, qr = q / g;
        out += " (";
        if (pr != 1) out += std::to_string(pr);
        out += "\xCF\x80";  // pi
        if (qr != 1) out += "/" + std::to_string(qr);
        out += ")";
        break;
    }
    return out;
}

Json report_skeleton(const std::string& command) {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

Json to_json(const DiameterResult& d) {
    Json j;
    j["length"] = d.length;
    j["tolerance"] = d.tolerance;
    Json pairs = Json::array();
    for (const auto& [a, b] : d.pairs) pairs.push_back(Json::array({a, b}));
    j["pairs"] = pairs;
    return j;
}

Json to_json(const CriterionVerdict& v, const std::string& name, const std::string& anchor) {
    Json j;
    j["name"] = name;
    j["anchor"] = anchor;
    j["angle_sum"] = v.angle_sum;
    j["angle_sum_text"] = format_angle(v.angle_sum);
    j["bound"] = v.bound;
    j["bound_text"] = format_angle(v.bound);
    j["hypothesis_holds"] = v.hypothesis_holds;
    j["conclusion"] = to_string(v.conclusion);
    j["diametral_members"] = v.diametral_members;
    j["margin"] = v.margin;
    j["verdict"] = !v.hypothesis_holds ? "vacuous"
                   : v.conclusion_holds() ? "pass"
                                          : "fail";
    return j;
}

Json to_json(const lab::SearchReport& report, bool include_timing) {
    Json j;
    j["family"] = report.family;
    j["trials"] = report.trials;
    j["pass"] = report.pass();
    Json violations = Json::array();
    for (const auto& v : report.violations) {
        Json item;
        item["description"] = v.description;
        item["points"] = v.points;
        item["body"] = v.body;
        violations.push_back(item);
    }
    j["violations"] = violations;
    Json observations = Json::array();
    for (const auto& v : report.observations) {
        Json item;
        item["description"] = v.description;
        item["points"] = v.points;
        item["body"] = v.body;
        observations.push_back(item);
    }
    j["observations"] = observations;
    if (std::isfinite(report.best_sharpness.angle_sum) &&
        report.best_sharpness.angle_sum != 0.0) {
        Json s;
        s["angle_sum"] = report.best_sharpness.angle_sum;
        s["angle_sum_text"] = format_angle(report.best_sharpness.angle_sum);
        s["bound"] = report.best_sharpness.bound;
        s["bound_text"] = format_angle(report.best_sharpness.bound);
        s["gap"] = report.best_sharpness.gap;
        s["witness_body"] = report.best_sharpness.witness_body;
        j["best_sharpness"] = s;
    }
    j["stats"] = report.stats;
    j["counters"] = report.counters;
    if (include_timing) j["runtime_ms"] = report.runtime_ms;
    return j;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot rename " + tmp + " to " + path);
}

}  // namespace diametral::cli
