#pragma once

#include <string>

#include "json.hpp"

#include "diametral/lab.hpp"

namespace diametral::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "diametral";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

// 12 significant digits plus a small-pi-multiple rendering when one matches
// within 1e-9, e.g. "2.61799387799 (5π/6)".
std::string format_angle(double radians);

Json report_skeleton(const std::string& command);

Json to_json(const DiameterResult& d);
Json to_json(const CriterionVerdict& v, const std::string& name, const std::string& anchor);
Json to_json(const lab::SearchReport& report, bool include_timing);

// write via a temporary file and rename, so readers never see partial output
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace diametral::cli
