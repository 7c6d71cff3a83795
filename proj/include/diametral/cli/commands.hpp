#pragma once

#include <cstdint>
#include <string>

namespace diametral::cli {

struct CommonFlags {
    std::uint64_t seed = 1;
    long trials = 1000;
    int steiner = 4;
    int sampling = 3;
    double tol_abs = 1e-9;
    double tol_diam = 1e-7;
    std::string out;           // report path; empty prints to stdout
    bool json_stdout = false;  // also echo the report JSON to stdout
};

struct GenParams {
    double eps = 0.01;
    double delta = 0.05;
    int n = 4;
    int k = 2;
    int base = 4;
    int ring = 6;
    double height = 10.0;
    double radius = 1.0;
};

// exit codes: 0 pass, 2 violation/failed check, 3 parse or config error
int cmd_analyze(const std::string& geometry_path, const std::string& points_spec,
                const std::string& pair_spec, const CommonFlags& flags);
int cmd_verify(const std::string& suite, const CommonFlags& flags);
int cmd_gen(const std::string& id, const GenParams& params, const std::string& out_path);
int cmd_search(const std::string& setting, long iterations, const CommonFlags& flags);
int cmd_plot(const std::string& input_path, const std::string& report_path,
             const std::string& out_svg);
int run_manifest(const std::string& manifest_path, const CommonFlags& defaults);

}  // namespace diametral::cli
