#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "diametral/cli/commands.hpp"
#include "diametral/common.hpp"

int main(int argc, char** argv) {
    CLI::App app{"diametral point criteria on convex polygons and polytopes"};
    app.require_subcommand(1);

    diametral::cli::CommonFlags flags;
    auto add_common = [&flags](CLI::App* cmd) {
        cmd->add_option("--seed", flags.seed, "random seed");
        cmd->add_option("--trials", flags.trials, "trial count");
        cmd->add_option("--steiner", flags.steiner, "steiner points per edge");
        cmd->add_option("--sampling", flags.sampling, "face sampling density");
        cmd->add_option("--tol-abs", flags.tol_abs, "absolute tolerance");
        cmd->add_option("--tol-diam", flags.tol_diam, "relative diameter tolerance");
        cmd->add_option("--out", flags.out, "output report path");
        cmd->add_flag("--json", flags.json_stdout, "echo the report JSON to stdout");
    };

    std::string geometry, points, pair, manifest;
    auto* analyze = app.add_subcommand("analyze", "diameters, angles and criterion verdicts");
    analyze->add_option("geometry", geometry, "polygon .csv or polytope .off");
    analyze->add_option("--points", points, "comma-separated point specs (v | e:i:t | f:i:w...)");
    analyze->add_option("--pair", pair, "vertex pair 'i,j' for a geodesic query");
    analyze->add_option("--manifest", manifest, "run a JSON manifest of jobs");
    add_common(analyze);

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a seeded verification suite");
    verify->add_option("suite", suite, "suite id")->required();
    add_common(verify);

    std::string gen_id, gen_out;
    diametral::cli::GenParams gen_params;
    auto* gen = app.add_subcommand("gen", "write a construction plus its expected properties");
    gen->add_option("id", gen_id, "triangle|quad|pentagon|remark|spike|bipyramid|lens")
        ->required();
    gen->add_option("--eps", gen_params.eps, "sharpness parameter");
    gen->add_option("--delta", gen_params.delta, "placement parameter");
    gen->add_option("--n", gen_params.n, "point count");
    gen->add_option("--k", gen_params.k, "points on the first side");
    gen->add_option("--base", gen_params.base, "base vertex count");
    gen->add_option("--ring", gen_params.ring, "ring vertex count");
    gen->add_option("--height", gen_params.height, "apex height");
    gen->add_option("--radius", gen_params.radius, "base circumradius");
    gen->add_option("--out", gen_out, "output path")->required();

    std::string setting;
    long iterations = 200;
    auto* search = app.add_subcommand("search", "sharpness search or the conjecture probe");
    search->add_option("setting", setting,
                       "planar-1..3 | solid-1..3 | surface-1..3 | conjecture")
        ->required();
    search->add_option("--iterations", iterations, "search budget");
    add_common(search);

    std::string plot_in, plot_report, plot_out;
    auto* plot = app.add_subcommand("plot", "SVG of a polygon or an unfolded strip");
    plot->add_option("input", plot_in, "polygon .csv or report .json")->required();
    plot->add_option("--report", plot_report, "analyze report with labeled points");
    plot->add_option("--out", plot_out, "output .svg path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            if (!manifest.empty()) return diametral::cli::run_manifest(manifest, flags);
            if (geometry.empty()) throw diametral::ParseError("analyze needs a geometry file");
            return diametral::cli::cmd_analyze(geometry, points, pair, flags);
        }
        if (verify->parsed()) return diametral::cli::cmd_verify(suite, flags);
        if (gen->parsed()) return diametral::cli::cmd_gen(gen_id, gen_params, gen_out);
        if (search->parsed()) return diametral::cli::cmd_search(setting, iterations, flags);
        if (plot->parsed()) return diametral::cli::cmd_plot(plot_in, plot_report, plot_out);
    } catch (const diametral::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
