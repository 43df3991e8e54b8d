// htk: batch front end for the hypertoric toolkit.
//
// Subcommands:
//   analyze  exact sequences, Gale dual, circuits, smoothness, fixed points
//   rings    multiplication tables of the three ring flavors, oracle-checked
//   hikita   the three-ideal fixed-locus equality with certificates
//   verify   numeric identity suite (theta, automorphy, moment maps)
//   plot     SVG figures of the real and elliptic arrangements
//
// Exit codes: 0 success/PASS, 1 verification failure, 2 parse error,
// 3 degenerate configuration, 4 oracle mismatch, 5 hikita FAIL,
// 6 non-generic stability covector, 7 unsupported dimension.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "htk/cli.hpp"

namespace {

struct CommonArgs {
    std::string spec_path;
    std::string out_path;
    bool as_json = false;
    std::int64_t seed = -1;
    htk::Int radius = 0;
    htk::Int degree = -1;
    int samples = 0;
    double step = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_out = true) {
    cmd->add_option("--spec", args.spec_path, "problem file (JSON)")->required();
    if (with_out) cmd->add_option("--out", args.out_path, "write the report to this file");
    cmd->add_flag("--json", args.as_json, "emit the machine-readable JSON report");
    cmd->add_option("--seed", args.seed, "override the sampling seed");
    cmd->add_option("--radius", args.radius, "override the coinvariant search radius");
    cmd->add_option("--degree", args.degree, "override the generator degree bound");
    cmd->add_option("--samples", args.samples, "override the numeric sample count");
    cmd->add_option("--step", args.step, "override the finite-difference step");
}

htk::ProblemSpec load(const CommonArgs& args) {
    htk::ProblemSpec spec = htk::load_problem(args.spec_path);
    if (args.seed >= 0) spec.options.seed = std::uint64_t(args.seed);
    if (args.radius > 0) spec.options.radius = args.radius;
    if (args.degree >= 0) spec.options.degree = args.degree;
    if (args.samples > 0) spec.options.samples = args.samples;
    if (args.step > 0) spec.options.step = args.step;
    return spec;
}

void emit(const htk::json& report, const CommonArgs& args) {
    std::string text = args.as_json ? report.dump(2) + "\n" : htk::render_text(report);
    if (!args.out_path.empty()) {
        std::ofstream out(args.out_path);
        if (!out) throw std::runtime_error("cannot write " + args.out_path);
        out << text;
    }
    std::cout << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypertoric toolkit"};
    app.require_subcommand(1);

    CommonArgs analyze_args, rings_args, hikita_args, verify_args, plot_args;
    CLI::App* analyze = app.add_subcommand("analyze", "combinatorial and arrangement analysis");
    add_common(analyze, analyze_args);
    CLI::App* rings = app.add_subcommand("rings", "ring multiplication tables with oracle check");
    add_common(rings, rings_args);
    CLI::App* hikita = app.add_subcommand("hikita", "fixed-locus ideal equality verification");
    add_common(hikita, hikita_args);
    CLI::App* verify = app.add_subcommand("verify", "numeric identity suite");
    add_common(verify, verify_args);
    CLI::App* plot = app.add_subcommand("plot", "arrangement figures (SVG)");
    add_common(plot, plot_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            emit(htk::cmd_analyze(load(analyze_args)), analyze_args);
            return 0;
        }
        if (rings->parsed()) {
            emit(htk::cmd_rings(load(rings_args)), rings_args);
            return 0;
        }
        if (hikita->parsed()) {
            htk::json report = htk::cmd_hikita(load(hikita_args));
            emit(report, hikita_args);
            return report.at("pass").get<bool>() ? 0 : 5;
        }
        if (verify->parsed()) {
            htk::json report = htk::cmd_verify(load(verify_args));
            emit(report, verify_args);
            return report.at("all_passed").get<bool>() ? 0 : 1;
        }
        if (plot->parsed()) {
            std::string prefix = plot_args.out_path.empty() ? "arrangement" : plot_args.out_path;
            CommonArgs args = plot_args;
            args.out_path.clear(); // --out names the figure prefix, not a report file
            emit(htk::cmd_plot(load(plot_args), prefix), args);
            return 0;
        }
    } catch (const htk::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const htk::degenerate_config& e) {
        std::cerr << "degenerate configuration: " << e.what() << "\n";
        return 3;
    } catch (const htk::oracle_mismatch& e) {
        std::cerr << "oracle mismatch (implementation bug): " << e.what() << "\n";
        return 4;
    } catch (const htk::non_generic_alpha& e) {
        std::cerr << "non-generic stability covector: " << e.what() << "\n";
        return 6;
    } catch (const htk::unsupported_dimension& e) {
        std::cerr << "unsupported dimension: " << e.what() << "\n";
        return 7;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
