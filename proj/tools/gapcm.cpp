// gapcm: command-line front end for gap-constrained one-sided crossing minimization.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gapcm/bench.hpp"
#include "gapcm/drawing.hpp"
#include "gapcm/exact.hpp"
#include "gapcm/generator.hpp"
#include "gapcm/instance_io.hpp"

namespace {

enum ExitCode : int { kOk = 0, kInputError = 2, kTimeout = 3, kInternal = 4 };

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        gapcm::write_text_file(out, text);
    }
}

std::optional<gapcm::OracleMode> mode_of(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return gapcm::bench::parse_oracle_mode(text);
}

std::optional<int> k_of(const CLI::Option* option, int k) { return option->count() > 0 ? std::optional<int>(k) : std::nullopt; }

}  // namespace

int main(int argc, char** argv) {
    using namespace gapcm;

    CLI::App app{"Gap-constrained one-sided crossing minimization"};
    app.require_subcommand(1);

    std::string f_dm_text = "0.2";
    std::string deg_avg_text = "3";
    GenParams gen;
    std::string out;
    std::string instance_path;
    std::string permutation_path;
    std::string algo;
    std::string mode;
    int k = 2;
    double budget_s = 300.0;
    int jobs = 1;
    std::string config_path;
    std::string plots_dir;
    bool omit_timing = false;
    bool full_scale = false;

    auto* generate_cmd = app.add_subcommand("generate", "Write a seeded random instance");
    generate_cmd->add_option("--n", gen.n, "Nodes per layer")->capture_default_str();
    generate_cmd->add_option("--f-dm", f_dm_text, "Dummy fraction, decimal or p/q")->capture_default_str();
    generate_cmd->add_option("--deg-avg", deg_avg_text, "Average real degree")->capture_default_str();
    generate_cmd->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
    generate_cmd->add_option("--out", out, "Output instance JSON (default stdout)");

    auto* solve_cmd = app.add_subcommand("solve", "Solve one instance, write the permutation and print a CSV record");
    solve_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
    solve_cmd->add_option("--algo", algo, "Algorithm name")->required();
    auto* solve_k = solve_cmd->add_option("--k", k, "Gap budget for k-gap variants");
    solve_cmd->add_option("--mode", mode, "Oracle mode: unrestricted, sidegap, kgap");
    solve_cmd->add_option("--time-budget-s", budget_s, "Exact solver budget in seconds")->capture_default_str();
    solve_cmd->add_option("--out", out, "Output permutation JSON");

    auto* bench_cmd = app.add_subcommand("bench", "Run the algorithm matrix and write CSV");
    bench_cmd->add_option("--config", config_path, "Bench config JSON (default: desk-scale setup)");
    bench_cmd->add_flag("--full-scale", full_scale, "Use the n = 40 setup when no config is given");
    bench_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    bench_cmd->add_option("--time-budget-s", budget_s, "Exact solver budget in seconds")->capture_default_str();
    bench_cmd->add_option("--out", out, "Output CSV (default stdout)");
    bench_cmd->add_option("--plots", plots_dir, "Directory for SVG plots");
    bench_cmd->add_flag("--omit-timing", omit_timing, "Leave timing columns empty for reproducible output");

    auto* draw_cmd = app.add_subcommand("draw", "Render an SVG drawing");
    draw_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
    draw_cmd->add_option("--permutation", permutation_path, "Permutation JSON")->required();
    draw_cmd->add_option("--out", out, "Output SVG (default stdout)");

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force optimum for small instances");
    oracle_cmd->add_option("--instance", instance_path, "Instance JSON")->required();
    oracle_cmd->add_option("--mode", mode, "unrestricted, sidegap or kgap")->capture_default_str();
    auto* oracle_k = oracle_cmd->add_option("--k", k, "Gap budget for kgap mode");
    oracle_cmd->add_option("--out", out, "Output permutation JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    const std::chrono::duration<double> budget(budget_s);
    try {
        if (generate_cmd->parsed()) {
            gen.f_dm = Rational::parse(f_dm_text);
            gen.deg_avg = Rational::parse(deg_avg_text);
            const BipartiteInstance inst = generate(gen);
            emit(out, instance_to_json(inst));
            std::size_t dummies = 0;
            for (const auto& v : inst.top) dummies += v.is_dummy() ? 1 : 0;
            (out.empty() ? std::cerr : std::cout)
                << "generated n=" << gen.n << " f_dm=" << gen.f_dm.str() << " deg_avg=" << gen.deg_avg.str()
                << " seed=" << gen.seed << ": " << inst.top.size() << " top nodes (" << dummies << " dummies), "
                << inst.edges.size() << " edges\n";
            return kOk;
        }

        if (solve_cmd->parsed() || oracle_cmd->parsed()) {
            const BipartiteInstance inst = instance_from_json(read_text_file(instance_path));
            const bool is_oracle = oracle_cmd->parsed();
            const std::optional<int> k_opt = k_of(is_oracle ? oracle_k : solve_k, k);
            const bench::AlgoSpec spec =
                is_oracle ? bench::AlgoSpec::parse("oracle", k_opt, mode_of(mode.empty() ? "unrestricted" : mode))
                          : bench::AlgoSpec::parse(algo, k_opt, mode_of(mode));
            const bench::RunOutcome outcome = bench::run_algorithm(inst, spec, budget);
            const bench::RunRecord record =
                bench::make_record(std::filesystem::path(instance_path).stem().string(), inst, spec, outcome);
            if (!out.empty()) write_text_file(out, permutation_to_json(outcome.permutation));
            std::cout << bench::csv_header() << bench::csv_row(record);
            if (out.empty()) std::cerr << permutation_to_json(outcome.permutation);
            return outcome.status == to_string(SolveStatus::timeout_incumbent) ? kTimeout : kOk;
        }

        if (bench_cmd->parsed()) {
            bench::BenchConfig config = !config_path.empty() ? bench::BenchConfig::from_json(read_text_file(config_path))
                                        : full_scale      ? bench::BenchConfig::full_scale_defaults()
                                                           : bench::BenchConfig::desk_defaults();
            const bench::BenchOptions options{jobs, budget, omit_timing};
            const auto records = bench::run_bench(config, options);
            emit(out, bench::render_csv(records));
            if (!plots_dir.empty()) {
                std::filesystem::create_directories(plots_dir);
                for (const auto& plot : bench::render_plots(config, records, !omit_timing)) {
                    write_text_file(std::filesystem::path(plots_dir) / plot.name, plot.svg);
                }
            }
            bool any_timeout = false;
            for (const auto& r : records) any_timeout = any_timeout || r.status == "timeout_incumbent";
            return any_timeout ? kTimeout : kOk;
        }

        if (draw_cmd->parsed()) {
            const BipartiteInstance inst = instance_from_json(read_text_file(instance_path));
            const Permutation pi2 = permutation_from_json(read_text_file(permutation_path));
            emit(out, render_drawing(inst, pi2));
            return kOk;
        }
    } catch (const RefusalError& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
