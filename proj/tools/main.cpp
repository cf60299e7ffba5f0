#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "experiment.hpp"
#include "report.hpp"

using namespace dmeta::cli;

int main(int argc, char** argv) {
    CLI::App app{"dispersed-meta: meta-learned initializations for online piecewise-constant "
                 "loss minimization"};
    app.require_subcommand(1);

    std::string config_path;
    std::string data_dir;
    std::string out_dir = ".";
    int jobs = 1;
    long long seed_override = -1;
    bool timings = false;

    CLI::App* gen = app.add_subcommand("gen", "Generate a task dataset as JSONL files");
    gen->add_option("--config", config_path, "Experiment config file")->required();
    gen->add_option("--out", out_dir, "Output directory");
    gen->add_option("--seed", seed_override, "Override the config seed");

    CLI::App* run = app.add_subcommand("run", "Run the experiment and write results.csv");
    run->add_option("--config", config_path, "Experiment config file")->required();
    run->add_option("--data", data_dir, "Dataset directory produced by gen")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--jobs", jobs, "Worker threads for (task, replica) pairs");
    run->add_option("--seed", seed_override, "Override the config seed");
    run->add_flag("--timings", timings, "Record per-row wallclock (breaks byte determinism)");

    CLI::App* report = app.add_subcommand("report", "Render the accuracy table and regret SVG");
    report->add_option("--config", config_path, "Experiment config file (unused, for symmetry)");
    report->add_option("--data", data_dir, "Directory containing results.csv")->required();
    report->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed() || run->parsed()) {
            ExperimentConfig cfg = parse_config_file(config_path);
            if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
            if (gen->parsed()) {
                cmd_gen(cfg, out_dir);
            } else {
                RunOptions options;
                options.jobs = jobs;
                options.timings = timings;
                cmd_run(cfg, data_dir, out_dir, options);
            }
        } else if (report->parsed()) {
            std::string table = cmd_report(data_dir, out_dir);
            std::fputs(table.c_str(), stdout);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
