#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "dmeta/serialize.hpp"

namespace dmeta::cli {

// Writes one JSONL file per task plus manifest.json; byte-deterministic in
// (config, seed).
void cmd_gen(const ExperimentConfig& cfg, const std::string& out_dir);

struct RunOptions {
    int jobs = 1;
    bool timings = false;  // off by default so reruns are byte-identical
};

// Meta-trains on the train tasks (deterministic given the dataset), then
// evaluates single-task and meta-initialized variants on every test task at
// each shot count, including every training-prefix initializer for the
// meta variant. Writes results.csv into out_dir.
void cmd_run(const ExperimentConfig& cfg, const std::string& data_dir, const std::string& out_dir,
             const RunOptions& options);

// Loaded dataset.
struct Dataset {
    std::vector<TaskRecord> train;
    std::vector<TaskRecord> test;
    std::string hash;
};
Dataset load_dataset(const ExperimentConfig& cfg, const std::string& data_dir);

// One CSV row; field order matches docs/schema.md.
struct ResultRow {
    std::string experiment_id;
    std::string variant;  // single_task | meta_initialized
    int task_id = 0;
    int replica = 0;
    int shots = 0;
    int train_tasks = 0;
    double accuracy = 0.0;
    double regret = 0.0;
    double v_squared = 0.0;
    double neg_log_overlap = 0.0;
    double lambda = 0.0;
    double wallclock_ms = 0.0;
    std::string config_hash;
};

std::string csv_header();
std::string csv_line(const ResultRow& row);
std::vector<ResultRow> parse_csv(const std::string& path);

}  // namespace dmeta::cli
