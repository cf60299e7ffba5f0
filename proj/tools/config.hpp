#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dmeta/interval.hpp"
#include "dmeta/meta.hpp"

namespace dmeta::cli {

// Exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

extern const char* kVersion;

enum class Kind { kKnapsack, kGaussianCluster, kMwis, kRobust, kHalving };

std::string kind_name(Kind kind);

struct ExperimentConfig {
    Kind kind = Kind::kGaussianCluster;
    int t_train = 10;
    int t_test = 5;
    int m_rounds = 30;
    int replicas = 100;
    double beta = 0.5;
    double gamma = 0.01;
    double eta = 0.01;
    double epsilon = 0.0;  // 0 = variant default
    double D = 0.0;        // 0 = sqrt(beta log m)
    StepVariant step_variant = StepVariant::kFtl;
    LambdaMode lambda_mode = LambdaMode::kTheoryFixed;
    std::vector<int> shots{1, 5};
    std::uint64_t seed = 0;
    Interval domain{0.0, 10.0};

    // Task-parameter range (knapsack item shift, mixture separation d, or
    // mwis weight floor), resampled in-range for test tasks.
    double param_min = 0.0;
    double param_max = 2.0;
    double sigma = 2.0;          // gaussian_cluster
    int n_vertices = 20;         // mwis
    double edge_p = 0.2;         // mwis
    double beta_a = 0.5;         // robust
    double d_star = 1.0;         // halving

    std::string raw_text;  // exact file contents, hashed into the manifest
};

// Flat key=value format with '#' comments. Unknown keys and malformed values
// raise ConfigError with file:line positions.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

// FNV-1a hash of the config text and the code version string.
std::string config_hash(const ExperimentConfig& cfg);

std::string lambda_mode_name(LambdaMode mode);
std::string step_variant_name(StepVariant variant);

}  // namespace dmeta::cli
