#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dmeta/piecewise.hpp"
#include "dmeta/robust.hpp"

namespace dmeta {

// Wire format: {"domain": [lo, hi], "breakpoints": [...], "values": [...]}.
nlohmann::json pc_to_json(const PiecewiseConstant& pc);
PiecewiseConstant pc_from_json(const nlohmann::json& j);

nlohmann::json attack_to_json(const Attack& a);
Attack attack_from_json(const nlohmann::json& j);

// One task as stored in the JSONL dataset: the learner-facing losses plus,
// for robust traces, the underlying true losses and attacks.
struct TaskRecord {
    int task_id = 0;
    std::string kind;
    int m = 0;
    std::vector<PiecewiseConstant> losses;
    std::vector<PiecewiseConstant> true_losses;  // robust kinds only
    std::vector<Attack> attacks;                 // robust kinds only
    std::vector<double> round_values;  // per-round raw-value normalizer (1.0 when loss is the value)
    double param = 0.0;                // task parameter (knapsack shift, mixture d, ...)
    std::string role;                  // "train" or "test"
};

nlohmann::json task_to_json(const TaskRecord& rec);
TaskRecord task_from_json(const nlohmann::json& j);

}  // namespace dmeta
