#include "dmeta/serialize.hpp"

#include <stdexcept>

namespace dmeta {

using nlohmann::json;

json pc_to_json(const PiecewiseConstant& pc) {
    Interval d = pc.domain();
    return json{{"domain", {d.lo, d.hi}},
                {"breakpoints", pc.breakpoints()},
                {"values", pc.values()}};
}

PiecewiseConstant pc_from_json(const json& j) {
    if (!j.contains("breakpoints") || !j.contains("values"))
        throw std::invalid_argument("pc_from_json: missing breakpoints/values");
    std::vector<double> bps = j.at("breakpoints").get<std::vector<double>>();
    std::vector<double> vals = j.at("values").get<std::vector<double>>();
    return PiecewiseConstant(std::move(bps), std::move(vals));
}

json attack_to_json(const Attack& a) {
    return json{{"center", a.center}, {"delta", a.delta}, {"bump", pc_to_json(a.bump)}};
}

Attack attack_from_json(const json& j) {
    return Attack{j.at("center").get<double>(), j.at("delta").get<double>(),
                  pc_from_json(j.at("bump"))};
}

json task_to_json(const TaskRecord& rec) {
    json meta{{"param", rec.param}, {"role", rec.role}, {"round_values", rec.round_values}};
    json out{{"task_id", rec.task_id}, {"kind", rec.kind}, {"m", rec.m}, {"meta", meta}};
    json losses = json::array();
    for (const auto& l : rec.losses) losses.push_back(pc_to_json(l));
    out["losses"] = std::move(losses);
    if (!rec.attacks.empty()) {
        json attacks = json::array();
        for (const auto& a : rec.attacks) attacks.push_back(attack_to_json(a));
        out["attacks"] = std::move(attacks);
        json trues = json::array();
        for (const auto& l : rec.true_losses) trues.push_back(pc_to_json(l));
        out["true_losses"] = std::move(trues);
    }
    return out;
}

TaskRecord task_from_json(const json& j) {
    TaskRecord rec;
    rec.task_id = j.at("task_id").get<int>();
    rec.kind = j.at("kind").get<std::string>();
    rec.m = j.at("m").get<int>();
    for (const auto& l : j.at("losses")) rec.losses.push_back(pc_from_json(l));
    const json& meta = j.at("meta");
    rec.param = meta.at("param").get<double>();
    rec.role = meta.at("role").get<std::string>();
    rec.round_values = meta.at("round_values").get<std::vector<double>>();
    if (j.contains("attacks")) {
        for (const auto& a : j.at("attacks")) rec.attacks.push_back(attack_from_json(a));
        for (const auto& l : j.at("true_losses")) rec.true_losses.push_back(pc_from_json(l));
    }
    if (static_cast<int>(rec.losses.size()) != rec.m)
        throw std::invalid_argument("task_from_json: losses count != m");
    return rec;
}

}  // namespace dmeta
