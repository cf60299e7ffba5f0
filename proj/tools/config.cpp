#include "config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dmeta::cli {

const char* kVersion = "0.1.0";

std::string kind_name(Kind kind) {
    switch (kind) {
        case Kind::kKnapsack: return "knapsack";
        case Kind::kGaussianCluster: return "gaussian_cluster";
        case Kind::kMwis: return "mwis";
        case Kind::kRobust: return "robust";
        case Kind::kHalving: return "halving";
    }
    return "?";
}

std::string lambda_mode_name(LambdaMode mode) {
    return mode == LambdaMode::kMeta ? "meta" : "theory-fixed";
}

std::string step_variant_name(StepVariant variant) {
    return variant == StepVariant::kEwoo ? "ewoo" : "ftl";
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& v) {
    try {
        std::size_t pos = 0;
        double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "' expects a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& origin, int line, const std::string& key,
                    const std::string& v) {
    try {
        std::size_t pos = 0;
        long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "' expects an integer, got '" + v + "'");
    }
}

void apply_kind_defaults(ExperimentConfig& cfg) {
    switch (cfg.kind) {
        case Kind::kKnapsack:
            cfg.domain = Interval(0.0, 10.0);
            cfg.param_min = 0.0;
            cfg.param_max = 2.0;
            break;
        case Kind::kGaussianCluster:
            cfg.domain = Interval(0.0, 10.0);
            cfg.param_min = 2.0;
            cfg.param_max = 3.0;
            break;
        case Kind::kMwis:
            cfg.domain = Interval(0.0, 10.0);
            cfg.param_min = 0.0;
            cfg.param_max = 0.3;
            break;
        case Kind::kRobust:
            cfg.domain = Interval(0.0, 1.0);
            cfg.beta = 1.0;
            cfg.m_rounds = 256;
            break;
        case Kind::kHalving:
            cfg.domain = Interval(0.0, 3.0);
            cfg.d_star = 3.0;
            cfg.m_rounds = 256;
            break;
    }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    cfg.raw_text = text;
    bool kind_seen = false;
    double domain_lo = -1.0, domain_hi = -1.0;
    bool domain_lo_set = false, domain_hi_set = false;

    // First pass locates `kind` so its defaults apply before other keys.
    {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string s = trim(line.substr(0, line.find('#')));
            if (s.empty()) continue;
            std::size_t eq = s.find('=');
            if (eq == std::string::npos) fail(origin, lineno, "expected key=value, got '" + s + "'");
            if (trim(s.substr(0, eq)) != "kind") continue;
            std::string v = trim(s.substr(eq + 1));
            if (v == "knapsack") cfg.kind = Kind::kKnapsack;
            else if (v == "gaussian_cluster") cfg.kind = Kind::kGaussianCluster;
            else if (v == "mwis") cfg.kind = Kind::kMwis;
            else if (v == "robust") cfg.kind = Kind::kRobust;
            else if (v == "halving") cfg.kind = Kind::kHalving;
            else fail(origin, lineno, "unknown kind '" + v + "'");
            kind_seen = true;
        }
    }
    if (!kind_seen) throw ConfigError(origin + ": missing required key 'kind'");
    apply_kind_defaults(cfg);

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line.substr(0, line.find('#')));
        if (s.empty()) continue;
        std::size_t eq = s.find('=');
        std::string key = trim(s.substr(0, eq));
        std::string v = trim(s.substr(eq + 1));
        if (key == "kind") {
            continue;
        } else if (key == "T_train") {
            cfg.t_train = static_cast<int>(parse_int(origin, lineno, key, v));
        } else if (key == "T_test") {
            cfg.t_test = static_cast<int>(parse_int(origin, lineno, key, v));
        } else if (key == "m_rounds") {
            cfg.m_rounds = static_cast<int>(parse_int(origin, lineno, key, v));
        } else if (key == "replicas") {
            cfg.replicas = static_cast<int>(parse_int(origin, lineno, key, v));
        } else if (key == "beta") {
            cfg.beta = parse_double(origin, lineno, key, v);
        } else if (key == "gamma") {
            cfg.gamma = parse_double(origin, lineno, key, v);
        } else if (key == "eta") {
            cfg.eta = parse_double(origin, lineno, key, v);
        } else if (key == "epsilon") {
            cfg.epsilon = parse_double(origin, lineno, key, v);
        } else if (key == "D") {
            cfg.D = parse_double(origin, lineno, key, v);
        } else if (key == "step_variant") {
            if (v == "ftl") cfg.step_variant = StepVariant::kFtl;
            else if (v == "ewoo") cfg.step_variant = StepVariant::kEwoo;
            else fail(origin, lineno, "key 'step_variant' expects ftl|ewoo, got '" + v + "'");
        } else if (key == "lambda_mode") {
            if (v == "meta") cfg.lambda_mode = LambdaMode::kMeta;
            else if (v == "theory-fixed") cfg.lambda_mode = LambdaMode::kTheoryFixed;
            else fail(origin, lineno, "key 'lambda_mode' expects meta|theory-fixed, got '" + v + "'");
        } else if (key == "shots") {
            cfg.shots.clear();
            std::istringstream ss(v);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                int s_val = static_cast<int>(parse_int(origin, lineno, key, trim(tok)));
                if (s_val < 1) fail(origin, lineno, "shots entries must be >= 1");
                cfg.shots.push_back(s_val);
            }
            if (cfg.shots.empty()) fail(origin, lineno, "key 'shots' expects a list like 1,5");
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(origin, lineno, key, v));
        } else if (key == "domain_lo") {
            domain_lo = parse_double(origin, lineno, key, v);
            domain_lo_set = true;
        } else if (key == "domain_hi") {
            domain_hi = parse_double(origin, lineno, key, v);
            domain_hi_set = true;
        } else if (key == "param_min") {
            cfg.param_min = parse_double(origin, lineno, key, v);
        } else if (key == "param_max") {
            cfg.param_max = parse_double(origin, lineno, key, v);
        } else if (key == "sigma") {
            cfg.sigma = parse_double(origin, lineno, key, v);
        } else if (key == "n_vertices") {
            cfg.n_vertices = static_cast<int>(parse_int(origin, lineno, key, v));
        } else if (key == "edge_p") {
            cfg.edge_p = parse_double(origin, lineno, key, v);
        } else if (key == "beta_a") {
            cfg.beta_a = parse_double(origin, lineno, key, v);
        } else if (key == "d_star") {
            cfg.d_star = parse_double(origin, lineno, key, v);
        } else {
            fail(origin, lineno, "unknown key '" + key + "'");
        }
    }
    if (domain_lo_set || domain_hi_set) {
        double lo = domain_lo_set ? domain_lo : cfg.domain.lo;
        double hi = domain_hi_set ? domain_hi : cfg.domain.hi;
        if (!(lo < hi)) throw ConfigError(origin + ": domain_lo must be below domain_hi");
        cfg.domain = Interval(lo, hi);
    }

    if (cfg.t_train < 0) throw ConfigError(origin + ": T_train must be >= 0");
    if (cfg.t_test < 1) throw ConfigError(origin + ": T_test must be >= 1");
    if (cfg.m_rounds < 1) throw ConfigError(origin + ": m_rounds must be >= 1");
    if (cfg.replicas < 1) throw ConfigError(origin + ": replicas must be >= 1");
    if (!(cfg.beta > 0.0)) throw ConfigError(origin + ": beta must be positive");
    if (cfg.gamma < 0.0 || cfg.gamma > 1.0) throw ConfigError(origin + ": gamma outside [0, 1]");
    if (!(cfg.eta > 0.0)) throw ConfigError(origin + ": eta must be positive");
    for (int s : cfg.shots)
        if (s > cfg.m_rounds) throw ConfigError(origin + ": shots entry exceeds m_rounds");
    if (cfg.param_min > cfg.param_max) throw ConfigError(origin + ": param_min above param_max");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::string config_hash(const ExperimentConfig& cfg) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    };
    mix(cfg.raw_text);
    mix("\x1f");
    mix(kVersion);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace dmeta::cli
