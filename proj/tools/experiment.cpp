#include "experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "dmeta/forecaster.hpp"
#include "dmeta/ftrl.hpp"
#include "dmeta/metrics.hpp"
#include "dmeta/robust.hpp"
#include "dmeta/step_size.hpp"
#include "dmeta/tasks.hpp"

namespace fs = std::filesystem;

namespace dmeta::cli {

namespace {

// Stream ids for seed derivation; distinct per purpose.
constexpr std::uint64_t kStreamTaskParam = 0xBEEF;
constexpr std::uint64_t kStreamGen = 0xA11CE;
constexpr std::uint64_t kStreamEval = 0x7E57;

int log_level() {
    static int level = [] {
        const char* env = std::getenv("DISPERSED_META_LOG");
        if (!env) return 0;
        std::string v(env);
        if (v == "debug") return 2;
        if (v == "info") return 1;
        return 0;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::fprintf(stderr, "[info] %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::fprintf(stderr, "[debug] %s\n", msg.c_str());
}

double task_param(const ExperimentConfig& cfg, int task_id) {
    Rng rng = Rng::derive(cfg.seed, kStreamTaskParam, static_cast<std::uint64_t>(task_id));
    return rng.uniform(cfg.param_min, cfg.param_max);
}

TaskRecord make_task(const ExperimentConfig& cfg, int task_id, const std::string& role) {
    TaskRecord rec;
    rec.task_id = task_id;
    rec.kind = kind_name(cfg.kind);
    rec.m = cfg.m_rounds;
    rec.role = role;
    rec.param = task_param(cfg, task_id);
    switch (cfg.kind) {
        case Kind::kKnapsack: {
            for (int i = 0; i < cfg.m_rounds; ++i) {
                Rng rng = Rng::derive(cfg.seed, kStreamGen, task_id, i);
                KnapsackInstance inst = knapsack_gen(rec.param, rng);
                rec.losses.push_back(knapsack_loss(inst, cfg.domain));
                rec.round_values.push_back(inst.total_value());
            }
            break;
        }
        case Kind::kGaussianCluster: {
            // One dataset per task; each round reruns the randomized seeding
            // with fresh shared uniforms on the same points.
            Rng data_rng = Rng::derive(cfg.seed, kStreamGen, task_id, 0xDA7A);
            ClusterDataset data = gaussian_mixture_gen(rec.param, cfg.sigma, data_rng);
            for (int i = 0; i < cfg.m_rounds; ++i) {
                Rng rng = Rng::derive(cfg.seed, kStreamGen, task_id, i);
                std::vector<double> u(data.k);
                for (double& x : u) x = rng.uniform();
                rec.losses.push_back(lloyd_seed_loss(data, cfg.domain, u));
                rec.round_values.push_back(1.0);
            }
            break;
        }
        case Kind::kMwis: {
            for (int i = 0; i < cfg.m_rounds; ++i) {
                Rng rng = Rng::derive(cfg.seed, kStreamGen, task_id, i);
                WeightedGraph g = mwis_gen(cfg.n_vertices, cfg.edge_p, rec.param, rng);
                double total = 0.0;
                for (double w : g.weights) total += w;
                rec.losses.push_back(mwis_loss(g, cfg.domain));
                rec.round_values.push_back(total);
            }
            break;
        }
        case Kind::kRobust: {
            Rng rng = Rng::derive(cfg.seed, kStreamGen, task_id);
            std::vector<PerturbedRound> rounds =
                robust_lb_sequence(cfg.m_rounds, cfg.beta, cfg.beta_a, cfg.domain, rng);
            for (PerturbedRound& r : rounds) {
                rec.losses.push_back(std::move(r.perturbed));
                rec.true_losses.push_back(std::move(r.true_loss));
                rec.attacks.push_back(std::move(r.attack));
                rec.round_values.push_back(1.0);
            }
            break;
        }
        case Kind::kHalving: {
            Rng rng = Rng::derive(cfg.seed, kStreamGen, task_id);
            rec.losses = halving_losses(cfg.m_rounds, cfg.beta, cfg.d_star, cfg.domain.lo,
                                        cfg.domain, rng, nullptr);
            rec.round_values.assign(rec.losses.size(), 1.0);
            break;
        }
    }
    return rec;
}

std::string task_filename(int task_id) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "task_%03d.jsonl", task_id);
    return buf;
}

}  // namespace

void cmd_gen(const ExperimentConfig& cfg, const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw DataError("cannot create output directory '" + out_dir + "'");

    const int total = cfg.t_train + cfg.t_test;
    nlohmann::json task_index = nlohmann::json::array();
    for (int t = 0; t < total; ++t) {
        std::string role = t < cfg.t_train ? "train" : "test";
        TaskRecord rec = make_task(cfg, t, role);
        fs::path path = fs::path(out_dir) / task_filename(t);
        std::ofstream out(path);
        if (!out) throw DataError("cannot write '" + path.string() + "'");
        out << task_to_json(rec).dump() << "\n";
        task_index.push_back({{"task_id", t}, {"param", rec.param}, {"role", role}});
        log_debug("wrote " + path.string());
    }
    nlohmann::json manifest{{"config_hash", config_hash(cfg)},
                            {"version", kVersion},
                            {"kind", kind_name(cfg.kind)},
                            {"t_train", cfg.t_train},
                            {"t_test", cfg.t_test},
                            {"m_rounds", cfg.m_rounds},
                            {"tasks", task_index},
                            {"notes", {{"test_param_policy", "in-range-resample"}}}};
    fs::path mpath = fs::path(out_dir) / "manifest.json";
    std::ofstream mout(mpath);
    if (!mout) throw DataError("cannot write '" + mpath.string() + "'");
    mout << manifest.dump(2) << "\n";
    log_info("generated " + std::to_string(total) + " tasks in " + out_dir);
}

Dataset load_dataset(const ExperimentConfig& cfg, const std::string& data_dir) {
    fs::path mpath = fs::path(data_dir) / "manifest.json";
    std::ifstream min(mpath);
    if (!min) throw DataError("missing manifest '" + mpath.string() + "'");
    nlohmann::json manifest;
    try {
        min >> manifest;
    } catch (const std::exception& e) {
        throw DataError("malformed manifest: " + std::string(e.what()));
    }
    std::string expect = config_hash(cfg);
    std::string got = manifest.value("config_hash", "");
    if (got != expect)
        throw DataError("dataset hash " + got + " does not match config hash " + expect +
                        "; regenerate with `gen`");
    Dataset ds;
    ds.hash = got;
    const int total = cfg.t_train + cfg.t_test;
    for (int t = 0; t < total; ++t) {
        fs::path path = fs::path(data_dir) / task_filename(t);
        std::ifstream in(path);
        if (!in) throw DataError("missing task file '" + path.string() + "'");
        std::string line;
        std::getline(in, line);
        TaskRecord rec;
        try {
            rec = task_from_json(nlohmann::json::parse(line));
        } catch (const std::exception& e) {
            throw DataError("malformed task file '" + path.string() + "': " + e.what());
        }
        (t < cfg.t_train ? ds.train : ds.test).push_back(std::move(rec));
    }
    return ds;
}

namespace {

struct TrainedMeta {
    std::vector<Density> initializers;  // prefix p in 0..T, [0] is uniform
    std::vector<double> scalar_v;       // step-size learner scalar after p tasks
    double v_squared = 0.0;
};

TrainedMeta meta_train(const ExperimentConfig& cfg, const std::vector<TaskRecord>& train) {
    const Interval domain = cfg.domain;
    const int T = static_cast<int>(train.size());
    const double radius = std::pow(static_cast<double>(cfg.m_rounds), -cfg.beta);
    double eps = cfg.epsilon > 0.0 ? cfg.epsilon
                                   : default_epsilon(cfg.step_variant, std::max(T, 1));
    double D = cfg.D > 0.0 ? cfg.D : default_domain_param(cfg.beta, cfg.m_rounds);

    TrainedMeta out;
    StepSizeState step{eps, D, cfg.gamma, 0.0, 0, cfg.step_variant};
    Density current = Density::uniform(domain);
    out.initializers.push_back(current);
    out.scalar_v.push_back(0.5 * (step.scalar_lo() + step.scalar_hi()));

    CellPartition partition(domain);
    BallHistory history;
    for (int t = 0; t < T; ++t) {
        const auto& losses = train[t].losses;
        PiecewiseConstant total = losses.front();
        for (std::size_t i = 1; i < losses.size(); ++i) total = pc_add(total, losses[i]);
        ArgminResult opt = pc_argmin(total);
        Interval task_ball = domain.clip(ball(opt.representative, radius));
        double overlap = std::exp(-neg_log_overlap(current, task_ball));

        partition = refine(partition, task_ball);
        history.balls.push_back(task_ball);
        current = to_density(ftrl_update(history, partition, cfg.gamma, cfg.eta));
        out.initializers.push_back(current);

        step.observe_overlap(overlap);
        // Evaluating the learner at m = 1 yields the scalar iterate itself.
        out.scalar_v.push_back(cfg.step_variant == StepVariant::kEwoo ? ewoo_lambda(step, 1)
                                                                      : ftl_lambda(step, 1));
    }
    out.v_squared = history.balls.empty() ? 0.0 : task_similarity(history.balls, domain).v_squared;
    return out;
}

// Per (test task, shot count) quantities shared by every replica and prefix.
struct TestWindow {
    PiecewiseConstant loss_sum;        // sum of the first s losses
    PiecewiseConstant weighted_loss;   // sum of round_value_i * loss_i
    double loss_min = 0.0;
    double value_best = 0.0;           // max over rho of the summed raw value
    double value_total = 0.0;          // sum of round values
    Interval opt_ball{0.0, 1.0};       // B(window optimum, s^-beta), clipped
};

TestWindow make_window(const ExperimentConfig& cfg, const TaskRecord& task, int s) {
    TestWindow w{task.losses[0], pc_affine(task.losses[0], task.round_values[0], 0.0)};
    for (int i = 1; i < s; ++i) {
        w.loss_sum = pc_add(w.loss_sum, task.losses[i]);
        w.weighted_loss = pc_add(w.weighted_loss, pc_affine(task.losses[i], task.round_values[i], 0.0));
    }
    ArgminResult opt = pc_argmin(w.loss_sum);
    w.loss_min = opt.value;
    w.value_total = 0.0;
    for (int i = 0; i < s; ++i) w.value_total += task.round_values[i];
    w.value_best = w.value_total - pc_argmin(w.weighted_loss).value;
    double radius = std::pow(static_cast<double>(s), -cfg.beta);
    w.opt_ball = cfg.domain.clip(ball(opt.representative, radius));
    return w;
}

struct EvalOutcome {
    double accuracy = 0.0;
    double regret = 0.0;
};

EvalOutcome evaluate(const ExperimentConfig& cfg, const TaskRecord& task, const TestWindow& w,
                     const Density& init, double lambda, int s, Rng rng) {
    ForecasterState state = ef_init(cfg.domain, init, lambda);
    double loss_total = 0.0;
    double best_weighted = 1e300;
    for (int i = 0; i < s; ++i) {
        double rho = ef_sample(state, rng);
        loss_total += task.losses[i](rho);
        // Deployment value of the tried parameter, scored over the window.
        best_weighted = std::min(best_weighted, w.weighted_loss(rho));
        state = ef_update(std::move(state), task.losses[i]);
    }
    EvalOutcome out;
    out.regret = loss_total - w.loss_min;
    // Best tried configuration against the offline-optimal parameter.
    out.accuracy =
        w.value_best > 1e-12 ? (w.value_total - best_weighted) / w.value_best : 1.0;
    return out;
}

}  // namespace

std::string csv_header() {
    return "experiment_id,variant,task_id,replica,shots,train_tasks,accuracy,regret,"
           "v_squared,neg_log_overlap,lambda,wallclock_ms,config_hash";
}

namespace {
std::string fmt9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}
}  // namespace

std::string csv_line(const ResultRow& r) {
    std::ostringstream out;
    out << r.experiment_id << ',' << r.variant << ',' << r.task_id << ',' << r.replica << ','
        << r.shots << ',' << r.train_tasks << ',' << fmt9(r.accuracy) << ',' << fmt9(r.regret)
        << ',' << fmt9(r.v_squared) << ',' << fmt9(r.neg_log_overlap) << ',' << fmt9(r.lambda)
        << ',' << fmt9(r.wallclock_ms) << ',' << r.config_hash;
    return out.str();
}

std::vector<ResultRow> parse_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open results file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty results file '" + path + "'");
    if (line != csv_header()) throw DataError("unexpected CSV header in '" + path + "'");
    std::vector<ResultRow> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (f.size() != 13)
            throw DataError(path + ":" + std::to_string(lineno) + ": expected 13 fields");
        ResultRow r;
        try {
            r.experiment_id = f[0];
            r.variant = f[1];
            r.task_id = std::stoi(f[2]);
            r.replica = std::stoi(f[3]);
            r.shots = std::stoi(f[4]);
            r.train_tasks = std::stoi(f[5]);
            r.accuracy = std::stod(f[6]);
            r.regret = std::stod(f[7]);
            r.v_squared = std::stod(f[8]);
            r.neg_log_overlap = std::stod(f[9]);
            r.lambda = std::stod(f[10]);
            r.wallclock_ms = std::stod(f[11]);
            r.config_hash = f[12];
        } catch (const std::exception&) {
            throw DataError(path + ":" + std::to_string(lineno) + ": malformed row");
        }
        if (r.variant != "single_task" && r.variant != "meta_initialized")
            throw DataError(path + ":" + std::to_string(lineno) + ": unknown variant " + r.variant);
        rows.push_back(std::move(r));
    }
    return rows;
}

void cmd_run(const ExperimentConfig& cfg, const std::string& data_dir, const std::string& out_dir,
             const RunOptions& options) {
    Dataset ds = load_dataset(cfg, data_dir);
    const std::string hash = ds.hash;
    const std::string experiment_id = kind_name(cfg.kind) + "-" + hash.substr(0, 8);
    log_info("running " + experiment_id + " with " + std::to_string(cfg.replicas) + " replicas");

    TrainedMeta trained = meta_train(cfg, ds.train);
    const int T = static_cast<int>(ds.train.size());

    // Windows and per-prefix step sizes / overlaps are replica-independent.
    const std::size_t n_tasks = ds.test.size();
    const std::size_t n_shots = cfg.shots.size();
    std::vector<std::vector<TestWindow>> windows(n_tasks);
    for (std::size_t ti = 0; ti < n_tasks; ++ti)
        for (int s : cfg.shots) windows[ti].push_back(make_window(cfg, ds.test[ti], s));

    struct PrefixEval {
        double lambda = 0.0;
        double nlo = 0.0;
    };
    // indexed [task][shot][prefix]
    std::vector<std::vector<std::vector<PrefixEval>>> prefix_eval(n_tasks);
    for (std::size_t ti = 0; ti < n_tasks; ++ti) {
        prefix_eval[ti].resize(n_shots);
        for (std::size_t si = 0; si < n_shots; ++si) {
            int s = cfg.shots[si];
            for (int p = 0; p <= T; ++p) {
                const Density& init = trained.initializers[p];
                double nlo = neg_log_overlap(init, windows[ti][si].opt_ball);
                double lambda;
                if (cfg.lambda_mode == LambdaMode::kMeta)
                    lambda = trained.scalar_v[p] / std::sqrt(static_cast<double>(s));
                else
                    lambda = theory_step_size(std::min(nlo, 700.0), s);
                prefix_eval[ti][si].push_back({lambda, nlo});
            }
        }
    }

    // Row layout: for each (task, replica) item, single_task rows per shot
    // then meta rows per (shot, prefix).
    const std::size_t rows_per_item = n_shots * (1 + static_cast<std::size_t>(T) + 1);
    const std::size_t n_items = n_tasks * static_cast<std::size_t>(cfg.replicas);
    std::vector<ResultRow> rows(n_items * rows_per_item);

    auto run_item = [&](std::size_t item) {
        const std::size_t ti = item / cfg.replicas;
        const int replica = static_cast<int>(item % cfg.replicas);
        const TaskRecord& task = ds.test[ti];
        std::size_t slot = item * rows_per_item;
        for (std::size_t si = 0; si < n_shots; ++si) {
            const int s = cfg.shots[si];
            const TestWindow& w = windows[ti][si];
            auto stamp = [&](const char* variant, int p, const PrefixEval& pe,
                             const EvalOutcome& o, double ms) {
                ResultRow& r = rows[slot++];
                r.experiment_id = experiment_id;
                r.variant = variant;
                r.task_id = task.task_id;
                r.replica = replica;
                r.shots = s;
                r.train_tasks = p;
                r.accuracy = o.accuracy;
                r.regret = o.regret;
                r.v_squared = trained.v_squared;
                r.neg_log_overlap = pe.nlo;
                r.lambda = pe.lambda;
                r.wallclock_ms = ms;
                r.config_hash = hash;
            };
            auto timed_eval = [&](const Density& init, double lambda, double* ms) {
                auto t0 = std::chrono::steady_clock::now();
                EvalOutcome o = evaluate(cfg, task, w, init, lambda, s,
                                         Rng::derive(cfg.seed, kStreamEval, task.task_id,
                                                     replica, s));
                if (options.timings)
                    *ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
                return o;
            };
            // Baseline: uniform initialization, theory step size.
            {
                double nlo = prefix_eval[ti][si][0].nlo;
                PrefixEval pe{theory_step_size(std::min(nlo, 700.0), s), nlo};
                double ms = 0.0;
                EvalOutcome o = timed_eval(trained.initializers[0], pe.lambda, &ms);
                stamp("single_task", 0, pe, o, ms);
            }
            for (int p = 0; p <= T; ++p) {
                const PrefixEval& pe = prefix_eval[ti][si][p];
                double ms = 0.0;
                EvalOutcome o = timed_eval(trained.initializers[p], pe.lambda, &ms);
                stamp("meta_initialized", p, pe, o, ms);
            }
        }
    };

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        for (std::size_t item = 0; item < n_items; ++item) run_item(item);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) {
            pool.emplace_back([&] {
                while (true) {
                    std::size_t item = next.fetch_add(1);
                    if (item >= n_items) return;
                    try {
                        run_item(item);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!error) error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (std::thread& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw DataError("cannot create output directory '" + out_dir + "'");
    fs::path cpath = fs::path(out_dir) / "results.csv";
    std::ofstream out(cpath);
    if (!out) throw DataError("cannot write '" + cpath.string() + "'");
    out << csv_header() << "\n";
    for (const ResultRow& r : rows) out << csv_line(r) << "\n";
    log_info("wrote " + cpath.string() + " (" + std::to_string(rows.size()) + " rows)");
}

}  // namespace dmeta::cli
