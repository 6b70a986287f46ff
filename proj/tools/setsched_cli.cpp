#include "CLI11.hpp"
#include "json.hpp"

#include "setsched/heuristics.hpp"
#include "setsched/instance.hpp"
#include "setsched/lbbd.hpp"
#include "setsched/oracle.hpp"
#include "setsched/subproblem.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#ifndef SETSCHED_VERSION
#define SETSCHED_VERSION "dev"
#endif

namespace {

using namespace setsched;

std::string default_backend() {
    const char* env = std::getenv("SETSCHED_BACKEND");
    return env && *env ? env : "builtin";
}

RFraction parse_r_fraction(const std::string& text) {
    if (text == "2/5") return RFraction::two_fifths;
    if (text == "3/5") return RFraction::three_fifths;
    throw CLI::ValidationError("--r-fraction must be 2/5 or 3/5");
}

struct SolveFlags {
    std::string alg = "alg2";
    std::string mode = "iter";
    std::string objective = "sumC";
    double time_limit = std::numeric_limits<double>::infinity();
    int kopt = 0;
    bool no_warm_start = false;
    bool no_valid_inequalities = false;
    std::string backend = default_backend();
    int r_override = 0;
    std::uint64_t seed = 0;
};

void add_solve_flags(CLI::App& app, SolveFlags& flags) {
    app.add_option("--alg", flags.alg, "algorithm: alg1 | alg2")->capture_default_str();
    app.add_option("--mode", flags.mode, "mode: bnc | iter")->capture_default_str();
    app.add_option("--objective", flags.objective, "objective: sumC | sumT")
        ->capture_default_str();
    app.add_option("--time-limit", flags.time_limit, "wall-clock limit in seconds");
    app.add_option("--kopt", flags.kopt, "neighbourhood width for alg2: 0, 6 or 8")
        ->capture_default_str();
    app.add_flag("--no-warm-start", flags.no_warm_start, "skip the heuristic upper bound");
    app.add_flag("--no-valid-inequalities", flags.no_valid_inequalities,
                 "drop the cheapest-successor setup rows");
    app.add_option("--backend", flags.backend,
                   "solver backend (default: $SETSCHED_BACKEND or builtin)");
    app.add_option("--r", flags.r_override, "override the technician count for this run");
    app.add_option("--seed", flags.seed, "seed recorded in the CSV comment header");
}

RunConfig to_config(const SolveFlags& flags) {
    RunConfig cfg;
    cfg.algorithm = parse_algorithm(flags.alg);
    cfg.mode = parse_mode(flags.mode);
    cfg.objective = parse_objective(flags.objective);
    cfg.time_limit_s = flags.time_limit;
    cfg.kopt = flags.kopt;
    cfg.warm_start = !flags.no_warm_start;
    cfg.valid_inequalities = !flags.no_valid_inequalities;
    cfg.backend = flags.backend;
    cfg.r_override = flags.r_override;
    cfg.seed = flags.seed;
    return cfg;
}

int cmd_gen(const GenParams& params, std::string out_path) {
    Instance inst = generate_instance(params);
    if (out_path.empty()) out_path = inst.name + ".json";
    write_instance(inst, out_path);
    std::cout << out_path << "\n";
    return 0;
}

int cmd_solve(const std::string& instance_path, const SolveFlags& flags,
              const std::string& dump_path) {
    Instance inst = read_instance(instance_path);
    RunResult result = solve(inst, to_config(flags));
    std::cout << csv_comment(SETSCHED_VERSION, flags.seed) << "\n"
              << csv_header() << "\n"
              << to_csv_row(result) << "\n";
    if (!dump_path.empty()) {
        if (!result.schedule) throw std::runtime_error("no incumbent to dump");
        write_schedule(*result.schedule, result.instance_name, dump_path);
    }
    return 0;
}

int cmd_verify(const std::string& instance_path, const std::string& schedule_path) {
    Instance inst = read_instance(instance_path);
    TimedSchedule sched = read_schedule(schedule_path);
    auto violations = verify_timed_schedule(inst, sched);
    if (violations.empty()) {
        std::cout << "ok: schedule satisfies all constraint families, value "
                  << sched.value << "\n";
        return 0;
    }
    for (const auto& v : violations) std::cout << v << "\n";
    return 1;
}

int cmd_oracle(const std::string& instance_path, const std::string& objective, int max_jobs,
               const std::string& dump_path) {
    Instance inst = read_instance(instance_path);
    OracleLimits limits;
    limits.max_jobs = max_jobs;
    OracleResult best = brute_force_optimum(inst, parse_objective(objective), limits);
    nlohmann::ordered_json doc;
    doc["instance"] = inst.name;
    doc["objective"] = objective;
    doc["value"] = best.value;
    doc["assignment"] = best.assignment;
    std::cout << doc.dump(1) << "\n";
    if (!dump_path.empty()) write_schedule(best.schedule, inst.name, dump_path);
    return 0;
}

struct BenchGrid {
    std::vector<std::string> algorithms{"alg1", "alg2"};
    std::vector<std::string> modes{"iter"};
    std::vector<std::string> objectives{"sumC"};
    std::vector<int> kopts{0};
    std::vector<int> r_overrides{0};
    double time_limit_s = std::numeric_limits<double>::infinity();
    bool valid_inequalities = true;
    bool warm_start = true;
    std::string backend = default_backend();
    std::uint64_t seed = 0;
};

BenchGrid load_grid(const std::string& path) {
    BenchGrid grid;
    if (path.empty()) return grid;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("bench config: " + std::string(e.what()));
    }
    auto pull = [&](const char* key, auto& into) {
        if (doc.contains(key)) into = doc.at(key).get<std::decay_t<decltype(into)>>();
    };
    pull("algorithms", grid.algorithms);
    pull("modes", grid.modes);
    pull("objectives", grid.objectives);
    pull("kopts", grid.kopts);
    pull("r_overrides", grid.r_overrides);
    pull("time_limit_s", grid.time_limit_s);
    pull("valid_inequalities", grid.valid_inequalities);
    pull("warm_start", grid.warm_start);
    pull("backend", grid.backend);
    pull("seed", grid.seed);
    return grid;
}

std::string resume_key(const std::string& instance, int r, const std::string& alg,
                       const std::string& mode, const std::string& objective) {
    return instance + "," + std::to_string(r) + "," + alg + "," + mode + "," + objective;
}

int cmd_bench(const std::string& dir, const std::string& out_path, const BenchGrid& grid,
              int jobs_parallel) {
    namespace fs = std::filesystem;
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no .json instances under " + dir);

    std::set<std::string> done;
    bool existing = fs::exists(out_path);
    if (existing) {
        std::ifstream in(out_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("instance,", 0) == 0) continue;
            std::vector<std::string> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ',') && cells.size() < 5) cells.push_back(cell);
            if (cells.size() == 5)
                done.insert(resume_key(cells[0], std::stoi(cells[1]), cells[2], cells[3],
                                       cells[4]));
        }
    }

    struct Task {
        std::string file;
        Instance inst;
        RunConfig cfg;
    };
    std::vector<Task> tasks;
    int skipped = 0;
    for (const auto& file : files) {
        Instance inst = read_instance(file);
        for (const auto& alg : grid.algorithms)
            for (const auto& mode : grid.modes)
                for (const auto& objective : grid.objectives)
                    for (int kopt : grid.kopts)
                        for (int r : grid.r_overrides) {
                            Objective obj = parse_objective(objective);
                            if (obj == Objective::sum_tardiness && !inst.has_due_dates())
                                continue;
                            RunConfig cfg;
                            cfg.algorithm = parse_algorithm(alg);
                            cfg.mode = parse_mode(mode);
                            cfg.objective = obj;
                            cfg.kopt = kopt;
                            cfg.r_override = r;
                            cfg.time_limit_s = grid.time_limit_s;
                            cfg.valid_inequalities = grid.valid_inequalities;
                            cfg.warm_start = grid.warm_start;
                            cfg.backend = grid.backend;
                            cfg.seed = grid.seed;
                            int eff_r = r > 0 ? r : inst.R;
                            if (done.count(
                                    resume_key(inst.name, eff_r, alg, mode, objective))) {
                                ++skipped;
                                continue;
                            }
                            tasks.push_back({file, inst, cfg});
                        }
    }

    std::ofstream out(out_path, std::ios::app);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    if (!existing) {
        out << csv_comment(SETSCHED_VERSION, grid.seed) << "\n" << csv_header() << "\n";
        out.flush();
    }

    std::mutex sink;
    std::atomic<std::size_t> cursor{0};
    std::atomic<int> failures{0};
    auto worker = [&] {
        for (;;) {
            std::size_t idx = cursor.fetch_add(1);
            if (idx >= tasks.size()) return;
            const Task& task = tasks[idx];
            try {
                RunResult result = solve(task.inst, task.cfg);
                std::lock_guard<std::mutex> g(sink);
                out << to_csv_row(result) << "\n";
                out << "# model instance=" << result.instance_name
                    << " rows=" << result.n_model_rows << " cols=" << result.n_model_cols
                    << " nonzeros=" << result.n_model_nonzeros << "\n";
                int cut_idx = 0;
                for (const auto& rec : result.cut_ledger) {
                    ++cut_idx;
                    if (rec.kind != Cut::Kind::local_branching) continue;
                    out << "# explore instance=" << result.instance_name
                        << " cut=" << cut_idx << " neighbours=" << rec.n_neighbours
                        << " skipped=" << rec.n_skipped << " solved=" << rec.n_solved
                        << " best="
                        << (rec.ball_best ? std::to_string(*rec.ball_best) : "none") << "\n";
                }
                out.flush();
            } catch (const std::exception& e) {
                failures.fetch_add(1);
                std::lock_guard<std::mutex> g(sink);
                std::cerr << "bench: " << task.file << ": " << e.what() << "\n";
            }
        }
    };

    int n_threads = std::max(1, jobs_parallel);
    if (n_threads == 1 || tasks.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min<int>(n_threads, int(tasks.size())); ++t)
            pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::cout << "ran " << tasks.size() - std::size_t(failures.load()) << " of "
              << tasks.size() << " runs (" << skipped << " already present) -> " << out_path
              << "\n";
    return failures.load() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unrelated-machine scheduling with a shared setup-technician pool"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate an instance file");
    GenParams params;
    std::string r_fraction = "2/5", gen_out;
    gen->add_option("--jobs", params.n_jobs, "job count")->required();
    gen->add_option("--machines", params.n_machines, "machine count")->required();
    gen->add_option("--tau", params.tau, "due-date tightness: 0.5 or 0.8")
        ->capture_default_str();
    gen->add_option("--rho", params.rho, "due-date spread")->capture_default_str();
    gen->add_option("--alpha", params.alpha, "setup class: 0, 1 or 2")->capture_default_str();
    gen->add_option("--seed", params.seed, "generator seed")->capture_default_str();
    gen->add_option("--r-fraction", r_fraction, "technician fraction: 2/5 or 3/5")
        ->capture_default_str();
    gen->add_option("--name", params.name, "override the derived instance name");
    gen->add_option("--out", gen_out, "output path (default <name>.json)");

    auto* solve_cmd = app.add_subcommand("solve", "run one instance");
    std::string solve_instance, solve_dump;
    SolveFlags solve_flags;
    solve_cmd->add_option("instance", solve_instance, "instance file")->required();
    add_solve_flags(*solve_cmd, solve_flags);
    solve_cmd->add_option("--dump", solve_dump, "write the incumbent schedule here");

    auto* bench = app.add_subcommand("bench", "run a directory of instances");
    std::string bench_dir, bench_out = "bench.csv", bench_config;
    int jobs_parallel = 1;
    std::vector<std::string> flag_algs, flag_modes, flag_objectives;
    std::vector<int> flag_kopts, flag_rs;
    double flag_time_limit = -1;
    std::string flag_backend;
    bench->add_option("dir", bench_dir, "directory of instance .json files")->required();
    bench->add_option("--out", bench_out, "CSV output (appended when resuming)")
        ->capture_default_str();
    bench->add_option("--config", bench_config, "JSON grid config");
    bench->add_option("--jobs-parallel", jobs_parallel, "parallel runs")
        ->capture_default_str();
    bench->add_option("--alg", flag_algs, "override: algorithms to run");
    bench->add_option("--mode", flag_modes, "override: modes to run");
    bench->add_option("--objective", flag_objectives, "override: objectives to run");
    bench->add_option("--kopt", flag_kopts, "override: kopt values");
    bench->add_option("--r", flag_rs, "override: technician overrides");
    bench->add_option("--time-limit", flag_time_limit, "override: per-run limit in seconds");
    bench->add_option("--backend", flag_backend, "override: solver backend");

    auto* verify = app.add_subcommand("verify", "audit a schedule dump");
    std::string verify_instance, verify_schedule;
    verify->add_option("instance", verify_instance, "instance file")->required();
    verify->add_option("schedule", verify_schedule, "schedule file")->required();

    auto* oracle = app.add_subcommand("oracle", "brute-force a tiny instance");
    std::string oracle_instance, oracle_objective = "sumC", oracle_dump;
    int oracle_max_jobs = 7;
    oracle->add_option("instance", oracle_instance, "instance file")->required();
    oracle->add_option("--objective", oracle_objective, "sumC | sumT")->capture_default_str();
    oracle->add_option("--max-jobs", oracle_max_jobs, "enumeration refusal threshold")
        ->capture_default_str();
    oracle->add_option("--dump", oracle_dump, "write the optimal schedule here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            params.r_fraction = parse_r_fraction(r_fraction);
            return cmd_gen(params, gen_out);
        }
        if (solve_cmd->parsed()) return cmd_solve(solve_instance, solve_flags, solve_dump);
        if (bench->parsed()) {
            BenchGrid grid = load_grid(bench_config);
            if (!flag_algs.empty()) grid.algorithms = flag_algs;
            if (!flag_modes.empty()) grid.modes = flag_modes;
            if (!flag_objectives.empty()) grid.objectives = flag_objectives;
            if (!flag_kopts.empty()) grid.kopts = flag_kopts;
            if (!flag_rs.empty()) grid.r_overrides = flag_rs;
            if (flag_time_limit >= 0) grid.time_limit_s = flag_time_limit;
            if (!flag_backend.empty()) grid.backend = flag_backend;
            return cmd_bench(bench_dir, bench_out, grid, jobs_parallel);
        }
        if (verify->parsed()) return cmd_verify(verify_instance, verify_schedule);
        if (oracle->parsed())
            return cmd_oracle(oracle_instance, oracle_objective, oracle_max_jobs, oracle_dump);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
