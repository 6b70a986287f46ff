#pragma once

#include "setsched/encoding.hpp"
#include "setsched/instance.hpp"
#include "setsched/master.hpp"
#include "setsched/subproblem.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace setsched {

// alg1: every master solution is priced exactly and excluded point-wise.
// alg2: non-improving solutions additionally have their neighbourhood
// explored and the whole ball excluded at once.
enum class Algorithm { alg1, alg2 };

// bnc: one master solve, cuts injected at each incumbent via the lazy hook.
// iter: solve master to optimality, add one cut, repeat.
enum class Mode { bnc, iter };

Algorithm parse_algorithm(const std::string& text);  // "alg1" / "alg2"
Mode parse_mode(const std::string& text);            // "bnc" / "iter"
std::string algorithm_name(Algorithm a);
std::string mode_name(Mode m);

struct RunConfig {
    Algorithm algorithm = Algorithm::alg2;
    Mode mode = Mode::iter;
    Objective objective = Objective::sum_completion;
    double time_limit_s = std::numeric_limits<double>::infinity();
    bool valid_inequalities = true;
    bool warm_start = true;
    int kopt = 0;  // 0 off, 6 or 8: wider neighbourhoods for alg2
    std::uint64_t seed = 0;
    std::string backend = "builtin";
    int r_override = 0;  // > 0 replaces the instance R for this run
};

enum class RunStatus { optimal, limit, infeasible };

struct CutRecord {
    Cut::Kind kind = Cut::Kind::nogood;
    Assignment reference;
    std::int64_t master_value = 0;
    std::optional<std::int64_t> exact_value;  // unset when the pricing was cut off
    double ub_before = 0.0;
    // neighbourhood exploration behind a ball cut (zero/unset for no-goods)
    int n_neighbours = 0;
    int n_skipped = 0;
    int n_solved = 0;
    std::optional<std::int64_t> ball_best;
};

struct RunResult {
    RunStatus status = RunStatus::limit;
    double lb = 0.0;
    double ub = std::numeric_limits<double>::infinity();
    double gap_pct = 100.0;
    double wall_time_s = 0.0;
    int n_integer_solutions = 0;  // master points priced
    int n_nogood_cuts = 0;
    int n_ball_cuts = 0;
    std::optional<Assignment> incumbent;
    std::optional<TimedSchedule> schedule;
    std::vector<CutRecord> cut_ledger;
    std::string instance_name;
    int effective_r = 0;
    int n_model_rows = 0;  // master size before any cut
    int n_model_cols = 0;
    std::int64_t n_model_nonzeros = 0;
    RunConfig config;
};

RunResult solve(const Instance& inst, const RunConfig& config);

// 100 * (ub - lb) / ub, clamped to 0 when lb overshoots; 0/0 -> 0;
// positive lb with ub == 0 or negative inputs -> throws. Infinite ub -> 100.
double compute_gap(double lb, double ub);

std::string csv_header();
std::string csv_comment(const std::string& tool_version, std::uint64_t seed);
std::string to_csv_row(const RunResult& result);

}  // namespace setsched
