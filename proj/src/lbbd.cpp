#include "setsched/lbbd.hpp"

#include "setsched/heuristics.hpp"
#include "setsched/neighbourhood.hpp"
#include "setsched/solver_iface.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace setsched {

Algorithm parse_algorithm(const std::string& text) {
    if (text == "alg1") return Algorithm::alg1;
    if (text == "alg2") return Algorithm::alg2;
    throw std::invalid_argument("unknown algorithm '" + text + "' (alg1, alg2)");
}

Mode parse_mode(const std::string& text) {
    if (text == "bnc") return Mode::bnc;
    if (text == "iter") return Mode::iter;
    throw std::invalid_argument("unknown mode '" + text + "' (bnc, iter)");
}

std::string algorithm_name(Algorithm a) { return a == Algorithm::alg1 ? "alg1" : "alg2"; }
std::string mode_name(Mode m) { return m == Mode::bnc ? "bnc" : "iter"; }

double compute_gap(double lb, double ub) {
    if (lb < 0 || ub < 0) throw std::invalid_argument("compute_gap: negative bound");
    if (std::isinf(ub)) return 100.0;
    if (ub == 0) {
        if (lb > 0) throw std::invalid_argument("compute_gap: lb > 0 with ub == 0");
        return 0.0;
    }
    return std::max(0.0, 100.0 * (ub - lb) / ub);
}

namespace {

constexpr std::int64_t k_none = std::numeric_limits<std::int64_t>::max();

// Integer master values only: every point at ub or above is no improvement,
// so capping the objective row at ub - 1 is a valid strengthening.
LinRow cap_row(const Model& model, std::int64_t ub) {
    LinRow row;
    row.sense = RowSense::le;
    row.rhs = double(ub - 1) - model.obj_offset;
    row.name = "cap" + std::to_string(ub);
    for (std::size_t v = 0; v < model.vars.size(); ++v)
        if (model.vars[v].obj != 0) row.terms.emplace_back(int(v), model.vars[v].obj);
    return row;
}

struct Driver {
    const Instance& inst;
    const RunConfig& config;
    MasterModel master;
    RunResult& res;
    std::chrono::steady_clock::time_point t0;

    std::int64_t ub = k_none;

    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    double remaining() const { return config.time_limit_s - elapsed(); }

    void improve(std::int64_t value, const Assignment& asg, const TimedSchedule& sched) {
        if (value < ub) {
            ub = value;
            res.incumbent = asg;
            res.schedule = sched;
        }
    }

    // prices one master point; fills the ledger entry and returns the cut
    // rows to install (empty = the point is exact and may stand)
    std::vector<LinRow> price_and_cut(const SlotSolution& slots, std::int64_t master_value) {
        ++res.n_integer_solutions;
        Assignment asg = slots_to_assignment(inst, slots);
        CutRecord rec;
        rec.reference = asg;
        rec.master_value = master_value;
        rec.ub_before = ub == k_none ? std::numeric_limits<double>::infinity() : double(ub);

        auto priced = solve_subproblem_exact(
            inst, asg, config.objective,
            ub == k_none ? std::nullopt : std::optional<std::int64_t>(ub));
        if (!priced.pruned) {
            rec.exact_value = priced.value;
            improve(priced.value, asg, priced.schedule);
        }
        if (rec.exact_value && *rec.exact_value == master_value) {
            // relaxation already exact here; nothing to cut away
            return {};
        }

        std::vector<LinRow> out;
        if (config.algorithm == Algorithm::alg1) {
            rec.kind = Cut::Kind::nogood;
            ++res.n_nogood_cuts;
            out.push_back(nogood_cut(master, slots).row);
        } else {
            rec.kind = Cut::Kind::local_branching;
            auto ex = explore_neighbourhood_best(
                inst, asg, config.objective,
                ub == k_none ? std::nullopt : std::optional<std::int64_t>(ub), config.kopt);
            rec.n_neighbours = ex.n_candidates;
            rec.n_skipped = ex.n_skipped_relaxation;
            rec.n_solved = ex.n_solved;
            rec.ball_best = ex.value;
            if (ex.value) improve(*ex.value, *ex.winner, *ex.schedule);
            ++res.n_ball_cuts;
            // the cut radius must not exceed what was just explored
            out.push_back(local_branching_cut(master, slots, config.kopt >= 6 ? 6 : 4).row);
        }
        if (ub != k_none) out.push_back(cap_row(master.model, ub));
        res.cut_ledger.push_back(std::move(rec));
        return out;
    }
};

}  // namespace

RunResult solve(const Instance& inst0, const RunConfig& config) {
    Instance inst = inst0;
    if (config.r_override > 0) {
        if (config.r_override > inst.n_machines)
            throw std::invalid_argument("r_override exceeds the machine count");
        inst.R = config.r_override;
    }
    if (config.objective == Objective::sum_tardiness && !inst.has_due_dates())
        throw std::invalid_argument("solve: instance has no due dates");
    if (config.kopt != 0 && config.kopt != 4 && config.kopt != 6 && config.kopt != 8)
        throw std::invalid_argument("solve: kopt must be 0, 4, 6 or 8");

    RunResult res;
    res.instance_name = inst.name;
    res.effective_r = inst.R;
    res.config = config;

    MasterOptions mopts;
    mopts.with_y = config.algorithm == Algorithm::alg2;
    mopts.valid_inequalities = config.valid_inequalities;

    Driver drv{inst, config, build_master(inst, config.objective, mopts), res,
               std::chrono::steady_clock::now()};
    res.n_model_cols = int(drv.master.model.vars.size());
    res.n_model_rows = int(drv.master.model.rows.size());
    for (const auto& row : drv.master.model.rows) res.n_model_nonzeros += row.terms.size();

    auto backend = make_backend(config.backend);

    if (config.warm_start) {
        WarmStart ws = warm_start(inst, config.objective);
        auto exact = solve_subproblem_exact(inst, ws.assignment, config.objective);
        drv.improve(exact.value, ws.assignment, exact.schedule);
        drv.master.model.add_row(cap_row(drv.master.model, drv.ub));
    }

    std::int64_t lb = 0;
    bool proven = false;

    if (config.mode == Mode::bnc) {
        IncumbentHook hook = [&](const std::vector<double>& values, double objective,
                                 double) -> std::vector<LinRow> {
            SlotSolution slots = extract_solution(drv.master, values);
            return drv.price_and_cut(slots, std::llround(objective));
        };
        SolveLimits lim{drv.remaining()};
        auto out = backend->solve(drv.master.model, lim, &hook);
        if (out.status == SolveStatus::limit) {
            double dual = std::max(0.0, out.dual_bound);
            if (!std::isfinite(dual)) dual = 0.0;
            lb = std::min<std::int64_t>(std::llround(std::ceil(dual - 1e-6)),
                                        drv.ub == k_none ? 0 : drv.ub);
        } else {
            // tree exhausted: every removed point was priced at ub or worse
            proven = true;
        }
    } else {
        for (;;) {
            if (drv.remaining() <= 0) break;
            SolveLimits lim{drv.remaining()};
            auto out = backend->solve(drv.master.model, lim, nullptr);
            if (out.status == SolveStatus::limit) {
                double dual = std::max(0.0, out.dual_bound);
                if (!std::isfinite(dual)) dual = 0.0;
                std::int64_t cap = drv.ub == k_none ? k_none : drv.ub;
                lb = std::max(lb, std::min<std::int64_t>(
                                      std::llround(std::ceil(dual - 1e-6)), cap));
                break;
            }
            if (out.status == SolveStatus::infeasible) {
                // every assignment below ub is cut away, so ub is optimal
                proven = true;
                break;
            }
            std::int64_t z = std::llround(out.objective);
            lb = std::max(lb, z);
            if (drv.ub != k_none && z >= drv.ub) {
                proven = true;
                break;
            }
            SlotSolution slots = extract_solution(drv.master, out.values);
            auto cuts = drv.price_and_cut(slots, z);
            if (cuts.empty()) {
                // master optimum priced exactly: lb == ub
                proven = true;
                break;
            }
            for (auto& row : cuts) drv.master.model.add_row(std::move(row));
            if (drv.ub != k_none && drv.ub - lb < 1) {
                proven = true;
                break;
            }
        }
    }

    res.wall_time_s = drv.elapsed();
    res.ub = drv.ub == k_none ? std::numeric_limits<double>::infinity() : double(drv.ub);
    if (proven && drv.ub != k_none) {
        res.status = RunStatus::optimal;
        res.lb = double(drv.ub);
    } else if (proven) {
        res.status = RunStatus::infeasible;  // unreachable for real instances
        res.lb = res.ub;
    } else {
        res.status = RunStatus::limit;
        res.lb = double(lb);
    }
    res.gap_pct = compute_gap(res.lb, res.ub);
    return res;
}

namespace {

std::string num(double v) {
    if (std::isinf(v)) return "inf";
    if (std::fabs(v - std::llround(v)) < 1e-9) return std::to_string(std::llround(v));
    std::ostringstream s;
    s << v;
    return s.str();
}

}  // namespace

std::string csv_header() { return "instance,R,alg,mode,objective,time_s,N,LB,UB,gap_pct"; }

std::string csv_comment(const std::string& tool_version, std::uint64_t seed) {
    return "# setsched " + tool_version + " seed=" + std::to_string(seed);
}

std::string to_csv_row(const RunResult& result) {
    char time_buf[32], gap_buf[32];
    std::snprintf(time_buf, sizeof time_buf, "%.3f", result.wall_time_s);
    std::snprintf(gap_buf, sizeof gap_buf, "%.2f", result.gap_pct);
    std::ostringstream row;
    row << result.instance_name << ',' << result.effective_r << ','
        << algorithm_name(result.config.algorithm) << ',' << mode_name(result.config.mode)
        << ',' << objective_name(result.config.objective) << ',' << time_buf << ','
        << result.n_integer_solutions << ',' << num(result.lb) << ',' << num(result.ub) << ','
        << gap_buf;
    return row.str();
}

}  // namespace setsched
