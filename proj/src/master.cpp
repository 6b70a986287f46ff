#include "setsched/master.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace setsched {

namespace {

std::string tag(const char* base, int a, int b) {
    return std::string(base) + "[" + std::to_string(a) + "," + std::to_string(b) + "]";
}

std::string tag(const char* base, int a, int b, int c) {
    return std::string(base) + "[" + std::to_string(a) + "," + std::to_string(b) + "," +
           std::to_string(c) + "]";
}

}  // namespace

MasterModel build_master(const Instance& inst, Objective objective, const MasterOptions& opts) {
    if (objective == Objective::sum_tardiness && !inst.has_due_dates())
        throw std::invalid_argument("build_master: instance has no due dates");

    const int n = inst.n_jobs, M = inst.n_machines;
    MasterModel master;
    master.n_jobs = n;
    master.n_machines = M;
    master.objective = objective;
    master.opts = opts;
    Model& mod = master.model;

    master.x_base = int(mod.vars.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < M; ++m)
                mod.add_var(VarKind::binary, 0, 1, 0, tag("x", i, j, m));
    if (opts.with_y) {
        master.y_base = int(mod.vars.size());
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < M; ++m) mod.add_var(VarKind::binary, 0, 1, 0, tag("y", j, m));
    }
    master.p_base = int(mod.vars.size());
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < M; ++m)
            mod.add_var(VarKind::continuous, 0, std::numeric_limits<double>::infinity(), 0,
                        tag("P", i, m));
    master.s_base = int(mod.vars.size());
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < M; ++m)
            mod.add_var(VarKind::continuous, 0,
                        i == 0 ? 0.0 : std::numeric_limits<double>::infinity(), 0,
                        tag("S", i, m));
    master.c_base = int(mod.vars.size());
    const bool tard = objective == Objective::sum_tardiness;
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < M; ++m)
            mod.add_var(VarKind::continuous, 0, std::numeric_limits<double>::infinity(),
                        tard ? 0.0 : 1.0, tag("C", i, m));
    if (tard) {
        master.d_base = int(mod.vars.size());
        for (int i = 0; i < n; ++i)
            for (int m = 0; m < M; ++m)
                mod.add_var(VarKind::continuous, 0, std::numeric_limits<double>::infinity(), 0,
                            tag("D", i, m));
        master.t_base = int(mod.vars.size());
        for (int i = 0; i < n; ++i)
            for (int m = 0; m < M; ++m)
                mod.add_var(VarKind::continuous, 0, std::numeric_limits<double>::infinity(), 1,
                            tag("T", i, m));
    }

    // every job takes exactly one slot somewhere
    for (int j = 0; j < n; ++j) {
        LinRow row;
        row.sense = RowSense::eq;
        row.rhs = 1;
        row.name = "assign[" + std::to_string(j) + "]";
        for (int i = 0; i < n; ++i)
            for (int m = 0; m < M; ++m) row.terms.emplace_back(master.x_id(i, j, m), 1.0);
        mod.add_row(std::move(row));
    }
    // at most one job per slot
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < M; ++m) {
            LinRow row;
            row.sense = RowSense::le;
            row.rhs = 1;
            row.name = tag("slot", i, m);
            for (int j = 0; j < n; ++j) row.terms.emplace_back(master.x_id(i, j, m), 1.0);
            mod.add_row(std::move(row));
        }
    // empty slots first: occupancy never drops along the slot axis
    for (int i = 0; i + 1 < n; ++i)
        for (int m = 0; m < M; ++m) {
            LinRow row;
            row.sense = RowSense::le;
            row.rhs = 0;
            row.name = tag("pack", i, m);
            for (int j = 0; j < n; ++j) {
                row.terms.emplace_back(master.x_id(i, j, m), 1.0);
                row.terms.emplace_back(master.x_id(i + 1, j, m), -1.0);
            }
            mod.add_row(std::move(row));
        }
    if (opts.with_y) {
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < M; ++m) {
                LinRow row;
                row.sense = RowSense::eq;
                row.rhs = 0;
                row.name = tag("uses", j, m);
                row.terms.emplace_back(master.y_id(j, m), 1.0);
                for (int i = 0; i < n; ++i) row.terms.emplace_back(master.x_id(i, j, m), -1.0);
                mod.add_row(std::move(row));
            }
    }
    // processing time carried by each slot
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < M; ++m) {
            LinRow row;
            row.sense = RowSense::eq;
            row.rhs = 0;
            row.name = tag("ptime", i, m);
            row.terms.emplace_back(master.p_id(i, m), 1.0);
            for (int j = 0; j < n; ++j)
                row.terms.emplace_back(master.x_id(i, j, m), -double(inst.p[j][m]));
            mod.add_row(std::move(row));
        }
    // setup pricing: if j sits in slot i, S(i,m) covers the setup from the
    // job one slot earlier; V relaxes the row when j is elsewhere
    for (int i = 1; i < n; ++i)
        for (int m = 0; m < M; ++m)
            for (int j = 0; j < n; ++j) {
                double v = 0;
                for (int k = 0; k < n; ++k)
                    if (k != j) v = std::max(v, double(inst.s[k][j][m]));
                LinRow row;
                row.sense = RowSense::ge;
                row.rhs = -v;
                row.name = tag("setup", i, j, m);
                row.terms.emplace_back(master.s_id(i, m), 1.0);
                for (int k = 0; k < n; ++k)
                    row.terms.emplace_back(master.x_id(i - 1, k, m), -double(inst.s[k][j][m]));
                row.terms.emplace_back(master.x_id(i, j, m), -v);
                mod.add_row(std::move(row));
            }
    // cheapest-successor floor under each occupied non-final slot
    if (opts.valid_inequalities)
        for (int i = 1; i < n; ++i)
            for (int m = 0; m < M; ++m) {
                LinRow row;
                row.sense = RowSense::ge;
                row.rhs = 0;
                row.name = tag("setup_lb", i, m);
                row.terms.emplace_back(master.s_id(i, m), 1.0);
                for (int j = 0; j < n; ++j)
                    row.terms.emplace_back(master.x_id(i - 1, j, m),
                                           -double(min_successor_setup(inst, j, m)));
                mod.add_row(std::move(row));
            }
    // completion chain
    for (int i = 0; i < n; ++i)
        for (int m = 0; m < M; ++m) {
            LinRow row;
            row.sense = RowSense::ge;
            row.rhs = 0;
            row.name = tag("chain", i, m);
            row.terms.emplace_back(master.c_id(i, m), 1.0);
            row.terms.emplace_back(master.s_id(i, m), -1.0);
            row.terms.emplace_back(master.p_id(i, m), -1.0);
            if (i > 0) row.terms.emplace_back(master.c_id(i - 1, m), -1.0);
            mod.add_row(std::move(row));
        }
    if (tard) {
        for (int i = 0; i < n; ++i)
            for (int m = 0; m < M; ++m) {
                LinRow due;
                due.sense = RowSense::eq;
                due.rhs = 0;
                due.name = tag("due", i, m);
                due.terms.emplace_back(master.d_id(i, m), 1.0);
                for (int j = 0; j < n; ++j)
                    due.terms.emplace_back(master.x_id(i, j, m), -double(inst.d[j]));
                mod.add_row(std::move(due));
                LinRow late;
                late.sense = RowSense::ge;
                late.rhs = 0;
                late.name = tag("late", i, m);
                late.terms.emplace_back(master.t_id(i, m), 1.0);
                late.terms.emplace_back(master.c_id(i, m), -1.0);
                late.terms.emplace_back(master.d_id(i, m), 1.0);
                mod.add_row(std::move(late));
            }
    }

    // branch occupied slots first (they sit at the high indices)
    for (int i = n - 1; i >= 0; --i)
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < M; ++m) mod.branch_order.push_back(master.x_id(i, j, m));
    return master;
}

namespace {

std::vector<int> x_support_of(const MasterModel& master, const SlotSolution& ref) {
    if (ref.n_jobs != master.n_jobs || ref.n_machines != master.n_machines)
        throw std::invalid_argument("cut reference does not match the master dimensions");
    std::vector<int> support;
    for (int i = 0; i < master.n_jobs; ++i)
        for (int j = 0; j < master.n_jobs; ++j)
            for (int m = 0; m < master.n_machines; ++m)
                if (ref.x_at(i, j, m)) support.push_back(master.x_id(i, j, m));
    return support;
}

// sum over support of (1 - var) >= min_flips, written as sum(var) <= |support| - min_flips
LinRow flips_row(const std::vector<int>& support, int min_flips, std::string name) {
    LinRow row;
    row.sense = RowSense::le;
    row.rhs = double(int(support.size()) - min_flips);
    row.name = std::move(name);
    for (int v : support) row.terms.emplace_back(v, 1.0);
    return row;
}

}  // namespace

Cut nogood_cut(const MasterModel& master, const SlotSolution& reference) {
    Cut cut;
    cut.kind = Cut::Kind::nogood;
    cut.x_support = x_support_of(master, reference);
    cut.min_flips = 1;
    cut.row = flips_row(cut.x_support, 1, "nogood");
    return cut;
}

Cut local_branching_cut(const MasterModel& master, const SlotSolution& reference, int k) {
    if (master.y_base < 0)
        throw std::logic_error("local_branching_cut: master was built without y variables");
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("local_branching_cut: k must be a positive even number");
    Cut cut;
    cut.kind = Cut::Kind::local_branching;
    cut.x_support = x_support_of(master, reference);
    for (int j = 0; j < master.n_jobs; ++j)
        for (int m = 0; m < master.n_machines; ++m)
            if (reference.y_at(j, m)) cut.y_support.push_back(master.y_id(j, m));
    cut.min_flips = k / 2 + 1;
    auto support = cut.x_support;
    support.insert(support.end(), cut.y_support.begin(), cut.y_support.end());
    cut.row = flips_row(support, cut.min_flips, "ball" + std::to_string(k));
    return cut;
}

int cut_support_flips(const Cut& cut, const MasterModel& master, const SlotSolution& sol) {
    if (sol.n_jobs != master.n_jobs || sol.n_machines != master.n_machines)
        throw std::invalid_argument("cut_support_flips: dimensions differ");
    auto value_of = [&](int var) -> int {
        if (var >= master.x_base && var < master.x_base + int(sol.x.size()))
            return sol.x[var - master.x_base];
        if (master.y_base >= 0 && var >= master.y_base &&
            var < master.y_base + int(sol.y.size()))
            return sol.y[var - master.y_base];
        throw std::logic_error("cut_support_flips: support id outside x and y");
    };
    int flips = 0;
    for (int v : cut.x_support) flips += value_of(v) == 0;
    for (int v : cut.y_support) flips += value_of(v) == 0;
    return flips;
}

Cut project_cut_y(const MasterModel& master, const Cut& cut) {
    Cut out = cut;
    out.y_support.clear();
    out.row = LinRow{};
    out.row.sense = RowSense::le;
    out.row.name = cut.row.name + "_xonly";
    // each support y contributes its slot sum; (1 - y) keeps the same flip count
    out.row.rhs = double(int(cut.x_support.size() + cut.y_support.size()) - cut.min_flips);
    std::vector<double> coef(master.model.vars.size(), 0.0);
    for (int v : cut.x_support) coef[v] += 1.0;
    for (int v : cut.y_support) {
        int off = v - master.y_base;
        int m = off % master.n_machines, j = off / master.n_machines;
        for (int i = 0; i < master.n_jobs; ++i) coef[master.x_id(i, j, m)] += 1.0;
    }
    for (std::size_t v = 0; v < coef.size(); ++v)
        if (coef[v] != 0.0) out.row.terms.emplace_back(int(v), coef[v]);
    return out;
}

SlotSolution extract_solution(const MasterModel& master, const std::vector<double>& values) {
    if (int(values.size()) < int(master.model.vars.size()))
        throw std::invalid_argument("extract_solution: value vector too short");
    SlotSolution sol(master.n_jobs, master.n_machines);
    for (int i = 0; i < master.n_jobs; ++i)
        for (int j = 0; j < master.n_jobs; ++j)
            for (int m = 0; m < master.n_machines; ++m) {
                double v = values[master.x_id(i, j, m)];
                if (v > 0.01 && v < 0.99)
                    throw std::invalid_argument("extract_solution: fractional x at " +
                                                master.model.vars[master.x_id(i, j, m)].name);
                sol.x_at(i, j, m) = v > 0.5 ? 1 : 0;
                if (v > 0.5) sol.y_at(j, m) = 1;
            }
    std::vector<int> placed(master.n_jobs, 0);
    for (int m = 0; m < master.n_machines; ++m) {
        int prev_occupied = 1;
        for (int i = master.n_jobs - 1; i >= 0; --i) {
            int here = 0;
            for (int j = 0; j < master.n_jobs; ++j)
                if (sol.x_at(i, j, m)) {
                    ++here;
                    ++placed[j];
                }
            if (here > 1)
                throw std::invalid_argument("extract_solution: two jobs share slot " +
                                            std::to_string(i));
            if (here > prev_occupied)
                throw std::invalid_argument("extract_solution: occupied slot " +
                                            std::to_string(i) + " below an empty one");
            prev_occupied = here;
        }
    }
    for (int j = 0; j < master.n_jobs; ++j)
        if (placed[j] != 1)
            throw std::invalid_argument("extract_solution: job " + std::to_string(j) +
                                        " placed " + std::to_string(placed[j]) + " times");
    return sol;
}

}  // namespace setsched
