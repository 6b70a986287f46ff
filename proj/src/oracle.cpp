#include "setsched/oracle.hpp"

#include "setsched/subproblem.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace setsched {

namespace {

bool insert_next(Assignment& asg, int job, int n_jobs,
                 const std::function<bool(const Assignment&)>& visit) {
    if (job == n_jobs) return visit(asg);
    for (std::size_t m = 0; m < asg.size(); ++m)
        for (std::size_t pos = 0; pos <= asg[m].size(); ++pos) {
            asg[m].insert(asg[m].begin() + pos, job);
            bool keep = insert_next(asg, job + 1, n_jobs, visit);
            asg[m].erase(asg[m].begin() + pos);
            if (!keep) return false;
        }
    return true;
}

}  // namespace

void for_each_assignment(int n_jobs, int n_machines,
                         const std::function<bool(const Assignment&)>& visit) {
    if (n_jobs < 0 || n_machines < 1)
        throw std::invalid_argument("for_each_assignment: bad dimensions");
    Assignment asg(n_machines);
    insert_next(asg, 0, n_jobs, visit);
}

std::uint64_t count_assignments(int n_jobs, int n_machines) {
    std::uint64_t total = 1;
    const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    for (int t = 0; t < n_jobs; ++t) {
        std::uint64_t factor = std::uint64_t(t) + std::uint64_t(n_machines);
        if (total > cap / factor) return cap;
        total *= factor;
    }
    return total;
}

OracleResult brute_force_optimum(const Instance& inst, Objective objective,
                                 const OracleLimits& limits) {
    if (inst.n_jobs > limits.max_jobs)
        throw std::invalid_argument(
            "brute_force_optimum: " + std::to_string(inst.n_jobs) + " jobs means " +
            std::to_string(count_assignments(inst.n_jobs, inst.n_machines)) +
            " assignments, above the limit of " + std::to_string(limits.max_jobs) + " jobs");
    if (objective == Objective::sum_tardiness && !inst.has_due_dates())
        throw std::invalid_argument("brute_force_optimum: instance has no due dates");

    OracleResult best;
    bool found = false;
    std::int64_t bar = std::numeric_limits<std::int64_t>::max();
    for_each_assignment(inst.n_jobs, inst.n_machines, [&](const Assignment& asg) {
        // the chain bound never exceeds the exact value, so this skip is safe
        if (found && resource_free_value(inst, asg, objective) >= bar) return true;
        auto res = solve_subproblem_exact(
            inst, asg, objective,
            found ? std::optional<std::int64_t>(bar) : std::nullopt);
        if (!res.pruned && (!found || res.value < bar)) {
            found = true;
            bar = res.value;
            best.value = res.value;
            best.assignment = asg;
            best.schedule = res.schedule;
        }
        return true;
    });
    if (!found) throw std::logic_error("brute_force_optimum: no assignment visited");
    return best;
}

}  // namespace setsched
