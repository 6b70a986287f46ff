#pragma once

#include "setsched/encoding.hpp"
#include "setsched/instance.hpp"
#include "setsched/subproblem.hpp"

#include <cstdint>
#include <functional>
#include <string>

namespace setsched {

struct OracleLimits {
    int max_jobs = 7;
};

struct OracleResult {
    std::int64_t value = 0;
    Assignment assignment;
    TimedSchedule schedule;
};

// Visits every ordered partition of the jobs into machine sequences exactly
// once (jobs inserted in id order at every position). Return false from the
// callback to stop early.
void for_each_assignment(int n_jobs, int n_machines,
                         const std::function<bool(const Assignment&)>& visit);

// prod_{t=0..n_jobs-1} (t + n_machines), saturating.
std::uint64_t count_assignments(int n_jobs, int n_machines);

// Reference optimum: exact timing of every assignment, with provably safe
// pruning only (chain bound, running-best cutoff). Refuses instances beyond
// limits.max_jobs, quoting the assignment count.
OracleResult brute_force_optimum(const Instance& inst, Objective objective,
                                 const OracleLimits& limits = {});

}  // namespace setsched
