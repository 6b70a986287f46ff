#pragma once

#include "setsched/encoding.hpp"
#include "setsched/instance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace setsched {

struct JobWindow {
    int job = 0;
    std::int64_t setup_start = 0;
    std::int64_t setup_end = 0;  // processing starts exactly here
    std::int64_t proc_start = 0;
    std::int64_t proc_end = 0;
};

struct TimedSchedule {
    Objective objective = Objective::sum_completion;
    std::int64_t value = 0;
    std::vector<std::vector<JobWindow>> machines;  // position order per machine
};

struct SubproblemResult {
    bool pruned = false;              // true: optimum proven >= cutoff, value/schedule unset
    std::int64_t value = 0;
    TimedSchedule schedule;
};

// Exact timing of fixed sequences under the R-technician limit: setups may
// wait, processing follows its setup immediately, at most R positive-length
// setups overlap. Branch and bound over event-aligned schedules; when cutoff
// is given the search may stop early and report pruned (optimum >= cutoff).
SubproblemResult solve_subproblem_exact(const Instance& inst, const Assignment& asg,
                                        Objective objective,
                                        std::optional<std::int64_t> cutoff = std::nullopt);

// Constraint-by-constraint audit; violations name the family they break
// (startAtEnd, previous, Cumulative, duration, assignment, value).
std::vector<std::string> verify_timed_schedule(const Instance& inst,
                                               const TimedSchedule& sched);

Assignment schedule_assignment(const TimedSchedule& sched, int n_machines);

std::string schedule_to_json(const TimedSchedule& sched, const std::string& instance_name);
TimedSchedule schedule_from_json(const std::string& text);
void write_schedule(const TimedSchedule& sched, const std::string& instance_name,
                    const std::string& path);
TimedSchedule read_schedule(const std::string& path);

}  // namespace setsched
