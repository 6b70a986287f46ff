#pragma once

#include "setsched/encoding.hpp"
#include "setsched/instance.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace setsched {

// Jobs in descending min-machine processing time (ties by id), each placed on
// the machine with the smallest resulting processing load.
std::vector<std::vector<int>> assign_balanced(const Instance& inst);

// Orders each machine's job set by ascending due date (ties by id).
Assignment edd_sequence(const Instance& inst, const std::vector<std::vector<int>>& job_sets);

// Balanced assignment + earliest-due-date sequencing. Needs due dates.
Assignment gh_edd(const Instance& inst);

// Global greedy on slack: repeatedly append the (job, machine) pair with the
// least d_j - (load_m + p_jm + setup); ties by (job, machine) id. Needs due
// dates.
Assignment gh_slack(const Instance& inst);

// List scheduling by the apparent-tardiness-cost-with-setups index; for
// sum_completion the due-date factor drops out. k1, k2 are the usual
// smoothing constants.
Assignment atcs(const Instance& inst, Objective objective, double k1 = 2.0, double k2 = 0.5);

// Shortest-processing-time list scheduling (due dates not needed).
Assignment spt(const Instance& inst);

struct WarmStart {
    Assignment assignment;
    std::int64_t value = 0;  // resource-free objective of the winner
    std::string source;
};

// Best constructive start by resource-free value. With due dates the
// candidates are gh_edd, gh_slack, atcs; without (sum_completion only) they
// are atcs and spt.
WarmStart warm_start(const Instance& inst, Objective objective);

}  // namespace setsched
