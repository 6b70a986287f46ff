#pragma once

#include "setsched/encoding.hpp"
#include "setsched/instance.hpp"
#include "setsched/subproblem.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace setsched {

// All moves return full assignments (the reference itself is never included).

// Exchange two jobs of one machine; distance 4.
std::vector<Assignment> enumerate_internal_swaps(const Assignment& asg);

// Move the first job of a nonempty machine to the front of another machine;
// distance 4.
std::vector<Assignment> enumerate_starting_job_shifts(const Assignment& asg);

// Single-job cross-machine relocations forcing exactly `displaced` other
// jobs to change slot. displaced = 0: front to front, nobody else moves (the
// starting-job shifts, distance 4). displaced = 1: either the mover leaves a
// non-front position and the donor's front drops into the freed slot, or the
// mover takes an occupied receiver slot and that job pops out to the new
// front; distance 6 either way, and together with the in-machine 3-cycles
// these are all distance-6 solutions beyond the distance-4 ball.
std::vector<Assignment> enumerate_job_insertions(const Assignment& asg, int displaced);

// k = 6: in-machine 3-cycles (distance 6). k = 8: five families (pairs of
// disjoint swaps, pairs of shifts, shift + disjoint swap, in-machine
// 4-cycles, cross-machine job exchanges), deduplicated. Other k -> throws.
std::vector<Assignment> enumerate_kopt_extensions(const Assignment& asg, int k);

struct ExploreResult {
    std::optional<std::int64_t> value;  // best exact value strictly below the cutoff
    std::optional<Assignment> winner;
    std::optional<TimedSchedule> schedule;
    int n_candidates = 0;
    int n_skipped_relaxation = 0;  // dropped because the chain bound already met the cutoff
    int n_solved = 0;
};

// Best exact value over the neighbourhood of `ref`: swaps + shifts, plus for
// kopt >= 6 the full distance-6 ball (3-cycles + one-displacement
// insertions), plus for kopt = 8 the five distance-8 families as extra
// candidates. Neighbours whose resource-free value already reaches the
// running cutoff are skipped when prune_with_relaxation is set (lossless:
// that value never exceeds the exact one).
ExploreResult explore_neighbourhood_best(const Instance& inst, const Assignment& ref,
                                         Objective objective,
                                         std::optional<std::int64_t> cutoff,
                                         int kopt = 0, int n_threads = 1,
                                         bool prune_with_relaxation = true);

}  // namespace setsched
