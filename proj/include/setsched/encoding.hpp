#pragma once

#include "setsched/instance.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace setsched {

enum class Objective { sum_completion, sum_tardiness };

Objective parse_objective(const std::string& text);  // "sumC" / "sumT"
std::string objective_name(Objective objective);

// Ordered job sequences, one per machine.
using Assignment = std::vector<std::vector<int>>;

// Slot encoding: every machine owns n_jobs slots; x(i,j,m) = 1 iff job j sits
// in slot i of machine m. A machine running k jobs fills its LAST k slots
// (empty slots come first), y(j,m) = 1 iff job j runs on machine m.
struct SlotSolution {
    int n_jobs = 0;
    int n_machines = 0;
    std::vector<std::uint8_t> x;  // flattened (i*n_jobs + j)*n_machines + m
    std::vector<std::uint8_t> y;  // flattened j*n_machines + m

    SlotSolution() = default;
    SlotSolution(int n, int m)
        : n_jobs(n), n_machines(m), x(std::size_t(n) * n * m, 0), y(std::size_t(n) * m, 0) {}

    std::uint8_t& x_at(int i, int j, int m) {
        return x[(std::size_t(i) * n_jobs + j) * n_machines + m];
    }
    std::uint8_t x_at(int i, int j, int m) const {
        return x[(std::size_t(i) * n_jobs + j) * n_machines + m];
    }
    std::uint8_t& y_at(int j, int m) { return y[std::size_t(j) * n_machines + m]; }
    std::uint8_t y_at(int j, int m) const { return y[std::size_t(j) * n_machines + m]; }

    bool operator==(const SlotSolution& other) const = default;
};

SlotSolution assignment_to_slots(const Instance& inst, const Assignment& asg);
Assignment slots_to_assignment(const Instance& inst, const SlotSolution& sol);

// Throws when asg is not a partition of the jobs into per-machine sequences.
void check_assignment(const Instance& inst, const Assignment& asg);

// Chained completion times ignoring the setup-technician limit: the first job
// of each machine starts at 0 with no setup, every later one right after its
// predecessor plus the setup. Lower-bounds any feasible timing.
std::vector<std::vector<std::int64_t>> resource_free_timing(const Instance& inst,
                                                            const Assignment& asg);

std::int64_t evaluate_objective(Objective objective,
                                const std::vector<std::int64_t>& completion_by_job,
                                const std::vector<std::int64_t>& due_by_job);

// Convenience: objective value of resource_free_timing.
std::int64_t resource_free_value(const Instance& inst, const Assignment& asg,
                                 Objective objective);

// Hamming distance over the concatenated (x, y) coordinates.
int symmetric_distance(const SlotSolution& a, const SlotSolution& b);

}  // namespace setsched
