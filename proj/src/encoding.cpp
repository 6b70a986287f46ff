#include "setsched/encoding.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace setsched {

Objective parse_objective(const std::string& text) {
    if (text == "sumC") return Objective::sum_completion;
    if (text == "sumT") return Objective::sum_tardiness;
    throw std::invalid_argument("objective must be sumC or sumT, got '" + text + "'");
}

std::string objective_name(Objective objective) {
    return objective == Objective::sum_completion ? "sumC" : "sumT";
}

void check_assignment(const Instance& inst, const Assignment& asg) {
    if (int(asg.size()) != inst.n_machines)
        throw std::invalid_argument("assignment: expected " + std::to_string(inst.n_machines) +
                                    " machine sequences, got " + std::to_string(asg.size()));
    std::vector<int> seen(inst.n_jobs, 0);
    for (const auto& seq : asg)
        for (int j : seq) {
            if (j < 0 || j >= inst.n_jobs)
                throw std::invalid_argument("assignment: unknown job id " + std::to_string(j));
            if (seen[j]++)
                throw std::invalid_argument("assignment: job " + std::to_string(j) +
                                            " appears more than once");
        }
    for (int j = 0; j < inst.n_jobs; ++j)
        if (!seen[j])
            throw std::invalid_argument("assignment: job " + std::to_string(j) + " is missing");
}

SlotSolution assignment_to_slots(const Instance& inst, const Assignment& asg) {
    check_assignment(inst, asg);
    SlotSolution sol(inst.n_jobs, inst.n_machines);
    for (int m = 0; m < inst.n_machines; ++m) {
        const auto& seq = asg[m];
        int first_slot = inst.n_jobs - int(seq.size());
        for (int q = 0; q < int(seq.size()); ++q) {
            sol.x_at(first_slot + q, seq[q], m) = 1;
            sol.y_at(seq[q], m) = 1;
        }
    }
    return sol;
}

Assignment slots_to_assignment(const Instance& inst, const SlotSolution& sol) {
    if (sol.n_jobs != inst.n_jobs || sol.n_machines != inst.n_machines)
        throw std::invalid_argument("slots: dimensions do not match the instance");
    const int n = inst.n_jobs, M = inst.n_machines;

    std::vector<int> placements(n, 0);
    Assignment asg(M);
    for (int m = 0; m < M; ++m) {
        bool seen_occupied = false;
        for (int i = 0; i < n; ++i) {
            int count = 0, job = -1;
            for (int j = 0; j < n; ++j)
                if (sol.x_at(i, j, m)) {
                    ++count;
                    job = j;
                }
            if (count > 1)
                throw std::invalid_argument("slots: machine " + std::to_string(m) + " slot " +
                                            std::to_string(i) + " holds more than one job");
            if (count == 0) {
                if (seen_occupied)
                    throw std::invalid_argument("slots: machine " + std::to_string(m) +
                                                " has an empty slot " + std::to_string(i) +
                                                " after an occupied one");
                continue;
            }
            seen_occupied = true;
            asg[m].push_back(job);
            ++placements[job];
        }
    }
    for (int j = 0; j < n; ++j) {
        if (placements[j] == 0)
            throw std::invalid_argument("slots: job " + std::to_string(j) + " is unassigned");
        if (placements[j] > 1)
            throw std::invalid_argument("slots: job " + std::to_string(j) +
                                        " occupies more than one slot");
    }
    if (!sol.y.empty())
        for (int j = 0; j < n; ++j)
            for (int m = 0; m < M; ++m) {
                int on_m = 0;
                for (int i = 0; i < n; ++i) on_m += sol.x_at(i, j, m);
                if (int(sol.y_at(j, m)) != on_m)
                    throw std::invalid_argument("slots: y(" + std::to_string(j) + ", " +
                                                std::to_string(m) +
                                                ") disagrees with the slot assignment");
            }
    return asg;
}

std::vector<std::vector<std::int64_t>> resource_free_timing(const Instance& inst,
                                                            const Assignment& asg) {
    check_assignment(inst, asg);
    std::vector<std::vector<std::int64_t>> completion(inst.n_machines);
    for (int m = 0; m < inst.n_machines; ++m) {
        std::int64_t t = 0;
        int prev = -1;
        for (int j : asg[m]) {
            if (prev >= 0) t += inst.s[prev][j][m];
            t += inst.p[j][m];
            completion[m].push_back(t);
            prev = j;
        }
    }
    return completion;
}

std::int64_t evaluate_objective(Objective objective,
                                const std::vector<std::int64_t>& completion_by_job,
                                const std::vector<std::int64_t>& due_by_job) {
    std::int64_t total = 0;
    if (objective == Objective::sum_completion) {
        for (auto c : completion_by_job) total += c;
        return total;
    }
    if (due_by_job.size() != completion_by_job.size())
        throw std::invalid_argument("evaluate_objective: needs one due date per completion");
    for (std::size_t j = 0; j < completion_by_job.size(); ++j)
        total += std::max<std::int64_t>(0, completion_by_job[j] - due_by_job[j]);
    return total;
}

std::int64_t resource_free_value(const Instance& inst, const Assignment& asg,
                                 Objective objective) {
    if (objective == Objective::sum_tardiness && !inst.has_due_dates())
        throw std::invalid_argument("resource_free_value: instance has no due dates");
    auto timing = resource_free_timing(inst, asg);
    std::vector<std::int64_t> by_job(inst.n_jobs, 0);
    for (int m = 0; m < inst.n_machines; ++m)
        for (std::size_t q = 0; q < asg[m].size(); ++q) by_job[asg[m][q]] = timing[m][q];
    return evaluate_objective(objective, by_job,
                              objective == Objective::sum_tardiness ? inst.d
                                                                    : std::vector<std::int64_t>{});
}

int symmetric_distance(const SlotSolution& a, const SlotSolution& b) {
    if (a.n_jobs != b.n_jobs || a.n_machines != b.n_machines || a.x.size() != b.x.size() ||
        a.y.size() != b.y.size())
        throw std::invalid_argument("symmetric_distance: dimension mismatch");
    int dist = 0;
    for (std::size_t k = 0; k < a.x.size(); ++k) dist += a.x[k] != b.x[k];
    for (std::size_t k = 0; k < a.y.size(); ++k) dist += a.y[k] != b.y[k];
    return dist;
}

}  // namespace setsched
