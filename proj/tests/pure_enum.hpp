#pragma once

// Second, deliberately naive path to the subproblem optimum: enumerate every
// integer vector of setup start times up to the serial horizon, keep the
// feasible ones, take the best objective. Shares no scheduling insight with
// the branch-and-bound (no event grid, no greedy zero-setup rule), so
// agreement certifies both. Only usable on tiny instances.
#include "setsched/encoding.hpp"
#include "setsched/instance.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace pure_enum {

struct Slot {
    int machine;
    int position;  // >= 1; the first job of a machine is pinned at time 0
    std::int64_t setup;
    std::int64_t proc;
};

struct State {
    const setsched::Instance& inst;
    setsched::Objective objective;
    const setsched::Assignment& asg;
    std::vector<Slot> slots;
    std::vector<std::int64_t> start;  // chosen setup starts, one per slot
    std::int64_t horizon = 0;
    std::optional<std::int64_t> best;

    bool feasible_and_score(std::int64_t& value) const {
        std::vector<std::vector<std::int64_t>> done(inst.n_machines);
        for (int m = 0; m < inst.n_machines; ++m)
            if (!asg[m].empty())
                done[m].push_back(inst.p[asg[m][0]][m]);  // first job, no setup
        for (std::size_t k = 0; k < slots.size(); ++k) {
            const Slot& sl = slots[k];
            if (start[k] < done[sl.machine].back()) return false;  // machine still busy
            done[sl.machine].push_back(start[k] + sl.setup + sl.proc);
        }
        // technician load, checked at every unit step inside the horizon
        for (std::int64_t t = 0; t <= horizon; ++t) {
            int load = 0;
            for (std::size_t k = 0; k < slots.size(); ++k)
                if (slots[k].setup > 0 && start[k] <= t && t < start[k] + slots[k].setup)
                    ++load;
            if (load > inst.R) return false;
        }
        value = 0;
        for (int m = 0; m < inst.n_machines; ++m)
            for (std::size_t q = 0; q < asg[m].size(); ++q) {
                std::int64_t c = done[m][q];
                value += objective == setsched::Objective::sum_completion
                             ? c
                             : std::max<std::int64_t>(0, c - inst.d[asg[m][q]]);
            }
        return true;
    }

    void enumerate(std::size_t k) {
        if (k == slots.size()) {
            std::int64_t value = 0;
            if (feasible_and_score(value) && (!best || value < *best)) best = value;
            return;
        }
        for (std::int64_t t = 0; t <= horizon; ++t) {
            start[k] = t;
            enumerate(k + 1);
        }
    }
};

inline std::int64_t optimum(const setsched::Instance& inst, const setsched::Assignment& asg,
                            setsched::Objective objective) {
    State st{inst, objective, asg, {}, {}, 0, std::nullopt};
    for (int m = 0; m < inst.n_machines; ++m) {
        int prev = -1;
        for (std::size_t q = 0; q < asg[m].size(); ++q) {
            int j = asg[m][q];
            if (prev >= 0) st.slots.push_back({m, int(q), inst.s[prev][j][m], inst.p[j][m]});
            st.horizon += inst.p[j][m] + (prev >= 0 ? inst.s[prev][j][m] : 0);
            prev = j;
        }
    }
    st.start.assign(st.slots.size(), 0);
    st.enumerate(0);
    if (!st.best) throw std::logic_error("pure_enum: no feasible start vector");
    return *st.best;
}

}  // namespace pure_enum
