#pragma once

#include "setsched/encoding.hpp"
#include "setsched/instance.hpp"
#include "setsched/solver_iface.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace setsched {

struct MasterOptions {
    bool with_y = false;             // add y variables and their linking rows
    bool valid_inequalities = true;  // lower-bound each setup by the cheapest successor
};

// Slot-position relaxation: assigns jobs to machine slots and prices setups
// chain-wise, ignoring the technician limit. Its optimum lower-bounds the
// true optimum; integer points are exactly the valid SlotSolutions.
struct MasterModel {
    Model model;
    int n_jobs = 0;
    int n_machines = 0;
    Objective objective = Objective::sum_completion;
    MasterOptions opts;
    int x_base = 0, y_base = -1, p_base = 0, s_base = 0, c_base = 0, d_base = -1, t_base = -1;

    int x_id(int i, int j, int m) const {
        return x_base + (i * n_jobs + j) * n_machines + m;
    }
    int y_id(int j, int m) const { return y_base + j * n_machines + m; }
    int p_id(int i, int m) const { return p_base + i * n_machines + m; }
    int s_id(int i, int m) const { return s_base + i * n_machines + m; }
    int c_id(int i, int m) const { return c_base + i * n_machines + m; }
    int d_id(int i, int m) const { return d_base + i * n_machines + m; }
    int t_id(int i, int m) const { return t_base + i * n_machines + m; }
};

MasterModel build_master(const Instance& inst, Objective objective, const MasterOptions& opts);

struct Cut {
    enum class Kind { nogood, local_branching };
    Kind kind = Kind::nogood;
    std::vector<int> x_support;  // x ids at value 1 in the reference
    std::vector<int> y_support;  // y ids at value 1 (local_branching only)
    int min_flips = 1;           // required count of support coordinates leaving 1
    LinRow row;                  // expanded linear form
};

// Forbids exactly the reference: at least one of its n_jobs x-coordinates
// must leave 1.
Cut nogood_cut(const MasterModel& master, const SlotSolution& reference);

// Forbids the whole distance <= k ball around the reference: at least
// k/2 + 1 support coordinates (x and y) must leave 1. Requires y variables.
Cut local_branching_cut(const MasterModel& master, const SlotSolution& reference, int k = 4);

// Sum of (1 - coordinate) over the cut's support at a candidate solution.
int cut_support_flips(const Cut& cut, const MasterModel& master, const SlotSolution& sol);

// Same cut with every y substituted by its slot sum; equivalent on valid
// solutions, usable in y-free models.
Cut project_cut_y(const MasterModel& master, const Cut& cut);

// Rounds binaries and validates the slot structure; throws on fractional or
// structurally broken points.
SlotSolution extract_solution(const MasterModel& master, const std::vector<double>& values);

}  // namespace setsched
