#pragma once

// Canonical hand instance: 4 jobs, 2 machines, one technician, every
// processing time 2, every setup 3, due dates 4/8/4/8. Chained per machine
// the reference costs 18; with the single technician one setup must wait
// three units, so the true optimum is 21 (total tardiness 2).
#include "setsched/encoding.hpp"
#include "setsched/instance.hpp"

inline setsched::Instance t1_instance() {
    setsched::Instance inst;
    inst.name = "T1";
    inst.n_jobs = 4;
    inst.n_machines = 2;
    inst.R = 1;
    inst.p.assign(4, std::vector<std::int64_t>(2, 2));
    inst.s.assign(4, std::vector<std::vector<std::int64_t>>(
                         4, std::vector<std::int64_t>(2, 3)));
    for (int j = 0; j < 4; ++j)
        for (int m = 0; m < 2; ++m) inst.s[j][j][m] = 0;
    inst.d = {4, 8, 4, 8};
    return inst;
}

inline setsched::Assignment t1_reference() { return {{0, 1}, {2, 3}}; }
