#include "setsched/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace setsched {

namespace {

std::int64_t min_proc(const Instance& inst, int j) {
    std::int64_t best = inst.p[j][0];
    for (int m = 1; m < inst.n_machines; ++m) best = std::min(best, inst.p[j][m]);
    return best;
}

void require_dues(const Instance& inst, const char* who) {
    if (!inst.has_due_dates())
        throw std::invalid_argument(std::string(who) + ": instance has no due dates");
}

}  // namespace

std::vector<std::vector<int>> assign_balanced(const Instance& inst) {
    std::vector<int> order(inst.n_jobs);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        auto pa = min_proc(inst, a), pb = min_proc(inst, b);
        return pa != pb ? pa > pb : a < b;
    });
    std::vector<std::vector<int>> sets(inst.n_machines);
    std::vector<std::int64_t> load(inst.n_machines, 0);
    for (int j : order) {
        int pick = 0;
        for (int m = 1; m < inst.n_machines; ++m)
            if (load[m] + inst.p[j][m] < load[pick] + inst.p[j][pick]) pick = m;
        sets[pick].push_back(j);
        load[pick] += inst.p[j][pick];
    }
    return sets;
}

Assignment edd_sequence(const Instance& inst, const std::vector<std::vector<int>>& job_sets) {
    require_dues(inst, "edd_sequence");
    Assignment asg = job_sets;
    for (auto& seq : asg)
        std::stable_sort(seq.begin(), seq.end(), [&](int a, int b) {
            return inst.d[a] != inst.d[b] ? inst.d[a] < inst.d[b] : a < b;
        });
    return asg;
}

Assignment gh_edd(const Instance& inst) {
    return edd_sequence(inst, assign_balanced(inst));
}

Assignment gh_slack(const Instance& inst) {
    require_dues(inst, "gh_slack");
    Assignment asg(inst.n_machines);
    std::vector<std::int64_t> load(inst.n_machines, 0);
    std::vector<int> last(inst.n_machines, -1);
    std::vector<char> placed(inst.n_jobs, 0);
    for (int step = 0; step < inst.n_jobs; ++step) {
        int bj = -1, bm = -1;
        std::int64_t bslack = 0;
        for (int j = 0; j < inst.n_jobs; ++j) {
            if (placed[j]) continue;
            for (int m = 0; m < inst.n_machines; ++m) {
                std::int64_t setup = last[m] < 0 ? 0 : inst.s[last[m]][j][m];
                std::int64_t slack = inst.d[j] - (load[m] + setup + inst.p[j][m]);
                if (bj < 0 || slack < bslack) {
                    bj = j;
                    bm = m;
                    bslack = slack;
                }
            }
        }
        asg[bm].push_back(bj);
        load[bm] += (last[bm] < 0 ? 0 : inst.s[last[bm]][bj][bm]) + inst.p[bj][bm];
        last[bm] = bj;
        placed[bj] = 1;
    }
    return asg;
}

Assignment atcs(const Instance& inst, Objective objective, double k1, double k2) {
    if (objective == Objective::sum_tardiness) require_dues(inst, "atcs");
    Assignment asg(inst.n_machines);
    std::vector<std::int64_t> load(inst.n_machines, 0);
    std::vector<int> last(inst.n_machines, -1);
    std::vector<char> placed(inst.n_jobs, 0);
    const bool use_due = objective == Objective::sum_tardiness;
    for (int step = 0; step < inst.n_jobs; ++step) {
        // dispatch on the machine that frees up first
        int m = 0;
        for (int mm = 1; mm < inst.n_machines; ++mm)
            if (load[mm] < load[m]) m = mm;
        double p_bar = 0, s_bar = 0;
        int left = 0;
        for (int j = 0; j < inst.n_jobs; ++j) {
            if (placed[j]) continue;
            ++left;
            p_bar += double(inst.p[j][m]);
            s_bar += last[m] < 0 ? 0.0 : double(inst.s[last[m]][j][m]);
        }
        p_bar /= left;
        s_bar /= left;
        int bj = -1;
        double bscore = -1;
        for (int j = 0; j < inst.n_jobs; ++j) {
            if (placed[j]) continue;
            double setup = last[m] < 0 ? 0.0 : double(inst.s[last[m]][j][m]);
            double score = 1.0 / double(inst.p[j][m]);
            if (use_due) {
                double urgency =
                    std::max(0.0, double(inst.d[j]) - double(inst.p[j][m]) - double(load[m]));
                score *= std::exp(-urgency / (k1 * p_bar));
            }
            if (s_bar > 1e-9) score *= std::exp(-setup / (k2 * s_bar));
            if (score > bscore + 1e-15) {
                bscore = score;
                bj = j;
            }
        }
        asg[m].push_back(bj);
        load[m] += (last[m] < 0 ? 0 : inst.s[last[m]][bj][m]) + inst.p[bj][m];
        last[m] = bj;
        placed[bj] = 1;
    }
    return asg;
}

Assignment spt(const Instance& inst) {
    Assignment asg(inst.n_machines);
    std::vector<std::int64_t> load(inst.n_machines, 0);
    std::vector<int> last(inst.n_machines, -1);
    std::vector<char> placed(inst.n_jobs, 0);
    for (int step = 0; step < inst.n_jobs; ++step) {
        int bj = -1, bm = -1;
        std::int64_t bdone = 0;
        for (int j = 0; j < inst.n_jobs; ++j) {
            if (placed[j]) continue;
            for (int m = 0; m < inst.n_machines; ++m) {
                std::int64_t setup = last[m] < 0 ? 0 : inst.s[last[m]][j][m];
                std::int64_t done = load[m] + setup + inst.p[j][m];
                if (bj < 0 || done < bdone) {
                    bj = j;
                    bm = m;
                    bdone = done;
                }
            }
        }
        asg[bm].push_back(bj);
        load[bm] = bdone;
        last[bm] = bj;
        placed[bj] = 1;
    }
    return asg;
}

WarmStart warm_start(const Instance& inst, Objective objective) {
    std::vector<std::pair<std::string, Assignment>> candidates;
    if (inst.has_due_dates()) {
        candidates.emplace_back("gh_edd", gh_edd(inst));
        candidates.emplace_back("gh_slack", gh_slack(inst));
        candidates.emplace_back("atcs", atcs(inst, objective));
    } else {
        candidates.emplace_back("atcs", atcs(inst, objective));
        candidates.emplace_back("spt", spt(inst));
    }
    WarmStart best;
    bool first = true;
    for (auto& [name, asg] : candidates) {
        std::int64_t v = resource_free_value(inst, asg, objective);
        if (first || v < best.value) {
            best.assignment = asg;
            best.value = v;
            best.source = name;
            first = false;
        }
    }
    return best;
}

}  // namespace setsched
