#include "setsched/neighbourhood.hpp"

#include <atomic>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace setsched {

std::vector<Assignment> enumerate_internal_swaps(const Assignment& asg) {
    std::vector<Assignment> out;
    for (std::size_t m = 0; m < asg.size(); ++m)
        for (std::size_t a = 0; a + 1 < asg[m].size(); ++a)
            for (std::size_t b = a + 1; b < asg[m].size(); ++b) {
                Assignment next = asg;
                std::swap(next[m][a], next[m][b]);
                out.push_back(std::move(next));
            }
    return out;
}

std::vector<Assignment> enumerate_starting_job_shifts(const Assignment& asg) {
    return enumerate_job_insertions(asg, 0);
}

// Slots pack at the high end, so removing a machine's front or inserting a
// new front leaves every other job's slot untouched. Any other removal or
// insertion point forces exactly one bystander to change slot: on the donor
// the old front has to drop into the freed slot (everyone between keeps
// theirs), on the receiver the job whose slot the mover takes pops out to
// the new front slot. Those are the only single-displacement shapes.
std::vector<Assignment> enumerate_job_insertions(const Assignment& asg, int displaced) {
    if (displaced != 0 && displaced != 1)
        throw std::invalid_argument("enumerate_job_insertions: displaced must be 0 or 1");
    std::vector<Assignment> out;
    for (std::size_t m = 0; m < asg.size(); ++m) {
        if (asg[m].empty()) continue;
        for (std::size_t m2 = 0; m2 < asg.size(); ++m2) {
            if (m2 == m) continue;
            if (displaced == 0) {
                Assignment next = asg;
                int job = next[m].front();
                next[m].erase(next[m].begin());
                next[m2].insert(next[m2].begin(), job);
                out.push_back(std::move(next));
                continue;
            }
            // donor side displaced: mover from position q >= 1, front drops
            // into its slot (sequence position q - 1), mover leads m2
            for (std::size_t q = 1; q < asg[m].size(); ++q) {
                Assignment next = asg;
                int job = next[m][q];
                int front = next[m][0];
                next[m].erase(next[m].begin() + q);
                next[m].erase(next[m].begin());
                next[m].insert(next[m].begin() + (q - 1), front);
                next[m2].insert(next[m2].begin(), job);
                out.push_back(std::move(next));
            }
            // receiver side displaced: the front of m takes the slot of
            // m2's position t, whose job pops out to the new front slot
            for (std::size_t t = 0; t < asg[m2].size(); ++t) {
                Assignment next = asg;
                int job = next[m].front();
                next[m].erase(next[m].begin());
                int popped = next[m2][t];
                next[m2][t] = job;
                next[m2].insert(next[m2].begin(), popped);
                out.push_back(std::move(next));
            }
        }
    }
    return out;
}

namespace {

void push_three_cycles(const Assignment& asg, std::vector<Assignment>& out) {
    for (std::size_t m = 0; m < asg.size(); ++m)
        for (std::size_t a = 0; a + 2 < asg[m].size(); ++a)
            for (std::size_t b = a + 1; b + 1 < asg[m].size(); ++b)
                for (std::size_t c = b + 1; c < asg[m].size(); ++c) {
                    Assignment fwd = asg;  // a<-b, b<-c, c<-a
                    fwd[m][a] = asg[m][b];
                    fwd[m][b] = asg[m][c];
                    fwd[m][c] = asg[m][a];
                    out.push_back(std::move(fwd));
                    Assignment rev = asg;  // a<-c, b<-a, c<-b
                    rev[m][a] = asg[m][c];
                    rev[m][b] = asg[m][a];
                    rev[m][c] = asg[m][b];
                    out.push_back(std::move(rev));
                }
}

void push_distance_eight(const Assignment& asg, std::vector<Assignment>& out) {
    struct SwapMove {
        std::size_t m, a, b;
    };
    std::vector<SwapMove> swaps;
    for (std::size_t m = 0; m < asg.size(); ++m)
        for (std::size_t a = 0; a + 1 < asg[m].size(); ++a)
            for (std::size_t b = a + 1; b < asg[m].size(); ++b) swaps.push_back({m, a, b});

    // pairs of swaps touching four distinct slots
    for (std::size_t u = 0; u < swaps.size(); ++u)
        for (std::size_t v = u + 1; v < swaps.size(); ++v) {
            const auto &s1 = swaps[u], &s2 = swaps[v];
            if (s1.m == s2.m && (s1.a == s2.a || s1.a == s2.b || s1.b == s2.a || s1.b == s2.b))
                continue;
            Assignment next = asg;
            std::swap(next[s1.m][s1.a], next[s1.m][s1.b]);
            std::swap(next[s2.m][s2.a], next[s2.m][s2.b]);
            out.push_back(std::move(next));
        }

    // two starting shifts in sequence
    for (const Assignment& mid : enumerate_job_insertions(asg, 0))
        for (Assignment& next : enumerate_job_insertions(mid, 0)) out.push_back(std::move(next));

    // one starting shift plus a swap that avoids the moved job
    for (std::size_t m = 0; m < asg.size(); ++m) {
        if (asg[m].empty()) continue;
        for (std::size_t m2 = 0; m2 < asg.size(); ++m2) {
            if (m2 == m) continue;
            Assignment mid = asg;
            int job = mid[m].front();
            mid[m].erase(mid[m].begin());
            mid[m2].insert(mid[m2].begin(), job);
            for (std::size_t mm = 0; mm < mid.size(); ++mm)
                for (std::size_t a = 0; a + 1 < mid[mm].size(); ++a)
                    for (std::size_t b = a + 1; b < mid[mm].size(); ++b) {
                        if (mm == m2 && a == 0) continue;  // would touch the shifted job
                        Assignment next = mid;
                        std::swap(next[mm][a], next[mm][b]);
                        out.push_back(std::move(next));
                    }
        }
    }

    // in-machine 4-cycles: all six cyclic orders of four chosen slots
    static const int cyc[6][4] = {{1, 2, 3, 0}, {1, 3, 0, 2}, {2, 0, 3, 1},
                                  {2, 3, 1, 0}, {3, 0, 1, 2}, {3, 2, 0, 1}};
    for (std::size_t m = 0; m < asg.size(); ++m) {
        const auto& seq = asg[m];
        for (std::size_t a = 0; a + 3 < seq.size(); ++a)
            for (std::size_t b = a + 1; b + 2 < seq.size(); ++b)
                for (std::size_t c = b + 1; c + 1 < seq.size(); ++c)
                    for (std::size_t d = c + 1; d < seq.size(); ++d) {
                        std::size_t pos[4] = {a, b, c, d};
                        for (const auto& perm : cyc) {
                            Assignment next = asg;
                            for (int t = 0; t < 4; ++t)
                                next[m][pos[t]] = seq[pos[perm[t]]];
                            out.push_back(std::move(next));
                        }
                    }
    }

    // cross-machine exchange of two jobs in place
    for (std::size_t m = 0; m < asg.size(); ++m)
        for (std::size_t m2 = m + 1; m2 < asg.size(); ++m2)
            for (std::size_t r = 0; r < asg[m].size(); ++r)
                for (std::size_t r2 = 0; r2 < asg[m2].size(); ++r2) {
                    Assignment next = asg;
                    std::swap(next[m][r], next[m2][r2]);
                    out.push_back(std::move(next));
                }
}

}  // namespace

std::vector<Assignment> enumerate_kopt_extensions(const Assignment& asg, int k) {
    std::vector<Assignment> out;
    if (k == 6) {
        push_three_cycles(asg, out);
    } else if (k == 8) {
        push_distance_eight(asg, out);
        std::set<Assignment> seen;
        std::vector<Assignment> unique;
        for (Assignment& a : out)
            if (a != asg && seen.insert(a).second) unique.push_back(std::move(a));
        out = std::move(unique);
    } else {
        throw std::invalid_argument("enumerate_kopt_extensions: k must be 6 or 8");
    }
    return out;
}

ExploreResult explore_neighbourhood_best(const Instance& inst, const Assignment& ref,
                                         Objective objective,
                                         std::optional<std::int64_t> cutoff, int kopt,
                                         int n_threads, bool prune_with_relaxation) {
    check_assignment(inst, ref);
    if (kopt != 0 && kopt != 4 && kopt != 6 && kopt != 8)
        throw std::invalid_argument("explore_neighbourhood_best: kopt must be 0, 4, 6 or 8");

    std::vector<Assignment> pool = enumerate_internal_swaps(ref);
    for (Assignment& a : enumerate_job_insertions(ref, 0)) pool.push_back(std::move(a));
    if (kopt >= 6) {
        for (Assignment& a : enumerate_kopt_extensions(ref, 6)) pool.push_back(std::move(a));
        for (Assignment& a : enumerate_job_insertions(ref, 1)) pool.push_back(std::move(a));
    }
    if (kopt == 8)
        for (Assignment& a : enumerate_kopt_extensions(ref, 8)) pool.push_back(std::move(a));

    std::set<Assignment> seen;
    std::vector<Assignment> candidates;
    for (Assignment& a : pool)
        if (a != ref && seen.insert(a).second) candidates.push_back(std::move(a));

    ExploreResult result;
    result.n_candidates = int(candidates.size());

    constexpr std::int64_t k_none = std::numeric_limits<std::int64_t>::max();
    std::mutex lock;
    std::int64_t best = cutoff ? *cutoff : k_none;
    std::size_t best_idx = std::size_t(-1);
    std::optional<TimedSchedule> best_sched;
    std::atomic<std::size_t> cursor{0};
    std::atomic<int> skipped{0}, solved{0};

    auto worker = [&] {
        for (;;) {
            std::size_t idx = cursor.fetch_add(1);
            if (idx >= candidates.size()) return;
            const Assignment& cand = candidates[idx];
            std::int64_t bar;
            {
                std::lock_guard<std::mutex> g(lock);
                bar = best;
            }
            // strict: a neighbour whose chain bound equals the bar can still
            // tie and win on index, so only a strictly larger bound skips
            if (prune_with_relaxation && bar != k_none &&
                resource_free_value(inst, cand, objective) > bar) {
                skipped.fetch_add(1);
                continue;
            }
            // solve one past the bar so equal values stay comparable; ties
            // then resolve by candidate index whatever the thread timing
            auto res = solve_subproblem_exact(
                inst, cand, objective,
                bar == k_none ? std::nullopt : std::optional<std::int64_t>(bar + 1));
            solved.fetch_add(1);
            if (res.pruned) continue;
            std::lock_guard<std::mutex> g(lock);
            bool improves = res.value < best ||
                            (res.value == best && best_idx != std::size_t(-1) && idx < best_idx);
            if (improves) {
                best = res.value;
                best_idx = idx;
                best_sched = res.schedule;
            }
        }
    };

    int spawn = std::max(1, n_threads);
    if (spawn == 1 || candidates.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        int count = int(std::min<std::size_t>(spawn, candidates.size()));
        threads.reserve(count);
        for (int t = 0; t < count; ++t) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    result.n_skipped_relaxation = skipped.load();
    result.n_solved = solved.load();
    if (best_idx != std::size_t(-1)) {
        result.value = best;
        result.winner = candidates[best_idx];
        result.schedule = best_sched;
    }
    return result;
}

}  // namespace setsched
