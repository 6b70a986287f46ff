#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "setsched/encoding.hpp"
#include "setsched/instance.hpp"
#include "setsched/neighbourhood.hpp"
#include "setsched/oracle.hpp"
#include "setsched/subproblem.hpp"
#include "t1.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

using namespace setsched;

namespace {

std::set<Assignment> ball(const Instance& inst, const Assignment& ref, int radius) {
    SlotSolution ref_slots = assignment_to_slots(inst, ref);
    std::set<Assignment> out;
    for_each_assignment(inst.n_jobs, inst.n_machines, [&](const Assignment& asg) {
        if (symmetric_distance(ref_slots, assignment_to_slots(inst, asg)) <= radius)
            out.insert(asg);
        return true;
    });
    out.erase(ref);
    return out;
}

std::set<Assignment> collect(const std::vector<Assignment>& moves) {
    return {moves.begin(), moves.end()};
}

std::set<Assignment> unite(std::initializer_list<std::vector<Assignment>> parts) {
    std::set<Assignment> out;
    for (const auto& part : parts) out.insert(part.begin(), part.end());
    return out;
}

std::vector<Assignment> some_references(int n_jobs, int n_machines, int count,
                                        std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Assignment> refs;
    while (int(refs.size()) < count) {
        Assignment asg;
        asg.resize(std::size_t(n_machines));
        for (int j = 0; j < n_jobs; ++j) asg[rng() % n_machines].push_back(j);
        for (auto& mach : asg) std::shuffle(mach.begin(), mach.end(), rng);
        if (std::find(refs.begin(), refs.end(), asg) == refs.end()) refs.push_back(asg);
    }
    return refs;
}

}  // namespace

TEST_CASE("swaps and shifts are exactly the distance-4 ball") {
    for (int n_jobs : {4, 5}) {
        Instance inst = t1_instance();
        inst.n_jobs = n_jobs;
        inst.p.assign(n_jobs, {2, 2});
        inst.s.assign(n_jobs, std::vector<std::vector<std::int64_t>>(n_jobs, {3, 3}));
        inst.d.assign(n_jobs, 8);
        for (const auto& ref : some_references(n_jobs, 2, 6, 99 + n_jobs)) {
            auto expected = ball(inst, ref, 4);
            auto got = unite({enumerate_internal_swaps(ref), enumerate_starting_job_shifts(ref)});
            CHECK(got == expected);
        }
    }
}

TEST_CASE("every enumerated move lands at its advertised distance") {
    Instance inst = t1_instance();
    Assignment ref = {{0, 1, 2}, {3}};
    SlotSolution ref_slots = assignment_to_slots(inst, ref);

    for (const auto& a : enumerate_internal_swaps(ref))
        CHECK(symmetric_distance(ref_slots, assignment_to_slots(inst, a)) == 4);
    for (const auto& a : enumerate_starting_job_shifts(ref))
        CHECK(symmetric_distance(ref_slots, assignment_to_slots(inst, a)) == 4);
    for (const auto& a : enumerate_kopt_extensions(ref, 6))
        CHECK(symmetric_distance(ref_slots, assignment_to_slots(inst, a)) == 6);
    for (const auto& a : enumerate_job_insertions(ref, 1))
        CHECK(symmetric_distance(ref_slots, assignment_to_slots(inst, a)) == 6);
    for (const auto& a : enumerate_kopt_extensions(ref, 8))
        CHECK(symmetric_distance(ref_slots, assignment_to_slots(inst, a)) <= 8);
}

TEST_CASE("insertions with zero displacement are the starting shifts") {
    for (const auto& ref : some_references(5, 2, 8, 5)) {
        CHECK(collect(enumerate_job_insertions(ref, 0)) ==
              collect(enumerate_starting_job_shifts(ref)));
    }
}

TEST_CASE("three-cycles alone miss part of the distance-6 ball") {
    // two jobs, two machines: no in-machine 3-cycle exists, yet pushing job 0
    // behind job 1 is a valid distance-6 move. The one-displacement
    // insertions supply it.
    Instance inst = t1_instance();
    inst.n_jobs = 2;
    inst.p.assign(2, {2, 2});
    inst.s.assign(2, std::vector<std::vector<std::int64_t>>(2, {3, 3}));
    inst.d.assign(2, 8);

    Assignment ref = {{0}, {1}};
    auto expected = ball(inst, ref, 6);
    auto incomplete = unite({enumerate_internal_swaps(ref), enumerate_starting_job_shifts(ref),
                             enumerate_kopt_extensions(ref, 6)});
    CHECK(incomplete != expected);

    auto complete = unite({enumerate_internal_swaps(ref), enumerate_starting_job_shifts(ref),
                           enumerate_kopt_extensions(ref, 6), enumerate_job_insertions(ref, 1)});
    CHECK(complete == expected);

    Assignment displaced = {{}, {1, 0}};
    CHECK(expected.count(displaced) == 1);
    CHECK(incomplete.count(displaced) == 0);
}

TEST_CASE("adding one-displacement insertions completes the distance-6 ball") {
    for (int n_jobs : {3, 4}) {
        Instance inst = t1_instance();
        inst.n_jobs = n_jobs;
        inst.p.assign(n_jobs, {2, 2});
        inst.s.assign(n_jobs, std::vector<std::vector<std::int64_t>>(n_jobs, {3, 3}));
        inst.d.assign(n_jobs, 8);
        for (const auto& ref : some_references(n_jobs, 2, 5, 77 + n_jobs)) {
            auto expected = ball(inst, ref, 6);
            auto got = unite({enumerate_internal_swaps(ref), enumerate_starting_job_shifts(ref),
                              enumerate_kopt_extensions(ref, 6),
                              enumerate_job_insertions(ref, 1)});
            CHECK(got == expected);
        }
    }
}

TEST_CASE("kopt extension arguments are validated") {
    Assignment ref = {{0, 1}, {2, 3}};
    CHECK_THROWS(enumerate_kopt_extensions(ref, 4));
    CHECK_THROWS(enumerate_kopt_extensions(ref, 7));
    CHECK_THROWS(enumerate_kopt_extensions(ref, 10));
}

TEST_CASE("distance-8 families are distinct and exclude the reference") {
    for (const auto& ref : some_references(5, 2, 4, 31)) {
        auto moves = enumerate_kopt_extensions(ref, 8);
        std::set<Assignment> seen;
        for (const auto& a : moves) {
            CHECK(!(a == ref));
            CHECK(seen.insert(a).second);
        }
    }
}

TEST_CASE("explore matches a direct scan of the same pool") {
    std::mt19937_64 rng(4242);
    for (int round = 0; round < 6; ++round) {
        Instance inst = t1_instance();
        // perturb setups so values split ties in interesting ways
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int m = 0; m < 2; ++m)
                    if (i != j) inst.s[i][j][m] = 1 + std::int64_t(rng() % 4);
        Assignment ref = some_references(4, 2, 1, rng())[0];

        for (int kopt : {0, 6, 8}) {
            std::vector<Assignment> pool = enumerate_internal_swaps(ref);
            auto shifts = enumerate_starting_job_shifts(ref);
            pool.insert(pool.end(), shifts.begin(), shifts.end());
            if (kopt >= 6) {
                auto cyc = enumerate_kopt_extensions(ref, 6);
                auto ins = enumerate_job_insertions(ref, 1);
                pool.insert(pool.end(), cyc.begin(), cyc.end());
                pool.insert(pool.end(), ins.begin(), ins.end());
            }
            if (kopt == 8) {
                auto ext = enumerate_kopt_extensions(ref, 8);
                pool.insert(pool.end(), ext.begin(), ext.end());
            }
            std::set<Assignment> dedup(pool.begin(), pool.end());
            dedup.erase(ref);

            auto best = std::numeric_limits<std::int64_t>::max();
            for (const auto& a : dedup) {
                auto r = solve_subproblem_exact(inst, a, Objective::sum_completion);
                REQUIRE(!r.pruned);
                best = std::min(best, r.value);
            }

            auto got = explore_neighbourhood_best(inst, ref, Objective::sum_completion,
                                                  std::nullopt, kopt, 1);
            CHECK(got.n_candidates == int(dedup.size()));
            REQUIRE(got.value.has_value());
            CHECK(*got.value == best);
            REQUIRE(got.winner.has_value());
            auto check = solve_subproblem_exact(inst, *got.winner, Objective::sum_completion);
            REQUIRE(!check.pruned);
            CHECK(check.value == best);
        }
    }
}

TEST_CASE("cutoffs hide values at or above the bar") {
    Instance inst = t1_instance();
    Assignment ref = t1_reference();
    auto unconstrained = explore_neighbourhood_best(inst, ref, Objective::sum_completion,
                                                    std::nullopt, 0, 1);
    REQUIRE(unconstrained.value.has_value());
    std::int64_t eta = *unconstrained.value;
    CHECK(eta == 21);  // every neighbour of the balanced split times at 21 too

    auto cut = explore_neighbourhood_best(inst, ref, Objective::sum_completion, eta, 0, 1);
    CHECK(!cut.value.has_value());
    CHECK(!cut.winner.has_value());

    auto loose = explore_neighbourhood_best(inst, ref, Objective::sum_completion, eta + 1, 0, 1);
    REQUIRE(loose.value.has_value());
    CHECK(*loose.value == eta);
}

TEST_CASE("relaxation pruning and thread count change nothing observable") {
    std::mt19937_64 rng(777);
    for (int round = 0; round < 4; ++round) {
        GenParams g;
        g.n_jobs = 5;
        g.n_machines = 2;
        g.alpha = round % 3;
        g.seed = 1000 + round;
        Instance inst = generate_instance(g);
        inst.R = 1;
        Assignment ref = some_references(5, 2, 1, rng())[0];

        for (auto cutoff : {std::optional<std::int64_t>{},
                            std::optional<std::int64_t>{resource_free_value(
                                inst, ref, Objective::sum_completion)}}) {
            auto a = explore_neighbourhood_best(inst, ref, Objective::sum_completion, cutoff, 6,
                                                1, true);
            auto b = explore_neighbourhood_best(inst, ref, Objective::sum_completion, cutoff, 6,
                                                1, false);
            auto c = explore_neighbourhood_best(inst, ref, Objective::sum_completion, cutoff, 6,
                                                4, true);
            auto d = explore_neighbourhood_best(inst, ref, Objective::sum_completion, cutoff, 6,
                                                4, false);

            CHECK(a.value == b.value);
            CHECK(a.value == c.value);
            CHECK(a.value == d.value);
            CHECK(a.winner == b.winner);
            CHECK(a.winner == c.winner);
            CHECK(a.winner == d.winner);
            CHECK(b.n_skipped_relaxation == 0);
            CHECK(a.n_candidates == b.n_candidates);
            if (a.value) {
                auto r = solve_subproblem_exact(inst, *a.winner, Objective::sum_completion);
                REQUIRE(!r.pruned);
                CHECK(r.value == *a.value);
            }
        }
    }
}
