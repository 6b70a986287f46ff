#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "setsched/instance.hpp"
#include "setsched/oracle.hpp"
#include "setsched/subproblem.hpp"
#include "pure_enum.hpp"
#include "t1.hpp"

#include <cstdio>
#include <filesystem>
#include <random>
#include <vector>

using namespace setsched;

namespace {

// Small numbers keep the start-time enumeration of pure_enum tractable.
Instance crafted(std::mt19937_64& rng, int n_jobs, int n_machines) {
    Instance inst;
    inst.name = "crafted";
    inst.n_jobs = n_jobs;
    inst.n_machines = n_machines;
    inst.R = 1 + int(rng() % 2);
    if (inst.R > n_machines) inst.R = n_machines;
    inst.p.assign(n_jobs, std::vector<std::int64_t>(n_machines));
    inst.s.assign(n_jobs, std::vector<std::vector<std::int64_t>>(
                              n_jobs, std::vector<std::int64_t>(n_machines, 0)));
    inst.d.resize(n_jobs);
    for (int j = 0; j < n_jobs; ++j) {
        for (int m = 0; m < n_machines; ++m) inst.p[j][m] = 1 + std::int64_t(rng() % 3);
        inst.d[j] = 1 + std::int64_t(rng() % 6);
        for (int i = 0; i < n_jobs; ++i)
            if (i != j)
                for (int m = 0; m < n_machines; ++m) inst.s[i][j][m] = std::int64_t(rng() % 3);
    }
    return inst;
}

Assignment random_assignment(std::mt19937_64& rng, int n_jobs, int n_machines) {
    Assignment asg;
    asg.resize(std::size_t(n_machines));
    for (int j = 0; j < n_jobs; ++j) asg[rng() % n_machines].push_back(j);
    return asg;
}

}  // namespace

TEST_CASE("frozen reference values for the four-job fixture") {
    Instance inst = t1_instance();
    Assignment asg = t1_reference();

    CHECK(resource_free_value(inst, asg, Objective::sum_completion) == 18);

    auto r1 = solve_subproblem_exact(inst, asg, Objective::sum_completion);
    REQUIRE(!r1.pruned);
    CHECK(r1.value == 21);  // one technician serialises the two setups
    CHECK(verify_timed_schedule(inst, r1.schedule).empty());

    Instance relaxed = inst;
    relaxed.R = 2;
    auto r2 = solve_subproblem_exact(relaxed, asg, Objective::sum_completion);
    REQUIRE(!r2.pruned);
    CHECK(r2.value == 18);  // both setups in parallel: chained timing is feasible

    auto rt = solve_subproblem_exact(inst, asg, Objective::sum_tardiness);
    REQUIRE(!rt.pruned);
    CHECK(rt.value == 2);
}

TEST_CASE("branch and bound agrees with pure start-time enumeration") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 40) {
        int n_jobs = 2 + int(rng() % 3);
        int n_machines = 1 + int(rng() % 2);
        Instance inst = crafted(rng, n_jobs, n_machines);
        Assignment asg = random_assignment(rng, n_jobs, n_machines);
        for (auto objective : {Objective::sum_completion, Objective::sum_tardiness}) {
            auto expect = pure_enum::optimum(inst, asg, objective);
            auto got = solve_subproblem_exact(inst, asg, objective);
            REQUIRE(!got.pruned);
            CHECK(got.value == expect);
            CHECK(verify_timed_schedule(inst, got.schedule).empty());
            CHECK(schedule_assignment(got.schedule, inst.n_machines) == asg);
            ++done;
        }
    }
}

TEST_CASE("timing never beats the chained relaxation and relaxes with R") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10; ++t) {
        Instance inst = crafted(rng, 4, 2);
        inst.R = 1;
        Assignment asg = random_assignment(rng, 4, 2);
        std::int64_t chained = resource_free_value(inst, asg, Objective::sum_completion);
        auto tight = solve_subproblem_exact(inst, asg, Objective::sum_completion);
        REQUIRE(!tight.pruned);
        CHECK(tight.value >= chained);

        Instance loose = inst;
        loose.R = 2;
        auto relaxed = solve_subproblem_exact(loose, asg, Objective::sum_completion);
        REQUIRE(!relaxed.pruned);
        CHECK(relaxed.value <= tight.value);
        CHECK(relaxed.value >= chained);  // R = M: exactly the chained timing
        CHECK(relaxed.value == chained);
    }
}

TEST_CASE("cutoff semantics: pruned means proven no better") {
    Instance inst = t1_instance();
    Assignment asg = t1_reference();

    auto hit = solve_subproblem_exact(inst, asg, Objective::sum_completion, 21);
    CHECK(hit.pruned);  // optimum is exactly the cutoff

    auto below = solve_subproblem_exact(inst, asg, Objective::sum_completion, 22);
    REQUIRE(!below.pruned);
    CHECK(below.value == 21);

    auto large = solve_subproblem_exact(inst, asg, Objective::sum_completion, 1000);
    REQUIRE(!large.pruned);
    CHECK(large.value == 21);
}

TEST_CASE("empty machines and single jobs time trivially") {
    Instance inst = t1_instance();
    auto r = solve_subproblem_exact(inst, {{0, 1, 2, 3}, {}}, Objective::sum_completion);
    REQUIRE(!r.pruned);
    CHECK(r.value == 2 + 7 + 12 + 17);  // single machine: no technician contention
    CHECK(r.schedule.machines[1].empty());
}

TEST_CASE("verifier pinpoints each constraint family") {
    Instance inst = t1_instance();
    auto base = solve_subproblem_exact(inst, t1_reference(), Objective::sum_completion);
    REQUIRE(!base.pruned);
    REQUIRE(verify_timed_schedule(inst, base.schedule).empty());

    auto tamper = [&](auto&& mutate, const char* family) {
        TimedSchedule bad = base.schedule;
        mutate(bad);
        auto violations = verify_timed_schedule(inst, bad);
        REQUIRE(!violations.empty());
        bool named = false;
        for (const auto& v : violations)
            if (v.find(family) != std::string::npos) named = true;
        CHECK_MESSAGE(named, "expected a ", family, " violation");
    };

    tamper([](TimedSchedule& s) { s.machines[0][1].proc_start += 1; }, "startAtEnd");
    tamper(
        [](TimedSchedule& s) {
            // slide the whole second window one unit into its predecessor
            auto& w = s.machines[0][1];
            auto shift = w.setup_start - s.machines[0][0].proc_end + 1;
            w.setup_start -= shift;
            w.setup_end -= shift;
            w.proc_start -= shift;
            w.proc_end -= shift;
        },
        "previous");
    tamper([](TimedSchedule& s) { s.machines[0][0].proc_end -= 1; }, "duration");
    tamper([](TimedSchedule& s) { s.machines[0][0].job = 2; }, "assignment");
    tamper([](TimedSchedule& s) { s.value += 5; }, "value");
    tamper(
        [](TimedSchedule& s) {
            // drag the second setups together so two technicians would be needed
            for (auto& mach : s.machines) {
                auto& w = mach[1];
                auto len = w.setup_end - w.setup_start;
                w.setup_start = mach[0].proc_end;
                w.setup_end = w.setup_start + len;
                w.proc_start = w.setup_end;
                w.proc_end = w.proc_start + 2;
            }
            s.value = 0;
            for (auto& mach : s.machines)
                for (auto& w : mach) s.value += w.proc_end;
        },
        "Cumulative");
}

TEST_CASE("schedules survive the json round trip") {
    namespace fs = std::filesystem;
    Instance inst = t1_instance();
    auto r = solve_subproblem_exact(inst, t1_reference(), Objective::sum_tardiness);
    REQUIRE(!r.pruned);

    std::string text = schedule_to_json(r.schedule, inst.name);
    TimedSchedule back = schedule_from_json(text);
    CHECK(back.objective == r.schedule.objective);
    CHECK(back.value == r.schedule.value);
    REQUIRE(back.machines.size() == r.schedule.machines.size());
    for (std::size_t m = 0; m < back.machines.size(); ++m) {
        REQUIRE(back.machines[m].size() == r.schedule.machines[m].size());
        for (std::size_t i = 0; i < back.machines[m].size(); ++i) {
            CHECK(back.machines[m][i].job == r.schedule.machines[m][i].job);
            CHECK(back.machines[m][i].setup_start == r.schedule.machines[m][i].setup_start);
            CHECK(back.machines[m][i].proc_end == r.schedule.machines[m][i].proc_end);
        }
    }

    auto path = (fs::temp_directory_path() / "setsched_sched.json").string();
    write_schedule(r.schedule, inst.name, path);
    TimedSchedule from_file = read_schedule(path);
    CHECK(from_file.value == r.schedule.value);
    std::remove(path.c_str());
}

TEST_CASE("bad assignments are rejected before timing") {
    Instance inst = t1_instance();
    CHECK_THROWS(solve_subproblem_exact(inst, {{0, 1}, {1, 2, 3}}, Objective::sum_completion));
    CHECK_THROWS(solve_subproblem_exact(inst, {{0, 1, 2, 3}}, Objective::sum_completion));
    Instance no_dues = inst;
    no_dues.d.clear();
    CHECK_THROWS(solve_subproblem_exact(no_dues, t1_reference(), Objective::sum_tardiness));
}
