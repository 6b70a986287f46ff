#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "setsched/instance.hpp"
#include "setsched/lbbd.hpp"
#include "setsched/oracle.hpp"
#include "setsched/subproblem.hpp"
#include "t1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

using namespace setsched;

namespace {

RunConfig config(Algorithm alg, Mode mode, Objective objective = Objective::sum_completion) {
    RunConfig c;
    c.algorithm = alg;
    c.mode = mode;
    c.objective = objective;
    return c;
}

}  // namespace

TEST_CASE("name parsing round trips and rejects junk") {
    CHECK(parse_algorithm("alg1") == Algorithm::alg1);
    CHECK(parse_algorithm("alg2") == Algorithm::alg2);
    CHECK(parse_mode("bnc") == Mode::bnc);
    CHECK(parse_mode("iter") == Mode::iter);
    CHECK(algorithm_name(Algorithm::alg2) == "alg2");
    CHECK(mode_name(Mode::bnc) == "bnc");
    CHECK_THROWS(parse_algorithm("alg3"));
    CHECK_THROWS(parse_mode("lazy"));
}

TEST_CASE("gap arithmetic and the frozen two-decimal strings") {
    CHECK(compute_gap(900.0, 966.0) == doctest::Approx(6600.0 / 966.0));
    CHECK(compute_gap(3497.0, 3627.0) == doctest::Approx(13000.0 / 3627.0));

    std::ostringstream a, b;
    a.precision(2);
    a << std::fixed << compute_gap(900.0, 966.0);
    CHECK(a.str() == "6.83");
    b.precision(2);
    b << std::fixed << compute_gap(3497.0, 3627.0);
    CHECK(b.str() == "3.58");

    CHECK(compute_gap(5.0, 5.0) == 0.0);
    CHECK(compute_gap(7.0, 5.0) == 0.0);  // lb overshoot clamps
    CHECK(compute_gap(0.0, 0.0) == 0.0);
    CHECK(compute_gap(0.0, std::numeric_limits<double>::infinity()) == 100.0);
    CHECK_THROWS(compute_gap(-1.0, 5.0));
    CHECK_THROWS(compute_gap(1.0, 0.0));
}

TEST_CASE("all four algorithm and mode pairs solve the fixture exactly") {
    Instance inst = t1_instance();
    for (auto alg : {Algorithm::alg1, Algorithm::alg2}) {
        for (auto mode : {Mode::iter, Mode::bnc}) {
            auto r = solve(inst, config(alg, mode));
            REQUIRE(r.status == RunStatus::optimal);
            CHECK(r.ub == doctest::Approx(21.0));
            CHECK(r.lb == doctest::Approx(21.0));
            CHECK(r.gap_pct == doctest::Approx(0.0));
            REQUIRE(r.incumbent.has_value());
            REQUIRE(r.schedule.has_value());
            CHECK(verify_timed_schedule(inst, *r.schedule).empty());
            auto check = solve_subproblem_exact(inst, *r.incumbent, Objective::sum_completion);
            REQUIRE(!check.pruned);
            CHECK(check.value == 21);
            CHECK(r.effective_r == 1);
            CHECK(r.n_model_rows > 0);
            CHECK(r.n_model_cols > 0);

            auto t = solve(inst, config(alg, mode, Objective::sum_tardiness));
            REQUIRE(t.status == RunStatus::optimal);
            CHECK(t.ub == doctest::Approx(2.0));
        }
    }
}

TEST_CASE("optima match the oracle on generated instances") {
    for (std::uint64_t seed : {11, 12}) {
        GenParams g;
        g.n_jobs = 5;
        g.n_machines = 2;
        g.alpha = int(seed) % 3;
        g.seed = seed;
        Instance inst = generate_instance(g);
        auto expect = brute_force_optimum(inst, Objective::sum_completion);
        for (auto alg : {Algorithm::alg1, Algorithm::alg2}) {
            auto r = solve(inst, config(alg, Mode::iter));
            REQUIRE(r.status == RunStatus::optimal);
            CHECK(std::llround(r.ub) == expect.value);
        }
    }
}

TEST_CASE("r_override widens or narrows the technician pool") {
    Instance inst = t1_instance();
    auto base = solve(inst, config(Algorithm::alg2, Mode::iter));
    RunConfig wide = config(Algorithm::alg2, Mode::iter);
    wide.r_override = 2;
    auto relaxed = solve(inst, wide);
    REQUIRE(relaxed.status == RunStatus::optimal);
    CHECK(relaxed.effective_r == 2);
    CHECK(relaxed.ub == doctest::Approx(18.0));
    CHECK(relaxed.ub <= base.ub);

    RunConfig bad = wide;
    bad.r_override = 3;
    CHECK_THROWS(solve(inst, bad));
}

TEST_CASE("config validation happens before any solving") {
    Instance inst = t1_instance();
    RunConfig odd = config(Algorithm::alg2, Mode::iter);
    odd.kopt = 5;
    CHECK_THROWS(solve(inst, odd));

    // kopt only matters for the ball-cut algorithm; the point-cut one ignores it
    RunConfig alg1_kopt = config(Algorithm::alg1, Mode::iter);
    alg1_kopt.kopt = 6;
    auto ignored = solve(inst, alg1_kopt);
    CHECK(ignored.status == RunStatus::optimal);
    CHECK(ignored.n_ball_cuts == 0);

    Instance no_dues = inst;
    no_dues.d.clear();
    CHECK_THROWS(solve(no_dues, config(Algorithm::alg1, Mode::iter, Objective::sum_tardiness)));

    RunConfig unknown = config(Algorithm::alg1, Mode::iter);
    unknown.backend = "gurobi";
    CHECK_THROWS(solve(inst, unknown));
}

TEST_CASE("wider neighbourhood radii keep the optimum") {
    Instance inst = t1_instance();
    for (int kopt : {6, 8}) {
        RunConfig c = config(Algorithm::alg2, Mode::iter);
        c.kopt = kopt;
        auto r = solve(inst, c);
        REQUIRE(r.status == RunStatus::optimal);
        CHECK(r.ub == doctest::Approx(21.0));
    }
}

TEST_CASE("a vanishing time limit reports limit with a safe bound pair") {
    GenParams g;
    g.n_jobs = 7;
    g.n_machines = 2;
    g.seed = 4;
    Instance inst = generate_instance(g);
    RunConfig c = config(Algorithm::alg1, Mode::iter);
    c.time_limit_s = 1e-4;
    auto r = solve(inst, c);
    CHECK(r.status == RunStatus::limit);
    CHECK(r.lb <= r.ub);
    CHECK(r.gap_pct == doctest::Approx(compute_gap(r.lb, r.ub)));
    CHECK(r.wall_time_s >= 0.0);
}

TEST_CASE("cut ledger records pricing and exploration") {
    Instance inst = t1_instance();
    auto r1 = solve(inst, config(Algorithm::alg1, Mode::iter));
    CHECK(r1.n_ball_cuts == 0);
    CHECK(r1.n_integer_solutions >= 1);
    for (const auto& rec : r1.cut_ledger) {
        CHECK(rec.kind == Cut::Kind::nogood);
        CHECK(rec.n_neighbours == 0);
        // pricing against the running upper bound may stop early; when it
        // finishes, the exact value can only sit above the relaxed one
        if (rec.exact_value) CHECK(*rec.exact_value >= rec.master_value);
        CHECK(rec.ub_before >= rec.master_value);
    }

    auto r2 = solve(inst, config(Algorithm::alg2, Mode::iter));
    bool explored = false;
    for (const auto& rec : r2.cut_ledger)
        if (rec.kind == Cut::Kind::local_branching) {
            explored = true;
            CHECK(rec.n_neighbours > 0);
            CHECK(rec.n_solved + rec.n_skipped <= rec.n_neighbours);
        }
    CHECK(r2.n_ball_cuts == int(std::count_if(
                                r2.cut_ledger.begin(), r2.cut_ledger.end(),
                                [](const CutRecord& c) {
                                    return c.kind == Cut::Kind::local_branching;
                                })));
    CHECK(explored == (r2.n_ball_cuts > 0));
}

TEST_CASE("csv rows follow the fixed column contract") {
    CHECK(csv_header() == "instance,R,alg,mode,objective,time_s,N,LB,UB,gap_pct");
    CHECK(csv_comment("0.3.1", 17) == "# setsched 0.3.1 seed=17");

    Instance inst = t1_instance();
    auto r = solve(inst, config(Algorithm::alg2, Mode::bnc));
    REQUIRE(r.status == RunStatus::optimal);
    std::string row = to_csv_row(r);

    std::vector<std::string> fields;
    std::stringstream ss(row);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 10);
    CHECK(fields[0] == "T1");
    CHECK(fields[1] == "1");
    CHECK(fields[2] == "alg2");
    CHECK(fields[3] == "bnc");
    CHECK(fields[4] == "sumC");
    CHECK(fields[6] == std::to_string(r.n_integer_solutions));
    CHECK(fields[7] == "21");
    CHECK(fields[8] == "21");
    CHECK(fields[9] == "0.00");
    // time has three decimals
    CHECK(fields[5].find('.') != std::string::npos);
    CHECK(fields[5].size() - fields[5].find('.') == 4);
}

TEST_CASE("iterative and lazy modes agree with each other") {
    GenParams g;
    g.n_jobs = 5;
    g.n_machines = 2;
    g.alpha = 2;
    g.seed = 77;
    Instance inst = generate_instance(g);
    auto a = solve(inst, config(Algorithm::alg2, Mode::iter));
    auto b = solve(inst, config(Algorithm::alg2, Mode::bnc));
    REQUIRE(a.status == RunStatus::optimal);
    REQUIRE(b.status == RunStatus::optimal);
    CHECK(a.ub == doctest::Approx(b.ub));
}

TEST_CASE("warm start only ever lowers the initial incumbent") {
    GenParams g;
    g.n_jobs = 6;
    g.n_machines = 2;
    g.seed = 31;
    Instance inst = generate_instance(g);
    RunConfig with = config(Algorithm::alg2, Mode::iter);
    RunConfig without = with;
    without.warm_start = false;
    auto a = solve(inst, with);
    auto b = solve(inst, without);
    REQUIRE(a.status == RunStatus::optimal);
    REQUIRE(b.status == RunStatus::optimal);
    CHECK(a.ub == doctest::Approx(b.ub));
}
