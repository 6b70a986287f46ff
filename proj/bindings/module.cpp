#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "setsched/heuristics.hpp"
#include "setsched/instance.hpp"
#include "setsched/lbbd.hpp"
#include "setsched/neighbourhood.hpp"
#include "setsched/oracle.hpp"
#include "setsched/subproblem.hpp"

#include <limits>

namespace py = pybind11;
using namespace setsched;

namespace {

py::dict schedule_to_dict(const TimedSchedule& sched) {
    py::dict out;
    out["objective"] = objective_name(sched.objective);
    out["value"] = sched.value;
    py::list machines;
    for (const auto& mseq : sched.machines) {
        py::list seq;
        for (const auto& w : mseq) {
            py::dict rec;
            rec["job"] = w.job;
            rec["setup"] = py::make_tuple(w.setup_start, w.setup_end);
            rec["proc"] = py::make_tuple(w.proc_start, w.proc_end);
            seq.append(rec);
        }
        machines.append(seq);
    }
    out["machines"] = machines;
    return out;
}

py::dict run_to_dict(const RunResult& res) {
    py::dict out;
    out["instance"] = res.instance_name;
    out["status"] = res.status == RunStatus::optimal
                        ? "optimal"
                        : (res.status == RunStatus::limit ? "limit" : "infeasible");
    out["lb"] = res.lb;
    out["ub"] = res.ub;
    out["gap_pct"] = res.gap_pct;
    out["time_s"] = res.wall_time_s;
    out["n_integer_solutions"] = res.n_integer_solutions;
    out["n_nogood_cuts"] = res.n_nogood_cuts;
    out["n_ball_cuts"] = res.n_ball_cuts;
    out["effective_r"] = res.effective_r;
    out["csv_row"] = to_csv_row(res);
    if (res.incumbent) out["assignment"] = *res.incumbent;
    if (res.schedule) out["schedule"] = schedule_to_dict(*res.schedule);
    return out;
}

}  // namespace

PYBIND11_MODULE(_setsched, m) {
    m.doc() = "parallel-machine scheduling with a shared setup-technician pool";
    m.attr("__version__") = "0.1.0";

    py::class_<Instance>(m, "Instance")
        .def_readonly("name", &Instance::name)
        .def_readonly("n_jobs", &Instance::n_jobs)
        .def_readonly("n_machines", &Instance::n_machines)
        .def_readonly("R", &Instance::R)
        .def_readonly("p", &Instance::p)
        .def_readonly("s", &Instance::s)
        .def_readonly("d", &Instance::d)
        .def("to_json", [](const Instance& inst) { return to_json(inst); })
        .def("__repr__", [](const Instance& inst) {
            return "<Instance " + inst.name + ": " + std::to_string(inst.n_jobs) + " jobs, " +
                   std::to_string(inst.n_machines) + " machines, R=" +
                   std::to_string(inst.R) + ">";
        });

    m.def(
        "generate_instance",
        [](int n_jobs, int n_machines, const std::string& r_fraction, int alpha, double tau,
           double rho, std::uint64_t seed, const std::string& name) {
            GenParams params;
            params.n_jobs = n_jobs;
            params.n_machines = n_machines;
            if (r_fraction == "2/5") params.r_fraction = RFraction::two_fifths;
            else if (r_fraction == "3/5") params.r_fraction = RFraction::three_fifths;
            else throw std::invalid_argument("r_fraction must be '2/5' or '3/5'");
            params.alpha = alpha;
            params.tau = tau;
            params.rho = rho;
            params.seed = seed;
            params.name = name;
            return generate_instance(params);
        },
        py::arg("n_jobs"), py::arg("n_machines"), py::arg("r_fraction") = "2/5",
        py::arg("alpha") = 0, py::arg("tau") = 0.5, py::arg("rho") = 0.2, py::arg("seed") = 0,
        py::arg("name") = "");

    m.def("instance_from_json", &from_json, py::arg("text"));
    m.def("read_instance", &read_instance, py::arg("path"));
    m.def("write_instance", &write_instance, py::arg("instance"), py::arg("path"));
    m.def("validate_instance", &validate_instance, py::arg("instance"));

    m.def(
        "solve",
        [](const Instance& inst, const std::string& alg, const std::string& mode,
           const std::string& objective, double time_limit, int kopt, bool warm_start,
           bool valid_inequalities, const std::string& backend, int r) {
            RunConfig cfg;
            cfg.algorithm = parse_algorithm(alg);
            cfg.mode = parse_mode(mode);
            cfg.objective = parse_objective(objective);
            cfg.time_limit_s = time_limit;
            cfg.kopt = kopt;
            cfg.warm_start = warm_start;
            cfg.valid_inequalities = valid_inequalities;
            cfg.backend = backend;
            cfg.r_override = r;
            return run_to_dict(solve(inst, cfg));
        },
        py::arg("instance"), py::arg("alg") = "alg2", py::arg("mode") = "iter",
        py::arg("objective") = "sumC",
        py::arg("time_limit") = std::numeric_limits<double>::infinity(), py::arg("kopt") = 0,
        py::arg("warm_start") = true, py::arg("valid_inequalities") = true,
        py::arg("backend") = "builtin", py::arg("r") = 0);

    m.def(
        "solve_subproblem",
        [](const Instance& inst, const Assignment& assignment, const std::string& objective) {
            auto res = solve_subproblem_exact(inst, assignment, parse_objective(objective));
            py::dict out;
            out["value"] = res.value;
            out["schedule"] = schedule_to_dict(res.schedule);
            return out;
        },
        py::arg("instance"), py::arg("assignment"), py::arg("objective") = "sumC");

    m.def(
        "resource_free_value",
        [](const Instance& inst, const Assignment& assignment, const std::string& objective) {
            return resource_free_value(inst, assignment, parse_objective(objective));
        },
        py::arg("instance"), py::arg("assignment"), py::arg("objective") = "sumC");

    m.def(
        "brute_force_optimum",
        [](const Instance& inst, const std::string& objective, int max_jobs) {
            OracleLimits limits;
            limits.max_jobs = max_jobs;
            auto best = brute_force_optimum(inst, parse_objective(objective), limits);
            py::dict out;
            out["value"] = best.value;
            out["assignment"] = best.assignment;
            out["schedule"] = schedule_to_dict(best.schedule);
            return out;
        },
        py::arg("instance"), py::arg("objective") = "sumC", py::arg("max_jobs") = 7);

    m.def(
        "warm_start",
        [](const Instance& inst, const std::string& objective) {
            auto ws = warm_start(inst, parse_objective(objective));
            py::dict out;
            out["assignment"] = ws.assignment;
            out["value"] = ws.value;
            out["source"] = ws.source;
            return out;
        },
        py::arg("instance"), py::arg("objective") = "sumC");

    m.def(
        "explore_neighbourhood",
        [](const Instance& inst, const Assignment& ref, const std::string& objective,
           std::optional<std::int64_t> cutoff, int kopt, int n_threads) {
            auto ex = explore_neighbourhood_best(inst, ref, parse_objective(objective), cutoff,
                                                 kopt, n_threads);
            py::dict out;
            out["n_candidates"] = ex.n_candidates;
            out["n_skipped"] = ex.n_skipped_relaxation;
            out["n_solved"] = ex.n_solved;
            if (ex.value) out["value"] = *ex.value;
            if (ex.winner) out["winner"] = *ex.winner;
            return out;
        },
        py::arg("instance"), py::arg("ref"), py::arg("objective") = "sumC",
        py::arg("cutoff") = std::nullopt, py::arg("kopt") = 0, py::arg("n_threads") = 1);
}
