#include "setsched/subproblem.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace setsched {

namespace {

constexpr std::int64_t k_inf = std::numeric_limits<std::int64_t>::max();

struct Task {
    int job = 0;
    std::int64_t setup = 0;
    std::int64_t proc = 0;
    std::int64_t due = 0;
};

// Depth-first search over event-aligned schedules. Processing never waits
// (it follows its setup immediately and occupies only its own machine), so
// the only decisions are the start times of positive-length setups. For a
// regular objective some optimal schedule starts every such setup either at
// its machine-ready time or at the completion of another setup, hence
// branching only at those event times is exhaustive. Zero-length setups
// consume no technician and are started greedily.
struct Search {
    Objective objective;
    int n_machines = 0;
    int R = 1;
    std::vector<std::vector<Task>> chain;

    std::vector<int> pos;             // next position per machine
    std::vector<std::int64_t> ready;  // completion of the machine's last started job
    std::vector<std::int64_t> active;         // end times of started positive setups
    std::vector<std::vector<std::int64_t>> start;  // chosen setup starts
    std::int64_t acc = 0;

    std::int64_t cutoff = k_inf;  // exclusive
    std::int64_t best = k_inf;
    std::vector<std::vector<std::int64_t>> best_start;
    std::int64_t nodes = 0;

    std::int64_t gain(const Task& t, std::int64_t proc_end) const {
        return objective == Objective::sum_completion
                   ? proc_end
                   : std::max<std::int64_t>(0, proc_end - t.due);
    }

    // Completion contributions if machine m never waited for a technician
    // again; a valid lower bound on any continuation.
    std::int64_t chain_bound(int m) const {
        std::int64_t c = ready[m], total = 0;
        for (std::size_t r = pos[m]; r < chain[m].size(); ++r) {
            c += chain[m][r].setup + chain[m][r].proc;
            total += gain(chain[m][r], c);
        }
        return total;
    }

    int busy(std::int64_t t) const {
        int c = 0;
        for (auto e : active) c += e > t;
        return c;
    }

    std::int64_t earliest_start(int m, std::int64_t floor) const {
        std::int64_t t = std::max(ready[m], floor);
        if (busy(t) < R) return t;
        std::int64_t release = k_inf;  // saturated: wait for the next setup end
        for (auto e : active)
            if (e > t) release = std::min(release, e);
        return release;
    }

    void dfs(std::int64_t floor, int last_machine) {
        ++nodes;
        auto saved_pos = pos;
        auto saved_ready = ready;
        std::int64_t saved_acc = acc;

        for (int m = 0; m < n_machines; ++m)
            while (pos[m] < int(chain[m].size()) && chain[m][pos[m]].setup == 0) {
                const Task& t = chain[m][pos[m]];
                start[m][pos[m]] = ready[m];
                std::int64_t pe = ready[m] + t.proc;
                acc += gain(t, pe);
                ready[m] = pe;
                ++pos[m];
            }

        std::int64_t limit = std::min(best, cutoff);
        bool done = true;
        std::int64_t bound = acc;
        for (int m = 0; m < n_machines; ++m)
            if (pos[m] < int(chain[m].size())) {
                done = false;
                bound += chain_bound(m);
            }

        if (done) {
            if (acc < limit) {
                best = acc;
                best_start = start;
            }
        } else if (bound < limit) {
            std::int64_t t_star = k_inf;
            for (int m = 0; m < n_machines; ++m)
                if (pos[m] < int(chain[m].size()))
                    t_star = std::min(t_star, earliest_start(m, floor));

            for (int m = 0; m < n_machines; ++m) {
                if (pos[m] >= int(chain[m].size())) continue;
                if (earliest_start(m, floor) != t_star) continue;
                if (t_star == floor && m <= last_machine) continue;  // canonical same-time order
                const Task& t = chain[m][pos[m]];
                start[m][pos[m]] = t_star;
                std::int64_t se = t_star + t.setup, pe = se + t.proc;
                active.push_back(se);
                acc += gain(t, pe);
                std::int64_t old_ready = ready[m];
                ready[m] = pe;
                ++pos[m];
                dfs(t_star, m);
                --pos[m];
                ready[m] = old_ready;
                acc -= gain(t, pe);
                active.pop_back();
            }

            // postpone everything past t_star to the next state change
            std::int64_t next_event = k_inf;
            for (auto e : active)
                if (e > t_star) next_event = std::min(next_event, e);
            for (int m = 0; m < n_machines; ++m)
                if (pos[m] < int(chain[m].size()) && ready[m] > t_star)
                    next_event = std::min(next_event, ready[m]);
            if (next_event < k_inf) dfs(next_event, -1);
        }

        pos = saved_pos;
        ready = saved_ready;
        acc = saved_acc;
    }
};

}  // namespace

SubproblemResult solve_subproblem_exact(const Instance& inst, const Assignment& asg,
                                        Objective objective,
                                        std::optional<std::int64_t> cutoff) {
    check_assignment(inst, asg);
    if (objective == Objective::sum_tardiness && !inst.has_due_dates())
        throw std::invalid_argument("solve_subproblem_exact: instance has no due dates");

    Search search;
    search.objective = objective;
    search.n_machines = inst.n_machines;
    search.R = inst.R;
    search.chain.resize(inst.n_machines);
    for (int m = 0; m < inst.n_machines; ++m) {
        int prev = -1;
        for (int j : asg[m]) {
            Task t;
            t.job = j;
            t.setup = prev < 0 ? 0 : inst.s[prev][j][m];
            t.proc = inst.p[j][m];
            t.due = inst.has_due_dates() ? inst.d[j] : 0;
            search.chain[m].push_back(t);
            prev = j;
        }
        search.start.emplace_back(search.chain[m].size(), 0);
    }
    search.pos.assign(inst.n_machines, 0);
    search.ready.assign(inst.n_machines, 0);
    if (cutoff) search.cutoff = *cutoff;

    search.dfs(0, -1);

    SubproblemResult res;
    if (search.best == k_inf) {
        res.pruned = true;  // only reachable with a cutoff: optimum >= cutoff
        return res;
    }
    res.value = search.best;
    res.schedule.objective = objective;
    res.schedule.value = search.best;
    res.schedule.machines.resize(inst.n_machines);
    for (int m = 0; m < inst.n_machines; ++m)
        for (std::size_t r = 0; r < search.chain[m].size(); ++r) {
            const Task& t = search.chain[m][r];
            JobWindow w;
            w.job = t.job;
            w.setup_start = search.best_start[m][r];
            w.setup_end = w.setup_start + t.setup;
            w.proc_start = w.setup_end;
            w.proc_end = w.proc_start + t.proc;
            res.schedule.machines[m].push_back(w);
        }
    return res;
}

std::vector<std::string> verify_timed_schedule(const Instance& inst,
                                               const TimedSchedule& sched) {
    std::vector<std::string> out;
    auto fail = [&](const std::string& msg) { out.push_back(msg); };

    if (int(sched.machines.size()) != inst.n_machines) {
        fail("assignment: expected " + std::to_string(inst.n_machines) + " machines, got " +
             std::to_string(sched.machines.size()));
        return out;
    }
    std::vector<int> seen(inst.n_jobs, 0);
    for (const auto& mseq : sched.machines)
        for (const auto& w : mseq) {
            if (w.job < 0 || w.job >= inst.n_jobs) {
                fail("assignment: unknown job id " + std::to_string(w.job));
                return out;
            }
            ++seen[w.job];
        }
    for (int j = 0; j < inst.n_jobs; ++j) {
        if (seen[j] == 0) fail("assignment: job " + std::to_string(j) + " is missing");
        if (seen[j] > 1) fail("assignment: job " + std::to_string(j) + " appears twice");
    }
    if (!out.empty()) return out;

    std::vector<std::int64_t> completion(inst.n_jobs, 0);
    for (int m = 0; m < inst.n_machines; ++m) {
        int prev = -1;
        std::int64_t prev_end = 0;
        for (std::size_t r = 0; r < sched.machines[m].size(); ++r) {
            const JobWindow& w = sched.machines[m][r];
            std::int64_t want_setup = prev < 0 ? 0 : inst.s[prev][w.job][m];
            if (w.setup_end - w.setup_start != want_setup)
                fail("duration: machine " + std::to_string(m) + " position " + std::to_string(r) +
                     " setup length " + std::to_string(w.setup_end - w.setup_start) +
                     " should be " + std::to_string(want_setup));
            if (w.proc_end - w.proc_start != inst.p[w.job][m])
                fail("duration: job " + std::to_string(w.job) + " processing length " +
                     std::to_string(w.proc_end - w.proc_start) + " should be " +
                     std::to_string(inst.p[w.job][m]));
            if (w.proc_start != w.setup_end)
                fail("startAtEnd: job " + std::to_string(w.job) + " starts processing at " +
                     std::to_string(w.proc_start) + ", setup ends at " +
                     std::to_string(w.setup_end));
            if (r == 0) {
                if (w.setup_start < 0)
                    fail("previous: machine " + std::to_string(m) + " starts before time 0");
            } else if (w.setup_start < prev_end) {
                fail("previous: machine " + std::to_string(m) + " position " + std::to_string(r) +
                     " setup starts at " + std::to_string(w.setup_start) +
                     " before its predecessor finishes at " + std::to_string(prev_end));
            }
            completion[w.job] = w.proc_end;
            prev = w.job;
            prev_end = w.proc_end;
        }
    }

    // technician load: sweep over positive setup windows, ends release first
    std::vector<std::pair<std::int64_t, int>> events;
    for (const auto& mseq : sched.machines)
        for (const auto& w : mseq)
            if (w.setup_end > w.setup_start) {
                events.emplace_back(w.setup_start, +1);
                events.emplace_back(w.setup_end, -1);
            }
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    int load = 0;
    for (const auto& [t, delta] : events) {
        load += delta;
        if (load > inst.R) {
            fail("Cumulative: " + std::to_string(load) + " setups active at time " +
                 std::to_string(t) + " exceeds R=" + std::to_string(inst.R));
            break;
        }
    }

    if (sched.objective == Objective::sum_tardiness && !inst.has_due_dates()) {
        fail("value: instance has no due dates for the tardiness objective");
    } else {
        auto computed = evaluate_objective(sched.objective, completion,
                                           sched.objective == Objective::sum_tardiness
                                               ? inst.d
                                               : std::vector<std::int64_t>{});
        if (computed != sched.value)
            fail("value: recorded " + std::to_string(sched.value) + " differs from computed " +
                 std::to_string(computed));
    }
    return out;
}

Assignment schedule_assignment(const TimedSchedule& sched, int n_machines) {
    Assignment asg(n_machines);
    for (int m = 0; m < int(sched.machines.size()) && m < n_machines; ++m)
        for (const auto& w : sched.machines[m]) asg[m].push_back(w.job);
    return asg;
}

std::string schedule_to_json(const TimedSchedule& sched, const std::string& instance_name) {
    nlohmann::ordered_json doc;
    doc["instance"] = instance_name;
    doc["objective"] = objective_name(sched.objective);
    doc["value"] = sched.value;
    auto machines = nlohmann::ordered_json::array();
    for (const auto& mseq : sched.machines) {
        auto seq = nlohmann::ordered_json::array();
        for (const auto& w : mseq) {
            nlohmann::ordered_json rec;
            rec["job"] = w.job;
            rec["setup"] = {w.setup_start, w.setup_end};
            rec["proc"] = {w.proc_start, w.proc_end};
            seq.push_back(rec);
        }
        machines.push_back(seq);
    }
    doc["machines"] = machines;
    return doc.dump(1) + "\n";
}

TimedSchedule schedule_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("schedule: not valid JSON: ") + e.what());
    }
    TimedSchedule sched;
    try {
        sched.objective = parse_objective(doc.at("objective").get<std::string>());
        sched.value = doc.at("value").get<std::int64_t>();
        for (const auto& mseq : doc.at("machines")) {
            std::vector<JobWindow> seq;
            for (const auto& rec : mseq) {
                JobWindow w;
                w.job = rec.at("job").get<int>();
                w.setup_start = rec.at("setup")[0].get<std::int64_t>();
                w.setup_end = rec.at("setup")[1].get<std::int64_t>();
                w.proc_start = rec.at("proc")[0].get<std::int64_t>();
                w.proc_end = rec.at("proc")[1].get<std::int64_t>();
                seq.push_back(w);
            }
            sched.machines.push_back(seq);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("schedule: ") + e.what());
    }
    return sched;
}

void write_schedule(const TimedSchedule& sched, const std::string& instance_name,
                    const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << schedule_to_json(sched, instance_name);
}

TimedSchedule read_schedule(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return schedule_from_json(buf.str());
}

}  // namespace setsched
