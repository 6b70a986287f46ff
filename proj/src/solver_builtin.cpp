#include "setsched/solver_iface.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace setsched {

int Model::add_var(VarKind kind, double lb, double ub, double obj, std::string name) {
    if (lb > ub) throw std::invalid_argument("add_var: lb > ub for " + name);
    Variable v;
    v.kind = kind;
    v.lb = lb;
    v.ub = ub;
    v.obj = obj;
    v.name = std::move(name);
    vars.push_back(std::move(v));
    return int(vars.size()) - 1;
}

bool Model::add_row(LinRow row) {
    for (const auto& [v, a] : row.terms)
        if (v < 0 || v >= int(vars.size()))
            throw std::invalid_argument("add_row: unknown variable id in " + row.name);
    auto terms = row.terms;
    std::sort(terms.begin(), terms.end());
    std::ostringstream key;
    for (const auto& [v, a] : terms) key << v << '*' << a << ';';
    key << int(row.sense) << '|' << row.rhs;
    if (!row_keys_.insert(key.str()).second) return false;
    rows.push_back(std::move(row));
    return true;
}

namespace {

constexpr double k_inf = std::numeric_limits<double>::infinity();
constexpr double k_feas = 1e-6;

double row_tol(double rhs) { return k_feas * (1.0 + std::fabs(rhs)); }

// Depth-first exact search over the binary variables. Nodes are bounded by
// interval propagation of the rows followed by an objective bound from the
// propagated domains; no LP is solved. Continuous variables are completed at
// a leaf from their propagated bounds, which is exact whenever every
// continuous variable only needs to be as small (or large) as the rows force
// it, the shape all models in this codebase have. A completion that fails
// its row check raises instead of returning a wrong answer.
struct Dfs {
    Model& model;
    const IncumbentHook* hook;
    std::vector<std::vector<int>> var_rows;

    bool has_deadline = false;
    std::chrono::steady_clock::time_point deadline;
    bool timed_out = false;

    double ub = k_inf;
    std::vector<double> ub_values;
    double min_open = k_inf;  // bound below any subtree abandoned on timeout
    std::int64_t nodes = 0;
    int n_solutions = 0;

    explicit Dfs(Model& m, const IncumbentHook* h) : model(m), hook(h) {
        var_rows.resize(model.vars.size());
        index_rows_from(0);
    }

    void index_rows_from(std::size_t first) {
        for (std::size_t r = first; r < model.rows.size(); ++r)
            for (const auto& [v, a] : model.rows[r].terms) var_rows[v].push_back(int(r));
    }

    bool propagate(std::vector<double>& lo, std::vector<double>& hi, std::vector<int> queue) {
        std::vector<char> queued(model.rows.size(), 0);
        for (int r : queue)
            if (r < int(queued.size())) queued[r] = 1;
        std::size_t budget = model.rows.size() * 40 + 400;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            if (queue.size() > budget && head > budget) break;  // stop tightening; still sound
            int ri = queue[head];
            queued[ri] = 0;
            const LinRow& row = model.rows[ri];

            double min_sum = 0, max_sum = 0;
            int min_inf = 0, max_inf = 0;
            for (const auto& [v, a] : row.terms) {
                double t_min = a > 0 ? a * lo[v] : a * hi[v];
                double t_max = a > 0 ? a * hi[v] : a * lo[v];
                if (std::isinf(t_min)) ++min_inf; else min_sum += t_min;
                if (std::isinf(t_max)) ++max_inf; else max_sum += t_max;
            }
            bool need_le = row.sense != RowSense::ge;
            bool need_ge = row.sense != RowSense::le;
            double tol = row_tol(row.rhs);
            if (need_le && min_inf == 0 && min_sum > row.rhs + tol) return false;
            if (need_ge && max_inf == 0 && max_sum < row.rhs - tol) return false;

            for (const auto& [v, a] : row.terms) {
                if (a == 0) continue;
                double t_min = a > 0 ? a * lo[v] : a * hi[v];
                double t_max = a > 0 ? a * hi[v] : a * lo[v];
                bool changed = false;
                if (need_le) {
                    double rest = -k_inf;
                    if (min_inf == 0) rest = min_sum - t_min;
                    else if (min_inf == 1 && std::isinf(t_min)) rest = min_sum;
                    if (!std::isinf(rest)) {
                        double cap = (row.rhs - rest) / a;
                        if (a > 0) changed |= shrink_hi(lo, hi, v, cap);
                        else changed |= raise_lo(lo, hi, v, cap);
                    }
                }
                if (need_ge) {
                    double rest = k_inf;
                    if (max_inf == 0) rest = max_sum - t_max;
                    else if (max_inf == 1 && std::isinf(t_max)) rest = max_sum;
                    if (!std::isinf(rest)) {
                        double floor_v = (row.rhs - rest) / a;
                        if (a > 0) changed |= raise_lo(lo, hi, v, floor_v);
                        else changed |= shrink_hi(lo, hi, v, floor_v);
                    }
                }
                if (changed) {
                    if (lo[v] > hi[v] + k_feas) return false;
                    for (int r2 : var_rows[v])
                        if (!queued[r2]) {
                            queued[r2] = 1;
                            queue.push_back(r2);
                        }
                }
            }
        }
        return true;
    }

    bool shrink_hi(std::vector<double>& lo, std::vector<double>& hi, int v, double cap) {
        if (model.vars[v].kind == VarKind::binary) cap = std::floor(cap + 1e-9);
        if (cap >= hi[v] - 1e-7) return false;
        hi[v] = std::max(cap, lo[v] - 2 * k_feas);
        return true;
    }

    bool raise_lo(std::vector<double>& lo, std::vector<double>& hi, int v, double floor_v) {
        if (model.vars[v].kind == VarKind::binary) floor_v = std::ceil(floor_v - 1e-9);
        if (floor_v <= lo[v] + 1e-7) return false;
        lo[v] = std::min(floor_v, hi[v] + 2 * k_feas);
        return true;
    }

    double objective_bound(const std::vector<double>& lo, const std::vector<double>& hi) const {
        double b = model.obj_offset;
        for (std::size_t v = 0; v < model.vars.size(); ++v) {
            double c = model.vars[v].obj;
            if (c == 0) continue;
            double t = c > 0 ? c * lo[v] : c * hi[v];
            if (std::isinf(t)) return -k_inf;
            b += t;
        }
        return b;
    }

    int pick_branch_var(const std::vector<double>& lo, const std::vector<double>& hi) const {
        for (int v : model.branch_order)
            if (model.vars[v].kind == VarKind::binary && hi[v] - lo[v] > 0.5) return v;
        for (std::size_t v = 0; v < model.vars.size(); ++v)
            if (model.vars[v].kind == VarKind::binary && hi[v] - lo[v] > 0.5) return int(v);
        return -1;
    }

    // Fill every variable with the bound end its objective sign prefers, then
    // check all rows. Valid models reach here with a point solution.
    std::vector<double> complete_leaf(const std::vector<double>& lo,
                                      const std::vector<double>& hi) const {
        std::vector<double> values(model.vars.size());
        for (std::size_t v = 0; v < model.vars.size(); ++v) {
            const Variable& var = model.vars[v];
            double pick = var.obj < 0 ? hi[v] : lo[v];
            if (std::isinf(pick))
                throw std::runtime_error("builtin solver: unbounded variable " + var.name +
                                         " at a leaf");
            values[v] = var.kind == VarKind::binary ? std::round(pick) : pick;
        }
        for (const LinRow& row : model.rows) {
            double lhs = 0;
            for (const auto& [v, a] : row.terms) lhs += a * values[v];
            double tol = row_tol(row.rhs);
            bool bad = (row.sense != RowSense::ge && lhs > row.rhs + tol) ||
                       (row.sense != RowSense::le && lhs < row.rhs - tol);
            if (bad)
                throw std::runtime_error(
                    "builtin solver: continuous completion violates row '" + row.name +
                    "'; the model is outside the supported shape");
        }
        return values;
    }

    void dfs(std::vector<double> lo, std::vector<double> hi, std::vector<int> seed,
             double parent_bound) {
        ++nodes;
        if (has_deadline && !timed_out &&
            (nodes & 63) == 1 && std::chrono::steady_clock::now() > deadline)
            timed_out = true;
        if (timed_out) {
            min_open = std::min(min_open, parent_bound);
            return;
        }
        if (!propagate(lo, hi, std::move(seed))) return;
        double bound = objective_bound(lo, hi);
        if (bound >= ub - 1e-9 * (1.0 + std::fabs(ub))) return;

        int v = pick_branch_var(lo, hi);
        if (v < 0) {
            auto values = complete_leaf(lo, hi);
            double obj = model.obj_offset;
            for (std::size_t k = 0; k < values.size(); ++k) obj += model.vars[k].obj * values[k];
            if (hook) {
                std::size_t before = model.rows.size();
                auto cuts = (*hook)(values, obj, std::min(min_open, ub));
                if (!cuts.empty()) {
                    for (auto& c : cuts) model.add_row(std::move(c));
                    if (model.rows.size() > before) index_rows_from(before);
                    return;  // rejected; the new rows steer the rest of the search
                }
            }
            if (obj < ub) {
                ub = obj;
                ub_values = values;
                ++n_solutions;
            }
            return;
        }

        std::size_t base = model.rows.size();
        for (double val : {1.0, 0.0}) {
            if (val < lo[v] - 0.5 || val > hi[v] + 0.5) continue;
            auto clo = lo;
            auto chi = hi;
            clo[v] = chi[v] = val;
            std::vector<int> seed2 = var_rows[v];
            for (std::size_t r = base; r < model.rows.size(); ++r) seed2.push_back(int(r));
            dfs(std::move(clo), std::move(chi), std::move(seed2), bound);
            if (timed_out) {
                min_open = std::min(min_open, bound);
                return;
            }
        }
    }
};

class BuiltinBackend : public MilpBackend {
  public:
    Capabilities capabilities() const override { return {"builtin", true, false}; }

    SolveOutcome solve(Model& model, const SolveLimits& limits,
                       const IncumbentHook* hook) override {
        Dfs dfs(model, hook);
        if (std::isfinite(limits.time_limit_s)) {
            dfs.has_deadline = true;
            dfs.deadline = std::chrono::steady_clock::now() +
                           std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(limits.time_limit_s));
        }

        std::vector<double> lo(model.vars.size()), hi(model.vars.size());
        for (std::size_t v = 0; v < model.vars.size(); ++v) {
            lo[v] = model.vars[v].lb;
            hi[v] = model.vars[v].ub;
        }
        std::vector<int> all_rows(model.rows.size());
        for (std::size_t r = 0; r < all_rows.size(); ++r) all_rows[r] = int(r);
        dfs.dfs(std::move(lo), std::move(hi), std::move(all_rows), -k_inf);

        SolveOutcome out;
        out.nodes = dfs.nodes;
        out.n_solutions = dfs.n_solutions;
        out.objective = dfs.ub;
        out.values = dfs.ub_values;
        if (dfs.timed_out) {
            out.status = SolveStatus::limit;
            out.dual_bound = std::min(dfs.min_open, dfs.ub);
        } else if (dfs.ub < k_inf) {
            out.status = SolveStatus::optimal;
            out.dual_bound = dfs.ub;
        } else {
            out.status = SolveStatus::infeasible;
            out.dual_bound = k_inf;
        }
        return out;
    }
};

}  // namespace

std::unique_ptr<MilpBackend> make_backend(const std::string& name) {
    if (name == "builtin") return std::make_unique<BuiltinBackend>();
    throw std::invalid_argument("unknown solver backend '" + name + "' (available: builtin)");
}

}  // namespace setsched
