#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace setsched {

enum class VarKind { continuous, binary };

struct Variable {
    VarKind kind = VarKind::continuous;
    double lb = 0.0;
    double ub = 0.0;
    double obj = 0.0;
    std::string name;
};

enum class RowSense { le, ge, eq };

struct LinRow {
    std::vector<std::pair<int, double>> terms;  // (variable id, coefficient)
    RowSense sense = RowSense::le;
    double rhs = 0.0;
    std::string name;
};

// Plain MILP container. Rows added after a solve participate in later solves
// (that is how cuts arrive).
struct Model {
    std::vector<Variable> vars;
    std::vector<LinRow> rows;
    double obj_offset = 0.0;
    std::vector<int> branch_order;  // optional hint: ids in preferred branching order

    int add_var(VarKind kind, double lb, double ub, double obj, std::string name = "");
    // Validates ids and dedups by canonical form; returns false for a duplicate.
    bool add_row(LinRow row);

  private:
    std::unordered_set<std::string> row_keys_;
};

enum class SolveStatus { optimal, limit, infeasible };

struct SolveOutcome {
    SolveStatus status = SolveStatus::infeasible;
    std::vector<double> values;  // empty when no feasible point was found
    double objective = std::numeric_limits<double>::infinity();
    double dual_bound = -std::numeric_limits<double>::infinity();
    std::int64_t nodes = 0;
    int n_solutions = 0;  // integer-feasible points seen
};

struct SolveLimits {
    double time_limit_s = std::numeric_limits<double>::infinity();
};

// Called once per new integer-feasible point; returned rows are added to the
// model permanently. A returned row the point violates rejects the point.
using IncumbentHook =
    std::function<std::vector<LinRow>(const std::vector<double>& values, double objective,
                                      double dual_bound)>;

struct Capabilities {
    std::string backend;
    bool supports_lazy_cuts = false;
    bool supports_start_point = false;
};

class MilpBackend {
  public:
    virtual ~MilpBackend() = default;
    virtual Capabilities capabilities() const = 0;
    virtual SolveOutcome solve(Model& model, const SolveLimits& limits,
                               const IncumbentHook* hook) = 0;
};

// "builtin": exact depth-first enumeration over the integer variables with
// interval-propagation bounding. Supports lazy cuts. Unknown name -> throws.
std::unique_ptr<MilpBackend> make_backend(const std::string& name);

// Objective of the model with integrality dropped (dense two-phase simplex).
// Requires finite lower bounds. Infeasible -> +inf is never returned; throws
// instead (callers only use it on feasible models).
double lp_relaxation_bound(const Model& model);

}  // namespace setsched
