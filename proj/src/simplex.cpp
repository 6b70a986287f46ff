#include "setsched/solver_iface.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace setsched {

namespace {

constexpr double k_eps = 1e-9;

// Dense tableau with Bland's rule; slow but cycle-free and dependency-free.
// Used for bound reporting only, never inside the search.
struct Tableau {
    int m = 0;
    int cols = 0;                        // structural + slack + artificial
    std::vector<std::vector<double>> a;  // m rows of cols + 1 (rhs last)
    std::vector<int> basis;
    int first_artificial = 0;

    double solve_phase(const std::vector<double>& cost, bool ban_artificials) {
        const int max_iter = 50000 + 50 * (m + cols);
        for (int iter = 0; iter < max_iter; ++iter) {
            int enter = -1;
            for (int j = 0; j < cols && enter < 0; ++j) {
                if (ban_artificials && j >= first_artificial) break;
                double rc = cost[j];
                for (int i = 0; i < m; ++i) rc -= cost[basis[i]] * a[i][j];
                if (rc < -k_eps) enter = j;
            }
            if (enter < 0) {
                double z = 0;
                for (int i = 0; i < m; ++i) z += cost[basis[i]] * a[i][cols];
                return z;
            }
            int leave = -1;
            double best_ratio = 0;
            for (int i = 0; i < m; ++i) {
                if (a[i][enter] <= k_eps) continue;
                double ratio = a[i][cols] / a[i][enter];
                if (leave < 0 || ratio < best_ratio - k_eps ||
                    (ratio < best_ratio + k_eps && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) throw std::runtime_error("lp_relaxation_bound: unbounded relaxation");
            pivot(leave, enter);
        }
        throw std::runtime_error("lp_relaxation_bound: iteration limit");
    }

    void pivot(int row, int col) {
        double piv = a[row][col];
        for (int j = 0; j <= cols; ++j) a[row][j] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == row || std::fabs(a[i][col]) < 1e-12) continue;
            double f = a[i][col];
            for (int j = 0; j <= cols; ++j) a[i][j] -= f * a[row][j];
        }
        basis[row] = col;
    }
};

}  // namespace

double lp_relaxation_bound(const Model& model) {
    const int n = int(model.vars.size());
    double shift_obj = model.obj_offset;
    std::vector<double> span(n);  // shifted variables live in [0, span]
    for (int v = 0; v < n; ++v) {
        double lb = model.vars[v].lb;
        if (!std::isfinite(lb))
            throw std::invalid_argument("lp_relaxation_bound: variable " + model.vars[v].name +
                                        " has no finite lower bound");
        shift_obj += model.vars[v].obj * lb;
        span[v] = model.vars[v].ub - lb;
    }

    struct Raw {
        std::vector<double> coef;
        RowSense sense;
        double rhs;
    };
    std::vector<Raw> raws;
    for (const LinRow& row : model.rows) {
        Raw r;
        r.coef.assign(n, 0.0);
        r.rhs = row.rhs;
        r.sense = row.sense;
        for (const auto& [v, a] : row.terms) {
            r.coef[v] += a;
            r.rhs -= a * model.vars[v].lb;
        }
        raws.push_back(std::move(r));
    }
    for (int v = 0; v < n; ++v)
        if (std::isfinite(span[v])) {
            Raw r;
            r.coef.assign(n, 0.0);
            r.coef[v] = 1.0;
            r.sense = RowSense::le;
            r.rhs = span[v];
            raws.push_back(std::move(r));
        }
    for (Raw& r : raws)
        if (r.rhs < 0) {
            for (double& c : r.coef) c = -c;
            r.rhs = -r.rhs;
            if (r.sense == RowSense::le) r.sense = RowSense::ge;
            else if (r.sense == RowSense::ge) r.sense = RowSense::le;
        }

    int m = int(raws.size());
    int n_slack = 0, n_art = 0;
    for (const Raw& r : raws) {
        if (r.sense != RowSense::eq) ++n_slack;
        if (r.sense != RowSense::le) ++n_art;
    }

    Tableau t;
    t.m = m;
    t.cols = n + n_slack + n_art;
    t.first_artificial = n + n_slack;
    t.a.assign(m, std::vector<double>(t.cols + 1, 0.0));
    t.basis.assign(m, -1);
    int slack_at = n, art_at = t.first_artificial;
    for (int i = 0; i < m; ++i) {
        for (int v = 0; v < n; ++v) t.a[i][v] = raws[i].coef[v];
        t.a[i][t.cols] = raws[i].rhs;
        if (raws[i].sense == RowSense::le) {
            t.a[i][slack_at] = 1.0;
            t.basis[i] = slack_at++;
        } else if (raws[i].sense == RowSense::ge) {
            t.a[i][slack_at++] = -1.0;
            t.a[i][art_at] = 1.0;
            t.basis[i] = art_at++;
        } else {
            t.a[i][art_at] = 1.0;
            t.basis[i] = art_at++;
        }
    }

    if (n_art > 0) {
        std::vector<double> phase1(t.cols, 0.0);
        for (int j = t.first_artificial; j < t.cols; ++j) phase1[j] = 1.0;
        double z1 = t.solve_phase(phase1, false);
        if (z1 > 1e-7) throw std::runtime_error("lp_relaxation_bound: infeasible relaxation");
        // basic artificials sit at zero; pivot them out where a real column allows
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] < t.first_artificial) continue;
            for (int j = 0; j < t.first_artificial; ++j)
                if (std::fabs(t.a[i][j]) > 1e-7) {
                    t.pivot(i, j);
                    break;
                }
        }
    }

    std::vector<double> phase2(t.cols, 0.0);
    for (int v = 0; v < n; ++v) phase2[v] = model.vars[v].obj;
    double z = t.solve_phase(phase2, true);
    return z + shift_obj;
}

}  // namespace setsched
