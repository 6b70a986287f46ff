#include "setsched/instance.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace setsched {

namespace {

// Portable uniform doubles: the mt19937_64 sequence is pinned by the
// standard, the (x >> 11) * 2^-53 mapping is ours. Library distributions are
// implementation-defined and would break byte-identical regeneration.
struct Uniform {
    std::mt19937_64 rng;
    explicit Uniform(std::uint64_t seed) : rng(seed) {}
    double unit() { return double(rng() >> 11) * 0x1.0p-53; }
    double operator()(double lo, double hi) { return lo + unit() * (hi - lo); }
};

std::string default_name(const GenParams& g) {
    std::ostringstream os;
    os << "J" << g.n_jobs << "_M" << g.n_machines << "_tau" << g.tau << "_alpha" << g.alpha
       << "_s" << g.seed;
    return os.str();
}

}  // namespace

double gen_processing_value(double a, double b, double eps) { return a * b + eps; }

std::pair<double, double> gen_due_window(double tau, double rho, double cmax) {
    return {cmax * (1.0 - tau - rho / 2.0), cmax * (1.0 - tau + rho / 2.0)};
}

int gen_resource_capacity(RFraction f, int n_machines) {
    double frac = f == RFraction::two_fifths ? 0.4 : 0.6;
    auto r = std::llround(frac * n_machines);
    return int(std::clamp<long long>(r, 1, n_machines));
}

Instance generate_instance(const GenParams& g) {
    if (g.n_jobs < 1) throw std::invalid_argument("generate_instance: n_jobs must be >= 1");
    if (g.n_machines < 1)
        throw std::invalid_argument("generate_instance: n_machines must be >= 1");
    if (g.n_machines > g.n_jobs)
        throw std::invalid_argument("generate_instance: n_machines must not exceed n_jobs");
    if (g.alpha != 0 && g.alpha != 1 && g.alpha != 2)
        throw std::invalid_argument("generate_instance: alpha must be 0, 1 or 2");
    if (g.tau != 0.5 && g.tau != 0.8)
        throw std::invalid_argument("generate_instance: tau must be 0.5 or 0.8");
    if (g.rho != 0.2) throw std::invalid_argument("generate_instance: rho is fixed at 0.2");

    const int n = g.n_jobs, M = g.n_machines;
    Uniform u(g.seed);

    Instance inst;
    inst.name = g.name.empty() ? default_name(g) : g.name;
    inst.n_jobs = n;
    inst.n_machines = M;
    inst.R = gen_resource_capacity(g.r_fraction, M);

    // Draw order: b_j for all j; then (a_jm, eps_jm) j-major; then setups
    // i-major over (i, j != i, m); then d_j for all j.
    std::vector<double> b(n);
    for (int j = 0; j < n; ++j) b[j] = u(1.0, 10.0);

    inst.p.assign(n, std::vector<std::int64_t>(M, 0));
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < M; ++m) {
            double a = u(1.0, 10.0), eps = u(0.0, 10.0);
            inst.p[j][m] = std::llround(gen_processing_value(a, b[j], eps));
        }

    inst.s.assign(n, std::vector<std::vector<std::int64_t>>(n, std::vector<std::int64_t>(M, 0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            for (int m = 0; m < M; ++m) {
                if (g.alpha == 2) {
                    inst.s[i][j][m] = std::llround(u(5.0, 25.0));
                } else {
                    double lo = g.alpha == 0 ? 0.1 : 0.5;
                    double hi = g.alpha == 0 ? 0.5 : 1.0;
                    inst.s[i][j][m] = std::llround(u(lo, hi) * double(inst.p[j][m]));
                }
            }
        }

    // Spread the due dates around a crude makespan estimate: cheapest
    // processing for every job plus the n - M cheapest inbound setups (only
    // that many jobs can need one), split across machines.
    std::int64_t sum_p1 = 0;
    for (int j = 0; j < n; ++j) sum_p1 += *std::min_element(inst.p[j].begin(), inst.p[j].end());
    std::vector<std::int64_t> kappa(n);
    for (int j = 0; j < n; ++j) {
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            for (int m = 0; m < M; ++m) best = std::min(best, inst.s[i][j][m]);
        }
        kappa[j] = n > 1 ? best : 0;
    }
    std::sort(kappa.begin(), kappa.end());
    std::int64_t s1 = 0;
    for (int t = 0; t < n - M; ++t) s1 += kappa[t];
    double cmax = double(sum_p1 + s1) / double(M);

    auto [lo, hi] = gen_due_window(g.tau, g.rho, cmax);
    inst.d.resize(n);
    for (int j = 0; j < n; ++j) inst.d[j] = std::llround(u(lo, hi));

    return inst;
}

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> out;
    auto fail = [&](const std::string& msg) { out.push_back(msg); };

    if (inst.n_jobs < 1) fail("n_jobs must be >= 1");
    if (inst.n_machines < 1) fail("n_machines must be >= 1");
    if (inst.n_jobs < 1 || inst.n_machines < 1) return out;

    if (inst.R < 1 || inst.R > inst.n_machines)
        fail("R must lie in [1, n_machines], got " + std::to_string(inst.R));

    const std::size_t n = inst.n_jobs, M = inst.n_machines;
    if (inst.p.size() != n) {
        fail("p must have one row per job");
    } else {
        for (std::size_t j = 0; j < n; ++j) {
            if (inst.p[j].size() != M) {
                fail("p[" + std::to_string(j) + "] must have one entry per machine");
                continue;
            }
            for (std::size_t m = 0; m < M; ++m)
                if (inst.p[j][m] < 0)
                    fail("p[" + std::to_string(j) + "][" + std::to_string(m) + "] is negative");
        }
    }

    if (inst.s.size() != n) {
        fail("s must have one slice per predecessor job");
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            if (inst.s[i].size() != n) {
                fail("s[" + std::to_string(i) + "] must have one row per successor job");
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (inst.s[i][j].size() != M) {
                    fail("s[" + std::to_string(i) + "][" + std::to_string(j) +
                         "] must have one entry per machine");
                    continue;
                }
                if (i == j) continue;
                for (std::size_t m = 0; m < M; ++m)
                    if (inst.s[i][j][m] < 0)
                        fail("s[" + std::to_string(i) + "][" + std::to_string(j) + "][" +
                             std::to_string(m) + "] is negative");
            }
        }
    }

    if (!inst.d.empty()) {
        if (inst.d.size() != n) {
            fail("d must be empty or have one entry per job");
        } else {
            for (std::size_t j = 0; j < n; ++j)
                if (inst.d[j] < 0) fail("d[" + std::to_string(j) + "] is negative");
        }
    }
    return out;
}

std::int64_t min_successor_setup(const Instance& inst, int j, int m) {
    if (j < 0 || j >= inst.n_jobs) throw std::invalid_argument("min_successor_setup: bad job id");
    if (m < 0 || m >= inst.n_machines)
        throw std::invalid_argument("min_successor_setup: bad machine id");
    if (inst.n_jobs < 2)
        throw std::invalid_argument("min_successor_setup: needs at least two jobs");
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (int l = 0; l < inst.n_jobs; ++l)
        if (l != j) best = std::min(best, inst.s[j][l][m]);
    return best;
}

std::string to_json(const Instance& inst) {
    nlohmann::ordered_json doc;
    doc["name"] = inst.name;
    doc["n_jobs"] = inst.n_jobs;
    doc["n_machines"] = inst.n_machines;
    doc["R"] = inst.R;
    doc["p"] = inst.p;
    auto s = inst.s;
    for (int i = 0; i < inst.n_jobs; ++i)
        for (int m = 0; m < inst.n_machines; ++m) s[i][i][m] = 0;  // diagonal is meaningless
    doc["s"] = s;
    if (inst.has_due_dates()) doc["d"] = inst.d;
    return doc.dump(1) + "\n";
}

namespace {

template <typename F>
auto parse_field(const char* field, F&& f) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("instance field '") + field + "': " + e.what());
    }
}

}  // namespace

Instance from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("instance: not valid JSON: ") + e.what());
    }
    for (const char* key : {"name", "n_jobs", "n_machines", "R", "p", "s"})
        if (!doc.contains(key))
            throw std::invalid_argument(std::string("instance field '") + key + "': missing");

    Instance inst;
    inst.name = parse_field("name", [&] { return doc["name"].get<std::string>(); });
    inst.n_jobs = parse_field("n_jobs", [&] { return doc["n_jobs"].get<int>(); });
    inst.n_machines = parse_field("n_machines", [&] { return doc["n_machines"].get<int>(); });
    inst.R = parse_field("R", [&] { return doc["R"].get<int>(); });
    if (inst.n_jobs < 1 || inst.n_machines < 1)
        throw std::invalid_argument("instance: n_jobs and n_machines must be >= 1");
    const std::size_t n = inst.n_jobs, M = inst.n_machines;

    inst.p = parse_field("p", [&] { return doc["p"].get<std::vector<std::vector<std::int64_t>>>(); });

    // Dense [i][j][m] tensor, or a sparse list of [i, j, m, value] rows that
    // must cover every i != j pair.
    const auto& sj = doc["s"];
    bool sparse = sj.is_array() && !sj.empty() && sj[0].is_array() && !sj[0].empty() &&
                  sj[0][0].is_number();
    if (sparse) {
        inst.s.assign(n, std::vector<std::vector<std::int64_t>>(
                             n, std::vector<std::int64_t>(M, -1)));
        auto quads = parse_field(
            "s", [&] { return sj.get<std::vector<std::array<std::int64_t, 4>>>(); });
        for (const auto& q : quads) {
            auto [i, j, m, v] = q;
            if (i < 0 || i >= std::int64_t(n) || j < 0 || j >= std::int64_t(n) || m < 0 ||
                m >= std::int64_t(M))
                throw std::invalid_argument("instance field 's': entry out of range");
            inst.s[i][j][m] = v;
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) {
                    for (std::size_t m = 0; m < M; ++m)
                        if (inst.s[i][j][m] < 0) inst.s[i][j][m] = 0;
                    continue;
                }
                for (std::size_t m = 0; m < M; ++m)
                    if (inst.s[i][j][m] < 0)
                        throw std::invalid_argument(
                            "instance field 's': missing entry for (" + std::to_string(i) + ", " +
                            std::to_string(j) + ", " + std::to_string(m) + ")");
            }
    } else {
        inst.s = parse_field("s", [&] {
            return sj.get<std::vector<std::vector<std::vector<std::int64_t>>>>();
        });
    }

    if (doc.contains("d") && !doc["d"].is_null())
        inst.d = parse_field("d", [&] { return doc["d"].get<std::vector<std::int64_t>>(); });

    auto violations = validate_instance(inst);
    if (!violations.empty())
        throw std::invalid_argument("instance: " + violations.front());
    return inst;
}

void write_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json(inst);
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

}  // namespace setsched
