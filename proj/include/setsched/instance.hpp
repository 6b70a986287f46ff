#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace setsched {

// Job j on machine m runs for p[j][m] time units. Before machine m can run
// job j after job i it needs a setup of s[i][j][m] units; the first job of a
// machine starts without setup. Setups across all machines draw from a pool
// of R technicians, so at most R setups may be in progress at any instant.
struct Instance {
    std::string name;
    int n_jobs = 0;
    int n_machines = 0;
    int R = 1;
    std::vector<std::vector<std::int64_t>> p;               // p[j][m]
    std::vector<std::vector<std::vector<std::int64_t>>> s;  // s[i][j][m], diagonal unused
    std::vector<std::int64_t> d;                            // due dates, empty when absent

    bool has_due_dates() const { return !d.empty(); }
};

enum class RFraction { two_fifths, three_fifths };

struct GenParams {
    int n_jobs = 0;
    int n_machines = 0;
    RFraction r_fraction = RFraction::two_fifths;
    int alpha = 0;      // 0/1: setups proportional to processing, 2: independent
    double tau = 0.5;   // due-date tightness, 0.5 or 0.8
    double rho = 0.2;   // due-date spread (fixed)
    std::uint64_t seed = 0;
    std::string name;   // empty -> J{n}_M{m}_tau{t}_alpha{a}_s{seed}
};

// Deterministic: one mt19937_64 stream, documented draw order, so equal
// params give byte-identical files on every platform.
Instance generate_instance(const GenParams& params);

// Structural checks; returns human-readable violations (empty = ok).
std::vector<std::string> validate_instance(const Instance& inst);

// Cheapest setup machine m can charge after finishing job j.
std::int64_t min_successor_setup(const Instance& inst, int j, int m);

std::string to_json(const Instance& inst);
Instance from_json(const std::string& text);
void write_instance(const Instance& inst, const std::string& path);
Instance read_instance(const std::string& path);

// Generator building blocks, exposed for direct testing.
double gen_processing_value(double a, double b, double eps);
std::pair<double, double> gen_due_window(double tau, double rho, double cmax);
int gen_resource_capacity(RFraction f, int n_machines);

}  // namespace setsched
