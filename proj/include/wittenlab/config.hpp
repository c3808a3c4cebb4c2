#pragma once

#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wittenlab {

// Fully resolved run configuration: defaults, then config file keys, then
// command-line flags, later sources winning. Unknown keys are rejected.
struct RunConfig {
    std::string command;

    std::string model = "circle";  // "circle" | "torus" | "mesh:<path>"
    int n = 256;                   // circle vertices; torus per-axis fallback
    int n1 = 0, n2 = 0;            // torus grid, 0 inherits n
    double radius = 1.0;           // circle radius
    double L1 = 0.0, L2 = 0.0;     // torus side lengths, 0 means 2*pi

    std::string field = "cos-theta";
    bool has_field_k = false;
    double field_k = 0.0;
    bool has_field_epsilon = false;
    double field_epsilon = 0.0;

    double t = 0.5;
    std::string t_grid;  // "geom:first:last:count", empty = single t

    int degree = 0;
    int k = 8;
    double tol = 1e-8;
    unsigned long long seed = 0x9e3779b97f4a7c15ull;
    std::string oracle_mode = "standard";
    double cutoff = 6.0;
    double threshold = 0.5;

    std::string slope = "1/0";
    int n_leaf = 512;
    int n_trans = 64;
    double phi_a1 = 0.2, phi_a2 = 0.7, phi_b1 = 1.1, phi_b2 = 1.9;

    int workers = 1;
    std::string out = "out";
};

// INI-style key=value lines; [section] headers prefix following keys with
// "section.". '#' and ';' start comments.
std::map<std::string, std::string> parse_ini(std::istream& in, const std::string& origin);

// Apply file keys then flag keys over the defaults; validate types and
// ranges. Throws config_error on unknown keys or malformed values.
RunConfig resolve_config(const std::string& command,
                         const std::map<std::string, std::string>& file_keys,
                         const std::map<std::string, std::string>& flag_keys);

// Geometric schedule "geom:first:last:count", strictly decreasing.
std::vector<double> parse_schedule(const std::string& grid);

std::pair<int, int> parse_slope(const std::string& slope);

// Every key with its final value, in a fixed order, for embedding into
// output files.
std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& config);

}  // namespace wittenlab
