#include "wittenlab/config.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "wittenlab/errors.hpp"
#include "wittenlab/io.hpp"

namespace wittenlab {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        size_t idx = 0;
        const double v = std::stod(value, &idx);
        if (idx != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::config_error, "key \"" + key + "\": \"" + value +
                                                 "\" is not a number");
    }
}

long long to_integer(const std::string& key, const std::string& value) {
    try {
        size_t idx = 0;
        const long long v = std::stoll(value, &idx);
        if (idx != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::config_error, "key \"" + key + "\": \"" + value +
                                                 "\" is not an integer");
    }
}

unsigned long long to_unsigned(const std::string& key, const std::string& value) {
    try {
        size_t idx = 0;
        const unsigned long long v = std::stoull(value, &idx);
        if (idx != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw Error(ErrorCode::config_error, "key \"" + key + "\": \"" + value +
                                                 "\" is not an unsigned integer");
    }
}

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "model") {
        c.model = value;
    } else if (key == "n") {
        c.n = int(to_integer(key, value));
    } else if (key == "n1") {
        c.n1 = int(to_integer(key, value));
    } else if (key == "n2") {
        c.n2 = int(to_integer(key, value));
    } else if (key == "radius") {
        c.radius = to_double(key, value);
    } else if (key == "L1") {
        c.L1 = to_double(key, value);
    } else if (key == "L2") {
        c.L2 = to_double(key, value);
    } else if (key == "field") {
        c.field = value;
    } else if (key == "field.k") {
        c.field_k = to_double(key, value);
        c.has_field_k = true;
    } else if (key == "field.epsilon") {
        c.field_epsilon = to_double(key, value);
        c.has_field_epsilon = true;
    } else if (key == "t") {
        c.t = to_double(key, value);
    } else if (key == "t-grid") {
        c.t_grid = value;
    } else if (key == "degree") {
        c.degree = int(to_integer(key, value));
    } else if (key == "k") {
        c.k = int(to_integer(key, value));
    } else if (key == "tol") {
        c.tol = to_double(key, value);
    } else if (key == "seed") {
        c.seed = to_unsigned(key, value);
    } else if (key == "oracle-mode") {
        if (value != "standard" && value != "paper")
            throw Error(ErrorCode::config_error, "oracle-mode must be standard or paper");
        c.oracle_mode = value;
    } else if (key == "cutoff") {
        c.cutoff = to_double(key, value);
    } else if (key == "threshold") {
        c.threshold = to_double(key, value);
    } else if (key == "slope") {
        c.slope = value;
    } else if (key == "n-leaf") {
        c.n_leaf = int(to_integer(key, value));
    } else if (key == "n-trans") {
        c.n_trans = int(to_integer(key, value));
    } else if (key == "phi.a1") {
        c.phi_a1 = to_double(key, value);
    } else if (key == "phi.a2") {
        c.phi_a2 = to_double(key, value);
    } else if (key == "phi.b1") {
        c.phi_b1 = to_double(key, value);
    } else if (key == "phi.b2") {
        c.phi_b2 = to_double(key, value);
    } else if (key == "workers") {
        c.workers = int(to_integer(key, value));
    } else if (key == "out") {
        c.out = value;
    } else {
        throw Error(ErrorCode::config_error, "unknown config key \"" + key + "\"");
    }
}

void validate(const RunConfig& c) {
    if (c.n < 3) throw Error(ErrorCode::config_error, "n must be at least 3");
    if (!(c.radius > 0)) throw Error(ErrorCode::config_error, "radius must be positive");
    if (!(c.t > 0)) throw Error(ErrorCode::config_error, "t must be positive");
    if (c.degree < 0) throw Error(ErrorCode::config_error, "degree must be nonnegative");
    if (c.k < 1) throw Error(ErrorCode::config_error, "k must be at least 1");
    if (!(c.tol > 0)) throw Error(ErrorCode::config_error, "tol must be positive");
    if (!(c.cutoff > 0)) throw Error(ErrorCode::config_error, "cutoff must be positive");
    if (!(c.threshold > 0)) throw Error(ErrorCode::config_error, "threshold must be positive");
    if (c.workers < 1) throw Error(ErrorCode::config_error, "workers must be at least 1");
    if (c.n_leaf < 1 || c.n_trans < 1)
        throw Error(ErrorCode::config_error, "n-leaf and n-trans must be positive");
}

}  // namespace

std::map<std::string, std::string> parse_ini(std::istream& in, const std::string& origin) {
    std::map<std::string, std::string> keys;
    std::string line, prefix;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.resize(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw Error(ErrorCode::config_error,
                            origin + ":" + std::to_string(lineno) + ": unterminated section");
            prefix = trim(line.substr(1, line.size() - 2));
            if (!prefix.empty()) prefix += '.';
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::config_error,
                        origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = prefix + trim(line.substr(0, eq));
        keys[key] = trim(line.substr(eq + 1));
    }
    return keys;
}

RunConfig resolve_config(const std::string& command,
                         const std::map<std::string, std::string>& file_keys,
                         const std::map<std::string, std::string>& flag_keys) {
    RunConfig c;
    c.command = command;
    for (const auto& [key, value] : file_keys) apply_key(c, key, value);
    for (const auto& [key, value] : flag_keys) apply_key(c, key, value);

    const bool grid_given = file_keys.count("t-grid") || flag_keys.count("t-grid");
    if (!grid_given && command == "flow") c.t_grid = "geom:1.0:0.02:25";
    if (!grid_given && command == "foliation") c.t_grid = "geom:0.08:0.01:25";

    // Foliation traces need the spectrum to clear the test function support.
    const bool k_given = file_keys.count("k") || flag_keys.count("k");
    if (!k_given && command == "foliation") c.k = 16;

    validate(c);
    return c;
}

std::vector<double> parse_schedule(const std::string& grid) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        const auto colon = grid.find(':', start);
        parts.push_back(grid.substr(start, colon - start));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    if (parts.size() != 4 || parts[0] != "geom")
        throw Error(ErrorCode::config_error,
                    "t grid \"" + grid + "\" is not of the form geom:first:last:count");
    const double first = to_double("t-grid", parts[1]);
    const double last = to_double("t-grid", parts[2]);
    const long long count = to_integer("t-grid", parts[3]);
    if (!(first > 0) || !(last > 0) || count < 1)
        throw Error(ErrorCode::config_error, "t grid needs positive endpoints and count");
    if (count == 1) return {first};
    if (!(last < first))
        throw Error(ErrorCode::config_error, "t grid must decrease from first to last");

    std::vector<double> schedule(count);
    const double ratio = std::pow(last / first, 1.0 / double(count - 1));
    for (long long j = 0; j < count; ++j) schedule[j] = first * std::pow(ratio, double(j));
    schedule.back() = last;
    return schedule;
}

std::pair<int, int> parse_slope(const std::string& slope) {
    const auto slash = slope.find('/');
    if (slash == std::string::npos)
        throw Error(ErrorCode::config_error, "slope \"" + slope + "\" is not of the form a/b");
    const long long a = to_integer("slope", trim(slope.substr(0, slash)));
    const long long b = to_integer("slope", trim(slope.substr(slash + 1)));
    return {int(a), int(b)};
}

std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& c) {
    std::vector<std::pair<std::string, std::string>> e;
    e.emplace_back("command", c.command);
    e.emplace_back("model", c.model);
    e.emplace_back("n", std::to_string(c.n));
    if (c.n1 > 0) e.emplace_back("n1", std::to_string(c.n1));
    if (c.n2 > 0) e.emplace_back("n2", std::to_string(c.n2));
    e.emplace_back("radius", format_double(c.radius));
    if (c.L1 > 0) e.emplace_back("L1", format_double(c.L1));
    if (c.L2 > 0) e.emplace_back("L2", format_double(c.L2));
    e.emplace_back("field", c.field);
    if (c.has_field_k) e.emplace_back("field.k", format_double(c.field_k));
    if (c.has_field_epsilon) e.emplace_back("field.epsilon", format_double(c.field_epsilon));
    e.emplace_back("t", format_double(c.t));
    if (!c.t_grid.empty()) e.emplace_back("t-grid", c.t_grid);
    e.emplace_back("degree", std::to_string(c.degree));
    e.emplace_back("k", std::to_string(c.k));
    e.emplace_back("tol", format_double(c.tol));
    e.emplace_back("seed", std::to_string(c.seed));
    e.emplace_back("oracle-mode", c.oracle_mode);
    e.emplace_back("cutoff", format_double(c.cutoff));
    e.emplace_back("threshold", format_double(c.threshold));
    e.emplace_back("slope", c.slope);
    e.emplace_back("n-leaf", std::to_string(c.n_leaf));
    e.emplace_back("n-trans", std::to_string(c.n_trans));
    e.emplace_back("phi.a1", format_double(c.phi_a1));
    e.emplace_back("phi.a2", format_double(c.phi_a2));
    e.emplace_back("phi.b1", format_double(c.phi_b1));
    e.emplace_back("phi.b2", format_double(c.phi_b2));
    e.emplace_back("workers", std::to_string(c.workers));
    e.emplace_back("out", c.out);
    return e;
}

}  // namespace wittenlab
