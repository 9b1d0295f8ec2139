#pragma once
// Flat key = value experiment configs. Strict: unknown keys, duplicates,
// malformed numbers, and out-of-range knobs are all reported with line numbers.

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace cheblab {

enum class ExperimentKind {
    capacity,
    equilibrium,
    green,
    ratio_sweep,
    elliptic_compare,
    corollary_check,
};

inline const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::capacity: return "capacity";
        case ExperimentKind::equilibrium: return "equilibrium";
        case ExperimentKind::green: return "green";
        case ExperimentKind::ratio_sweep: return "ratio_sweep";
        case ExperimentKind::elliptic_compare: return "elliptic_compare";
        case ExperimentKind::corollary_check: return "corollary_check";
    }
    return "?";
}

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::capacity;
    CompactSystem system;
    std::size_t nodes_per_component = 512;
    int directions = 64;
    int n_min = 1;
    int n_max = 10;
    std::string output;         // empty: stdout
    std::string format = "csv"; // csv | json
    std::uint64_t seed = 0;     // reserved: echoed, never consumed
    bool seed_set = false;
};

struct ParseIssue {
    int line = 0; // 0: whole-file issue
    std::string message;
};

struct ParseResult {
    bool ok = false;
    ExperimentConfig config;
    std::vector<ParseIssue> issues;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline bool parse_double_strict(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

inline bool parse_long_strict(const std::string& s, long long& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtoll(s.c_str(), &end, 10);
    return end == s.c_str() + s.size();
}

} // namespace detail

inline ParseResult parse_config(const std::string& text) {
    ParseResult res;
    ExperimentConfig& cfg = res.config;
    auto issue = [&](int line, const std::string& msg) { res.issues.push_back({line, msg}); };

    bool have_experiment = false;
    std::set<std::string> seen;
    auto once = [&](const std::string& key, int line) {
        if (seen.count(key)) {
            issue(line, "duplicate key '" + key + "'");
            return false;
        }
        seen.insert(key);
        return true;
    };
    auto int_knob = [&](const std::string& key, const std::string& value, int line, long long lo,
                        long long hi, auto assign) {
        if (!once(key, line)) return;
        long long v = 0;
        if (!detail::parse_long_strict(value, v)) {
            issue(line, "malformed number for '" + key + "': '" + value + "'");
            return;
        }
        if (v < lo || v > hi) {
            issue(line, "'" + key + "' out of range [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
            return;
        }
        assign(v);
    };

    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string raw = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++lineno;

        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            issue(lineno, "expected 'key = value', got '" + line + "'");
            continue;
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) {
            issue(lineno, "empty key");
            continue;
        }
        if (value.empty()) {
            issue(lineno, "empty value for '" + key + "'");
            continue;
        }

        if (key == "experiment") {
            if (!once(key, lineno)) continue;
            have_experiment = true;
            if (value == "capacity") cfg.kind = ExperimentKind::capacity;
            else if (value == "equilibrium") cfg.kind = ExperimentKind::equilibrium;
            else if (value == "green") cfg.kind = ExperimentKind::green;
            else if (value == "ratio_sweep") cfg.kind = ExperimentKind::ratio_sweep;
            else if (value == "elliptic_compare") cfg.kind = ExperimentKind::elliptic_compare;
            else if (value == "corollary_check") cfg.kind = ExperimentKind::corollary_check;
            else {
                issue(lineno, "unknown experiment '" + value +
                                  "' (capacity, equilibrium, green, ratio_sweep, "
                                  "elliptic_compare, corollary_check)");
                have_experiment = false;
            }
        } else if (key == "component") {
            const std::vector<std::string> tok = detail::split_ws(value);
            auto nums = [&](std::size_t want, double* out) {
                if (tok.size() != want + 1) {
                    issue(lineno, "'" + tok[0] + "' component takes " + std::to_string(want) +
                                      " numbers");
                    return false;
                }
                for (std::size_t i = 0; i < want; ++i)
                    if (!detail::parse_double_strict(tok[i + 1], out[i])) {
                        issue(lineno, "malformed number '" + tok[i + 1] + "'");
                        return false;
                    }
                return true;
            };
            double v[3];
            if (tok.empty()) {
                issue(lineno, "empty component");
            } else if (tok[0] == "interval") {
                if (nums(2, v)) cfg.system.components.push_back(Component::interval(v[0], v[1]));
            } else if (tok[0] == "circle") {
                if (nums(2, v)) cfg.system.components.push_back(Component::circle(v[0], v[1]));
            } else if (tok[0] == "ellipse") {
                if (nums(3, v))
                    cfg.system.components.push_back(Component::ellipse(v[0], v[1], v[2]));
            } else {
                issue(lineno, "unknown component shape '" + tok[0] +
                                  "' (interval, circle, ellipse)");
            }
        } else if (key == "nodes_per_component") {
            int_knob(key, value, lineno, 8, 1000000,
                     [&](long long v) { cfg.nodes_per_component = static_cast<std::size_t>(v); });
        } else if (key == "directions") {
            int_knob(key, value, lineno, 32, 8192,
                     [&](long long v) { cfg.directions = static_cast<int>(v); });
        } else if (key == "n_min") {
            int_knob(key, value, lineno, 1, 512,
                     [&](long long v) { cfg.n_min = static_cast<int>(v); });
        } else if (key == "n_max") {
            int_knob(key, value, lineno, 1, 512,
                     [&](long long v) { cfg.n_max = static_cast<int>(v); });
        } else if (key == "seed") {
            int_knob(key, value, lineno, 0, std::numeric_limits<long long>::max(),
                     [&](long long v) {
                         cfg.seed = static_cast<std::uint64_t>(v);
                         cfg.seed_set = true;
                     });
        } else if (key == "output") {
            if (once(key, lineno)) cfg.output = value;
        } else if (key == "format") {
            if (!once(key, lineno)) continue;
            if (value != "csv" && value != "json")
                issue(lineno, "format must be csv or json, got '" + value + "'");
            else
                cfg.format = value;
        } else {
            issue(lineno, "unknown key '" + key + "'");
        }
    }

    if (!seen.count("experiment")) issue(0, "missing required key 'experiment'");
    if (cfg.system.size() == 0) issue(0, "missing required key 'component'");
    if (cfg.n_max < cfg.n_min) issue(0, "n_max must be >= n_min");
    if (have_experiment && cfg.kind == ExperimentKind::elliptic_compare && cfg.system.size() != 2)
        issue(0, "elliptic_compare needs exactly two components (one interval, one curve)");
    if (cfg.system.size() != 0) {
        ValidationReport rep = validate_system(cfg.system);
        for (const auto& v : rep.violations) issue(0, "system: " + v);
    }

    res.ok = res.issues.empty();
    return res;
}

} // namespace cheblab
