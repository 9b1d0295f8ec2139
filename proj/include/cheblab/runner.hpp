#pragma once
// Experiment orchestration: one document per run (version, canonical config
// echo, derived constants, fixed column schema, data rows), serialized to CSV
// or JSON. Output bytes depend only on the config and tool version.

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "chebyshev.hpp"
#include "config.hpp"
#include "elliptic.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "potential.hpp"
#include "version.hpp"

namespace cheblab {

namespace detail {

using ojson = nlohmann::ordered_json;

inline std::string component_echo(const Component& c) {
    char buf[128];
    if (c.is_arc()) {
        std::snprintf(buf, sizeof buf, "interval %.17g %.17g", c.alpha, c.beta);
    } else if (c.shape == Component::Shape::circle) {
        std::snprintf(buf, sizeof buf, "circle %.17g %.17g", c.center, c.semi_x);
    } else {
        std::snprintf(buf, sizeof buf, "ellipse %.17g %.17g %.17g", c.center, c.semi_x, c.semi_y);
    }
    return buf;
}

inline ojson config_echo(const ExperimentConfig& cfg) {
    ojson j;
    j["experiment"] = to_string(cfg.kind);
    ojson comps = ojson::array();
    for (const auto& c : cfg.system.components) comps.push_back(component_echo(c));
    j["components"] = comps;
    j["nodes_per_component"] = cfg.nodes_per_component;
    j["directions"] = cfg.directions;
    j["n_min"] = cfg.n_min;
    j["n_max"] = cfg.n_max;
    if (cfg.seed_set) j["seed"] = cfg.seed;
    return j;
}

// CSV cell: strings raw, everything else through nlohmann's shortest
// round-trip number formatting so CSV and JSON agree byte-for-byte on values.
inline std::string csv_cell(const ojson& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline std::string to_csv(const ojson& doc) {
    std::string out;
    out += "# cheblab " + doc["version"].get<std::string>() + "\n";
    for (const auto& [key, value] : doc["config"].items()) {
        if (key == "components") {
            for (const auto& c : value) out += "# config: component = " + csv_cell(c) + "\n";
        } else {
            out += "# config: " + key + " = " + csv_cell(value) + "\n";
        }
    }
    for (const auto& [key, value] : doc["derived"].items())
        out += "# derived: " + key + " = " + csv_cell(value) + "\n";
    if (doc.contains("summary"))
        for (const auto& [key, value] : doc["summary"].items())
            out += "# summary: " + key + " = " + csv_cell(value) + "\n";
    std::string header;
    for (const auto& c : doc["columns"]) {
        if (!header.empty()) header += ",";
        header += c.get<std::string>();
    }
    out += header + "\n";
    for (const auto& row : doc["rows"]) {
        std::string line;
        for (const auto& cell : row) {
            if (!line.empty()) line += ",";
            line += csv_cell(cell);
        }
        out += line + "\n";
    }
    return out;
}

inline std::string kind_name(const Component& c) {
    if (c.is_arc()) return "interval";
    return c.shape == Component::Shape::circle ? "circle" : "ellipse";
}

} // namespace detail

struct ExperimentOutput {
    std::string text;
    std::string format; // csv | json
    std::size_t rows = 0;
};

inline ExperimentOutput run_experiment(const ExperimentConfig& cfg, int jobs = 1) {
    using detail::ojson;
    ojson doc;
    doc["version"] = version_string;
    doc["config"] = detail::config_echo(cfg);
    ojson derived;
    ojson columns = ojson::array();
    ojson rows = ojson::array();

    const bool real_set = [&] {
        for (const auto& c : cfg.system.components)
            if (!c.is_arc()) return false;
        return true;
    }();

    // degree sweep shared by ratio_sweep and corollary_check; remez on
    // all-interval systems, direction LP otherwise
    auto sweep_ratios = [&](const DiscretizedBoundary& bd, double capacity) {
        const int count = cfg.n_max - cfg.n_min + 1;
        std::vector<MinimaxResult> res(static_cast<std::size_t>(count));
        detail::parallel_for(count, jobs, [&](int i) {
            const int n = cfg.n_min + i;
            res[static_cast<std::size_t>(i)] =
                real_set ? remez_real(cfg.system, n) : minimax_lp(bd, n, cfg.directions);
        });
        std::vector<std::pair<MinimaxResult, double>> out;
        out.reserve(res.size());
        for (auto& r : res) {
            const double ratio = widom_ratio(r, capacity);
            out.emplace_back(std::move(r), ratio);
        }
        return out;
    };

    switch (cfg.kind) {
        case ExperimentKind::capacity: {
            DiscretizedBoundary bd = discretize(cfg.system, cfg.nodes_per_component);
            EquilibriumSolution eq = solve_equilibrium(bd);
            derived["capacity"] = eq.capacity;
            derived["robin_constant"] = eq.robin_constant;
            columns = {"component", "kind", "left", "right", "mass",
                       "harmonic_measure_infinity"};
            for (std::size_t k = 0; k < cfg.system.size(); ++k) {
                const Component& c = cfg.system[k];
                rows.push_back({k, detail::kind_name(c), c.left(), c.right(),
                                eq.component_mass[k], harmonic_measure_at_infinity(bd, k)});
            }
            break;
        }
        case ExperimentKind::equilibrium: {
            DiscretizedBoundary bd = discretize(cfg.system, cfg.nodes_per_component);
            EquilibriumSolution eq = solve_equilibrium(bd);
            derived["capacity"] = eq.capacity;
            derived["robin_constant"] = eq.robin_constant;
            for (std::size_t k = 0; k < cfg.system.size(); ++k)
                derived["component_mass_" + std::to_string(k)] = eq.component_mass[k];
            columns = {"index", "component", "param", "node_re", "node_im", "weight"};
            for (std::size_t k = 0; k < cfg.system.size(); ++k)
                for (std::size_t i = bd.offsets[k]; i < bd.offsets[k + 1]; ++i)
                    rows.push_back({i, k, bd.params[i], bd.nodes[i].real(), bd.nodes[i].imag(),
                                    eq.mu_weights(static_cast<Eigen::Index>(i))});
            break;
        }
        case ExperimentKind::green: {
            DiscretizedBoundary bd = discretize(cfg.system, cfg.nodes_per_component);
            EquilibriumSolution eq = solve_equilibrium(bd);
            GreenData gd = greens_function(eq);
            derived["capacity"] = eq.capacity;
            derived["robin_constant"] = eq.robin_constant;
            columns = {"gap", "z_star", "g_z_star"};
            for (std::size_t g = 0; g < gd.critical_points.size(); ++g)
                rows.push_back({g, gd.critical_points[g].first, gd.critical_points[g].second});
            break;
        }
        case ExperimentKind::ratio_sweep: {
            DiscretizedBoundary bd = discretize(cfg.system, cfg.nodes_per_component);
            EquilibriumSolution eq = solve_equilibrium(bd);
            derived["capacity"] = eq.capacity;
            derived["method"] = real_set ? "remez" : "lp";
            columns = {"n", "cheb_number", "log_cheb", "ratio"};
            for (const auto& [r, ratio] : sweep_ratios(bd, eq.capacity))
                rows.push_back({r.degree, r.cheb_number, r.log_cheb, ratio});
            break;
        }
        case ExperimentKind::elliptic_compare: {
            SweepOptions opt;
            opt.nodes_per_component = cfg.nodes_per_component;
            opt.directions = cfg.directions;
            opt.jobs = jobs;
            ComparisonTable tab = compare_prediction(cfg.system, cfg.n_min, cfg.n_max, opt);
            derived["capacity"] = tab.setup.equilibrium.capacity;
            derived["omega_infinity"] = tab.setup.data.omega_infinity;
            derived["modulus"] = tab.setup.condenser.modulus;
            derived["abs_tau_prime"] = tab.setup.data.abs_tau_prime;
            derived["nome_h"] = tab.setup.data.nome_h;
            derived["bound_lower"] = tab.setup.bounds.lower;
            derived["bound_upper"] = tab.setup.bounds.upper;
            ojson summary;
            summary["tail_start"] = tab.tail_start;
            summary["tail_count"] = tab.tail_count;
            summary["tail_max_deviation"] = tab.tail_max_deviation;
            summary["tail_correlation"] = tab.tail_correlation;
            doc["summary"] = summary;
            columns = {"n", "phase", "computed_ratio", "predicted_ratio", "rel_dev", "near_wrap"};
            for (const auto& r : tab.rows)
                rows.push_back({r.n, r.phase, r.computed_ratio, r.predicted_ratio,
                                r.rel_deviation, r.near_wrap ? 1 : 0});
            break;
        }
        case ExperimentKind::corollary_check: {
            DiscretizedBoundary bd = discretize(cfg.system, cfg.nodes_per_component);
            EquilibriumSolution eq = solve_equilibrium(bd);
            GreenData gd = greens_function(eq);
            WidomInterval wb = interval_bounds(eq, gd);
            const double tol = 1e-2; // finite n vs limit-point statement
            derived["capacity"] = eq.capacity;
            derived["method"] = real_set ? "remez" : "lp";
            derived["bound_lower"] = wb.lower;
            derived["bound_upper"] = wb.upper;
            derived["containment_tolerance"] = tol;
            columns = {"n", "ratio", "contained"};
            for (const auto& [r, ratio] : sweep_ratios(bd, eq.capacity)) {
                const bool in = ratio >= wb.lower - tol && ratio <= wb.upper + tol;
                rows.push_back({r.degree, ratio, in ? 1 : 0});
            }
            break;
        }
    }

    doc["derived"] = derived.is_null() ? ojson::object() : derived;
    doc["columns"] = columns;
    doc["rows"] = rows;
    // summary (when present) belongs between derived and columns; rebuild in
    // canonical order so JSON key order is schema-stable
    ojson canon;
    canon["version"] = doc["version"];
    canon["config"] = doc["config"];
    canon["derived"] = doc["derived"];
    if (doc.contains("summary")) canon["summary"] = doc["summary"];
    canon["columns"] = doc["columns"];
    canon["rows"] = doc["rows"];

    ExperimentOutput out;
    out.format = cfg.format;
    out.rows = rows.size();
    out.text = cfg.format == "json" ? canon.dump(2) + "\n" : detail::to_csv(canon);
    return out;
}

} // namespace cheblab
