// Config-driven experiment runner; see README for the config grammar.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "cheblab/config.hpp"
#include "cheblab/runner.hpp"

namespace {

int report_issues(const std::string& path, const cheblab::ParseResult& pr) {
    for (const auto& is : pr.issues) {
        std::cerr << path << ":";
        if (is.line > 0) std::cerr << is.line;
        std::cerr << ": " << is.message << "\n";
    }
    return 2;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chebyshev-number laboratory"};
    app.require_subcommand(1);

    std::string config_path, output_override, format_override;
    int jobs = 1;

    CLI::App* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
    run_cmd->add_option("config", config_path, "config file")
        ->required()
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--output", output_override, "output path (overrides the config)");
    run_cmd->add_option("--format", format_override, "output format (overrides the config)")
        ->check(CLI::IsMember({"csv", "json"}));
    run_cmd->add_option("--jobs", jobs, "parallel solves within a degree sweep")
        ->check(CLI::Range(1, 256));

    CLI::App* validate_cmd = app.add_subcommand("validate", "parse and validate a config file");
    validate_cmd->add_option("config", config_path, "config file")
        ->required()
        ->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    cheblab::ParseResult pr = cheblab::parse_config(slurp(config_path));

    if (validate_cmd->parsed()) {
        if (!pr.ok) return report_issues(config_path, pr);
        std::cout << "valid: " << cheblab::to_string(pr.config.kind) << " experiment, "
                  << pr.config.system.size() << " component(s)\n";
        return 0;
    }

    if (!pr.ok) return report_issues(config_path, pr);
    if (!output_override.empty()) pr.config.output = output_override;
    if (!format_override.empty()) pr.config.format = format_override;

    auto error_record = [](const std::string& module, const std::string& op,
                           const std::string& message) {
        nlohmann::ordered_json e{{"error", {{"module", module}, {"operation", op},
                                            {"message", message}}}};
        std::cerr << e.dump() << "\n";
        return 1;
    };

    cheblab::ExperimentOutput out;
    try {
        out = cheblab::run_experiment(pr.config, jobs);
    } catch (const cheblab::error& e) {
        return error_record(e.module_name(), e.operation(), e.message());
    }

    if (pr.config.output.empty()) {
        std::cout << out.text;
    } else {
        std::ofstream f(pr.config.output, std::ios::binary);
        if (!f) return error_record("cli", "run", "cannot open output path");
        f << out.text;
        std::cerr << "wrote " << pr.config.output << " (" << out.rows << " rows)\n";
    }
    return 0;
}
