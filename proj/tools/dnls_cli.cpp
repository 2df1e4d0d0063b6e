#include <chrono>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "dnls/dnls.h"
#include "output.hpp"

using namespace dnls_cli;

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c == '\n' ? ' ' : c);
    }
    return out + "\"";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudospectral DNLS verification runs"};
    app.require_subcommand(1, 1);
    std::string config_path;
    std::string output_dir;
    for (const auto& name : subcommands()) {
        auto* sub = app.add_subcommand(name, "run " + name);
        sub->add_option("config", config_path, "run configuration file")->required();
        sub->add_option("-o,--output-dir", output_dir, "output directory (overrides output.directory)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid_config;
    }
    const std::string cmd = app.get_subcommands().front()->get_name();

    const auto start = std::chrono::steady_clock::now();
    std::optional<Config> cfg;
    int code = exit_ok;
    std::string dir = output_dir.empty() ? "out" : output_dir;
    std::vector<std::string> formats{"csv"};
    nlohmann::ordered_json echo = nullptr;

    try {
        cfg.emplace(Config::load(config_path));
        echo = cfg->to_json();
        if (output_dir.empty()) dir = cfg->text("output", "directory", dir);
        if (cfg->has("output", "formats")) {
            formats = cfg->texts("output", "formats");
            for (const auto& f : formats)
                if (f != "csv" && f != "json") throw ConfigError("output.formats", "output.formats: unknown format '" + f + "'");
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: code=invalid_config field=" << e.field() << " message=" << quoted(e.what()) << '\n';
        code = exit_invalid_config;
    }

    RunOutput out(dir, formats);
    if (code == exit_ok) {
        try {
            run_subcommand(cmd, *cfg, out);
            for (const auto& c : out.checks())
                if (!c.passed) {
                    std::cerr << "check_failed: name=" << c.name << " value=" << format_number(c.value)
                              << " threshold=" << format_number(c.threshold) << " bound=" << (c.upper ? "upper" : "lower")
                              << '\n';
                    code = exit_check_failed;
                }
        } catch (const ConfigError& e) {
            std::cerr << "error: code=invalid_config field=" << e.field() << " message=" << quoted(e.what()) << '\n';
            code = exit_invalid_config;
        } catch (const ApiError& e) {
            std::cerr << "error: code=" << dnls_status_name(e.status()) << " message=" << quoted(e.what()) << '\n';
            code = exit_code_for(e.status());
        } catch (const std::exception& e) {
            std::cerr << "error: code=internal_error message=" << quoted(e.what()) << '\n';
            code = exit_numerical;
        }
    }

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
        out.write_manifest(echo, seconds, code, cmd);
    } catch (const std::exception& e) {
        std::cerr << "error: code=io_error message=" << quoted(e.what()) << '\n';
        if (code == exit_ok) code = exit_numerical;
    }
    return code;
}
