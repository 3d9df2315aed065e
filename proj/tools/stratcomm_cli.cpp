// Command-line driver for the strategic-communication toolkit.
//
// Exit codes: 0 success, 1 assertion/claim failure, 2 configuration error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "stratcomm/experiments.hpp"

namespace {

using nlohmann::json;
using namespace stratcomm;

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file " << out_path << "\n";
        return 2;
    }
    out << text;
    return 0;
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact simulator for information extraction from a strategic sender"};
    app.require_subcommand(1);

    std::string config_path, out_path, engine_override, suite, delta_text = "1/400";
    int threads = 1;
    long long cap = 0;
    int n_min_override = -1, n_max_override = -1;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("--config", config_path, "JSON experiment config")->required();
        cmd->add_option("--out", out_path, "output path (default: stdout)");
        cmd->add_option("--threads", threads, "worker threads (results are thread-count invariant)");
        cmd->add_option("--cap", cap, "sequence-engine size cap override");
        return cmd;
    };

    auto* analyze = add_common(app.add_subcommand("analyze-utility",
                                                  "gamma, its sign, the sufficient condition and "
                                                  "the rate-region report"),
                               true);
    auto* simulate = add_common(
        app.add_subcommand("simulate", "evaluate the configured strategy over an n range"), true);
    simulate->add_option("--engine", engine_override, "sequence|type|auto");
    simulate->add_option("--n-min", n_min_override, "override config n_min");
    simulate->add_option("--n-max", n_max_override, "override config n_max");
    auto* example2 = add_common(
        app.add_subcommand("example2", "nearby-type-class comparison curves (CSV)"), false);
    auto* example3 = add_common(
        app.add_subcommand("example3", "rate-gap demonstration at n = 36 (JSON)"), false);
    example3->add_option("--delta", delta_text, "slack, rational (default 1/400)");
    auto* brute = add_common(
        app.add_subcommand("brute-force", "exact minimum worst-case error over all images"),
        true);
    auto* verify = add_common(app.add_subcommand("verify", "run a named property suite"), false);
    verify->add_option("--suite", suite, "suite name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed() || simulate->parsed() || brute->parsed()) {
            ExperimentConfig cfg = load_config_file(config_path);
            if (cap > 0) cfg.cap = cap;
            if (simulate->parsed()) {
                if (!engine_override.empty()) {
                    if (engine_override == "sequence")
                        cfg.engine = ExperimentConfig::Engine::sequence;
                    else if (engine_override == "type")
                        cfg.engine = ExperimentConfig::Engine::type;
                    else if (engine_override == "auto")
                        cfg.engine = ExperimentConfig::Engine::auto_select;
                    else
                        throw ConfigError("--engine: must be sequence, type or auto");
                }
                if (n_min_override > 0) cfg.n_min = n_min_override;
                if (n_max_override > 0) cfg.n_max = n_max_override;
                if (cfg.n_min > cfg.n_max) throw ConfigError("--n-min exceeds --n-max");
                return write_output(pretty(cmd_simulate(cfg, threads)), out_path);
            }
            if (analyze->parsed())
                return write_output(pretty(cmd_analyze_utility(cfg)), out_path);
            return write_output(pretty(cmd_brute_force(cfg, threads)), out_path);
        }
        if (example2->parsed()) return write_output(cmd_example2_csv(threads), out_path);
        if (example3->parsed()) {
            const json report = cmd_example3(parse_rational(delta_text), threads);
            const int rc = write_output(pretty(report), out_path);
            if (rc != 0) return rc;
            return example3_claims_pass(report) ? 0 : 1;
        }
        if (verify->parsed()) {
            const SuiteResult result = run_verify_suite(suite, threads);
            const int rc = write_output(pretty(suite_to_json(result)), out_path);
            if (rc != 0) return rc;
            return result.pass() ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
