#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coexsim/runner.hpp"
#include "coexsim/scenario.hpp"

namespace {

struct CliArgs {
    std::string config;
    std::string out;
    std::string trace;
    std::uint64_t seed = 0;
    int runs = 0;
    int parallel = 0;
};

void add_common(CLI::App* sub, CliArgs& args) {
    sub->add_option("--config", args.config, "scenario config file");
    sub->add_option("--out", args.out, "CSV output path (default: stdout)");
    sub->add_option("--trace", args.trace, "per-run transmission trace path");
    sub->add_option("--seed", args.seed, "base seed (overrides config)");
    sub->add_option("--runs", args.runs, "replications per point (overrides config)");
    sub->add_option("--parallel", args.parallel, "worker threads (0 = all cores)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coexsim: discrete-event simulator of 5G NR-U / Wi-Fi coexistence\n"
                 "on one unlicensed channel (LBT collision resolution, transmission\n"
                 "skipping, two-agent DQN contention-window control)"};
    app.require_subcommand(1);

    CliArgs args;
    auto* compare = app.add_subcommand(
        "compare", "sweep the LBT protocol roster over node counts, emit metric rows");
    auto* skip = app.add_subcommand(
        "skip", "sweep PC3 counts x skip levels (fixed and dynamic), emit PC1 delay rows");
    auto* train = app.add_subcommand(
        "train", "train the two-agent CW controller, write checkpoint + learning curve");
    auto* eval = app.add_subcommand(
        "eval", "run the greedy trained policy from a checkpoint, emit metric rows");
    for (auto* sub : {compare, skip, train, eval}) add_common(sub, args);

    CLI11_PARSE(app, argc, argv);

    try {
        coexsim::ScenarioConfig cfg;
        if (!args.config.empty()) cfg = coexsim::parse_config_file(args.config);

        CLI::App* active = compare;
        coexsim::ScenarioConfig::Mode mode = coexsim::ScenarioConfig::Mode::Compare;
        if (skip->parsed()) { mode = coexsim::ScenarioConfig::Mode::Skip; active = skip; }
        if (train->parsed()) { mode = coexsim::ScenarioConfig::Mode::Train; active = train; }
        if (eval->parsed()) { mode = coexsim::ScenarioConfig::Mode::Eval; active = eval; }
        if (cfg.mode_explicit && cfg.mode != mode) {
            std::cerr << "error: config declares mode '" << coexsim::to_string(cfg.mode)
                      << "' but the '" << coexsim::to_string(mode)
                      << "' subcommand was invoked\n";
            return 1;
        }
        cfg.mode = mode;

        if (active->count("--seed") > 0) cfg.base_seed = args.seed;
        if (active->count("--runs") > 0) cfg.runs = args.runs;
        if (active->count("--parallel") > 0) cfg.parallel = args.parallel;
        if (!args.out.empty()) cfg.out_path = args.out;
        if (!args.trace.empty()) cfg.trace_path = args.trace;
        coexsim::validate(cfg);

        const std::string csv = coexsim::run_mode(cfg);
        if (cfg.out_path.empty()) {
            std::cout << csv;
        } else {
            coexsim::write_file(cfg.out_path, csv);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
