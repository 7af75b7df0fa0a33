#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coexsim/dqn.hpp"
#include "coexsim/metrics.hpp"
#include "coexsim/scenario.hpp"
#include "coexsim/simulation.hpp"

namespace coexsim {

// One CSV row: run identity plus the full-run (or one-window) snapshot.
struct ResultRow {
    std::string protocol;
    int n_nrus = 0;
    int n_wifi = 0;
    int n_pc3 = 0;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    SimTime window_start_us = 0;
    MetricsSnapshot snap;

    // skip-mode extras (emitted as trailing columns in skip mode only)
    std::string skip_tag;
    double skip_level_mean = 0.0;
    int skip_level_final = 0;
    std::optional<double> pc1_wait_us;
};

struct TrainOutput {
    std::vector<CurvePoint> curve;
    std::string checkpoint_path;
};

// Sweep executors. Rows come back sorted by (protocol/tag, n, seed) so the
// CSV is byte-stable for a fixed config and seed.
std::vector<ResultRow> compare_rows(const ScenarioConfig& cfg);
std::vector<ResultRow> skip_rows(const ScenarioConfig& cfg);
TrainOutput train_run(const ScenarioConfig& cfg);
std::vector<ResultRow> eval_rows(const ScenarioConfig& cfg);

std::string to_csv(const std::vector<ResultRow>& rows, bool skip_extras);
std::string curve_csv(const std::vector<CurvePoint>& curve);

// Runs one mode end to end and returns the CSV text destined for --out.
std::string run_mode(const ScenarioConfig& cfg);

// Single deterministic run helper shared by the sweeps and the tests.
RunResult run_single(const std::vector<NodeConfig>& nodes, std::uint64_t seed,
                     SimTime horizon, SkipSettings skip = {},
                     InteractionController* agent = nullptr);

void write_file(const std::string& path, const std::string& text);

} // namespace coexsim
