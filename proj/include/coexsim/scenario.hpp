#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coexsim/dqn.hpp"
#include "coexsim/node.hpp"
#include "coexsim/skip.hpp"

namespace coexsim {

// Full experiment description. Defaults reproduce the evaluation setup:
// CW 15/63 on both networks, 2 ms transmissions, 500 us sync slots, 10 s
// runs, gCR with 3 CR-slots and p_rs = 0.5.
struct ScenarioConfig {
    enum class Mode { Compare, Skip, Train, Eval };
    Mode mode = Mode::Compare;
    bool mode_explicit = false; // set when the config document names a mode

    int n_gnb = 11;
    int n_ap = 10;
    int n_pc1 = 1;
    int n_pc3 = 10;
    SimTime sim_time_us = kDefaultSimTimeUs;
    std::uint64_t base_seed = 1;
    int runs = 10;

    int cw_min = 15;
    int cw_max = 63;
    SimTime tx_duration_us = kTxDurationUs;

    ProtocolParams nru_protocol{Protocol::GCR_LBT};
    Protocol wifi_protocol = Protocol::EDCA;

    std::vector<Protocol> roster{Protocol::RS_LBT, Protocol::GAP_LBT, Protocol::CR_LBT,
                                 Protocol::GCR_LBT, Protocol::DB_LBT};
    std::vector<int> sweep_n{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};

    SkipSettings skip;
    std::vector<int> skip_levels{0, 1, 2, 3, 4};
    std::vector<double> skip_targets_us{500.0, 1000.0};
    bool skip_coexistence = false;
    std::vector<int> k_sweep{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};

    double alpha = 0.75;
    std::string checkpoint_path = "dqn.ckpt";
    SimTime train_time_us = 20'000'000;
    DqnConfig dqn;
    std::vector<int> rl_k; // eval sweep over PC3/STA counts; empty = {n_pc3}

    bool jfi_per_node = false;
    bool emit_windows = false;
    SimTime window_us = 1'000'000;

    std::string out_path;
    std::string trace_path;
    int parallel = 0; // 0 = hardware concurrency
};

const char* to_string(ScenarioConfig::Mode m);

// Flat-section key/value text: `[section]` headers, `key = value` lines,
// `#` comments, numbers, booleans, strings and `[a, b, lo..hi]` lists.
// Unknown keys, malformed values and violated invariants throw
// std::runtime_error naming the offending key.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

void validate(const ScenarioConfig& cfg);

// Node rosters for the concrete experiment layouts.
std::vector<NodeConfig> build_compare_nodes(const ScenarioConfig& cfg, Protocol nru_protocol,
                                            int n_per_network);
std::vector<NodeConfig> build_priority_nodes(const ScenarioConfig& cfg, int n_pc3,
                                             bool coexistence);

} // namespace coexsim
