#pragma once

#include <cstdint>
#include <string>

#include "coexsim/channel.hpp"
#include "coexsim/sim_time.hpp"

namespace coexsim {

enum class Priority : std::uint8_t { PC1, PC3, WiFiBE };

enum class Protocol : std::uint8_t {
    EDCA,    // Wi-Fi Best Effort CSMA/CA
    RS_LBT,  // reserve the channel until the next licensed slot boundary
    GAP_LBT, // stay silent until the boundary, abandon on busy
    CR_LBT,  // collision-resolution slots, fixed per-node mute slot
    ECR_LBT, // mute slot re-drawn every attempt, first slot always transmits
    GCR_LBT, // probabilistic reservation per slot, first slot always transmits
    DB_LBT,  // deterministic post-success backoff (round robin)
};

const char* to_string(Protocol p);
bool protocol_from_string(const std::string& s, Protocol& out);
bool is_cr_family(Protocol p);

struct ProtocolParams {
    Protocol kind = Protocol::EDCA;
    bool gap_desync = false;   // GAP-LBT: per-node boundary offsets
    int n_sl = 3;              // CR family: collision-resolution slot count
    double p_rs = 0.5;         // gCR: reservation probability per later slot
    int db_fixed = 64;         // DB: deterministic backoff after a success
    bool db_both_networks = true; // DB: Wi-Fi side runs the DB rule as well
};

struct NodeConfig {
    int id = 0;
    Network network = Network::WiFi;
    Priority priority = Priority::WiFiBE;
    ProtocolParams protocol;
    int cw_min = 15;
    int cw_max = 63;
    SimTime tx_duration = kTxDurationUs;
    SimTime lssb_offset = 0; // NR-U only, in [0, 500)
};

// Throws std::invalid_argument on a violated invariant.
void validate(const NodeConfig& cfg);

} // namespace coexsim
