#include "coexsim/access.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace coexsim {

const char* to_string(Protocol p) {
    switch (p) {
        case Protocol::EDCA: return "edca";
        case Protocol::RS_LBT: return "rs_lbt";
        case Protocol::GAP_LBT: return "gap_lbt";
        case Protocol::CR_LBT: return "cr_lbt";
        case Protocol::ECR_LBT: return "ecr_lbt";
        case Protocol::GCR_LBT: return "gcr_lbt";
        case Protocol::DB_LBT: return "db_lbt";
    }
    return "?";
}

bool protocol_from_string(const std::string& s, Protocol& out) {
    for (Protocol p : {Protocol::EDCA, Protocol::RS_LBT, Protocol::GAP_LBT,
                       Protocol::CR_LBT, Protocol::ECR_LBT, Protocol::GCR_LBT,
                       Protocol::DB_LBT}) {
        if (s == to_string(p)) {
            out = p;
            return true;
        }
    }
    return false;
}

bool is_cr_family(Protocol p) {
    return p == Protocol::CR_LBT || p == Protocol::ECR_LBT || p == Protocol::GCR_LBT;
}

void validate(const NodeConfig& cfg) {
    auto pow2m1 = [](int v) { return v >= 1 && ((v + 1) & v) == 0; };
    if (cfg.cw_min > cfg.cw_max)
        throw std::invalid_argument("node " + std::to_string(cfg.id) + ": cw_min > cw_max");
    if (!pow2m1(cfg.cw_min) || !pow2m1(cfg.cw_max))
        throw std::invalid_argument("node " + std::to_string(cfg.id) + ": CW must be 2^k - 1");
    if (cfg.tx_duration <= 0)
        throw std::invalid_argument("node " + std::to_string(cfg.id) + ": tx_duration <= 0");
    if (cfg.lssb_offset < 0 || cfg.lssb_offset >= kSyncSlotUs)
        throw std::invalid_argument("node " + std::to_string(cfg.id) + ": lssb_offset out of [0,500)");
    if (cfg.protocol.n_sl < 1)
        throw std::invalid_argument("node " + std::to_string(cfg.id) + ": n_sl < 1");
    if (cfg.protocol.p_rs < 0.0 || cfg.protocol.p_rs > 1.0)
        throw std::invalid_argument("node " + std::to_string(cfg.id) + ": p_rs out of [0,1]");
    if (cfg.protocol.db_fixed < 1)
        throw std::invalid_argument("node " + std::to_string(cfg.id) + ": db_fixed < 1");
    if (cfg.network == Network::WiFi && cfg.lssb_offset != 0)
        throw std::invalid_argument("node " + std::to_string(cfg.id) + ": Wi-Fi node with lssb_offset");
}

int draw_backoff(Rng& rng, int cw) {
    if (cw <= 0) return 0;
    return static_cast<int>(rng.uniform_int(0, cw));
}

SimTime next_lssb(SimTime t, SimTime offset) {
    const SimTime delta = t - offset;
    const SimTime k = delta <= 0 ? 0 : (delta + kSyncSlotUs - 1) / kSyncSlotUs;
    return offset + k * kSyncSlotUs;
}

int db_next_backoff(bool success, int db_fixed, int cw_current, Rng& rng) {
    if (success) return db_fixed;
    return draw_backoff(rng, cw_current);
}

CrPattern make_cr_pattern(const ProtocolParams& params, Rng& rng, int fixed_mute_slot) {
    CrPattern pat;
    const int n = params.n_sl;
    switch (params.kind) {
        case Protocol::CR_LBT: {
            for (int j = 1; j <= n; ++j)
                if (j != fixed_mute_slot) pat.tx_mask |= 1u << (j - 1);
            break;
        }
        case Protocol::ECR_LBT: {
            // slot 1 always transmits; the mute slot is re-drawn per attempt
            int mute = n >= 2 ? static_cast<int>(rng.uniform_int(2, n)) : 0;
            for (int j = 1; j <= n; ++j)
                if (j != mute) pat.tx_mask |= 1u << (j - 1);
            break;
        }
        case Protocol::GCR_LBT: {
            pat.tx_mask |= 1u; // slot 1 with probability 1
            for (int j = 2; j <= n; ++j)
                if (rng.bernoulli(params.p_rs)) pat.tx_mask |= 1u << (j - 1);
            break;
        }
        default:
            throw std::logic_error("make_cr_pattern: not a CR-family protocol");
    }
    return pat;
}

CrResult cr_contention(const std::vector<CrPattern>& patterns, int n_sl, int fitting_slots) {
    const int n = static_cast<int>(patterns.size());
    CrResult res;
    std::vector<bool> live(n, true);
    std::vector<int> defer_at(n, 0);

    const int first_slot = n_sl - std::min(n_sl, fitting_slots) + 1;
    for (int slot = first_slot; slot <= n_sl; ++slot) {
        bool any_tx = false;
        for (int i = 0; i < n; ++i)
            if (live[i] && patterns[i].transmits(slot)) any_tx = true;
        if (!any_tx) continue; // all live contenders silent: nobody senses anything
        for (int i = 0; i < n; ++i) {
            if (live[i] && !patterns[i].transmits(slot)) {
                live[i] = false;
                defer_at[i] = slot;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (live[i]) {
            res.survivors.push_back(i);
        } else {
            res.deferred.push_back(i);
            res.defer_slot.push_back(defer_at[i]);
        }
    }
    return res;
}

} // namespace coexsim
