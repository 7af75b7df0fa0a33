#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coexsim/adam.hpp"
#include "coexsim/mlp.hpp"
#include "coexsim/replay.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/simulation.hpp"

namespace coexsim {

inline constexpr int kActionCount = 7;

// State exchanged between the two networks; every component lies in [0,1].
struct DqnState {
    double e_w = 0.0;
    double e_l_pc3 = 0.0;
    double d_l_pc1 = 1.0;
    double cw_w_norm = 0.0;
    double cw_l_norm = 0.0;

    std::array<double, 5> flat() const { return {e_w, e_l_pc3, d_l_pc1, cw_w_norm, cw_l_norm}; }
};

struct Experience {
    DqnState s;
    int action = 0;
    double reward = 0.0;
    DqnState s2;
};

// CW = 2^(a+4) - 1, a in {0..6}: 15 up to 1023.
int cw_from_action(int a);

// State assembly from one interaction period. The CW components are the
// action indices currently in force, normalized by the action range.
DqnState build_state(const PeriodView& view, int action_ap, int action_gnb);

// Scalarized objective: alpha * (1 - D_l,pc1) + (1 - alpha) * JFI.
double reward(double alpha, double d_l_pc1, double jfi);

// Linear decay from 0.9 to 0.001 over the first 20% of iterations.
double epsilon(std::uint64_t iter, std::uint64_t total_iters);

double td_target(double r, double max_q_next, double gamma, bool terminal = false);

struct DqnConfig {
    double gamma = 0.7;
    double lr = 1e-3;
    int batch = 32;
    std::size_t replay_capacity = 10'000;
    std::vector<int> hidden = {128, 64};
    bool use_target_network = false; // optional periodically-copied target
    int target_sync_every = 100;
};

class DqnAgent {
public:
    DqnAgent(std::uint64_t seed, std::uint64_t stream, DqnConfig cfg = {});

    // epsilon-greedy; deterministic argmax ties break to the lowest index
    int act(const DqnState& s, double eps);

    void remember(const DqnState& s, int action, double r, const DqnState& s2);

    // one Adam update on a sampled batch; no-op until the buffer holds one
    bool train_step();

    const Mlp& net() const { return net_; }
    Mlp& net() { return net_; }
    AdamState& adam() { return adam_; }
    const AdamState& adam() const { return adam_; }
    const DqnConfig& config() const { return cfg_; }
    std::uint64_t updates() const { return updates_; }
    std::size_t buffered() const { return replay_.size(); }

    // called after a checkpoint load put weights and moments in place
    void mark_restored(std::uint64_t updates) {
        updates_ = updates;
        target_ = net_;
    }

private:
    DqnConfig cfg_;
    Rng rng_;
    Mlp net_;
    Mlp target_;
    AdamState adam_;
    ReplayBuffer<Experience> replay_;
    std::uint64_t updates_ = 0;
};

struct CurvePoint {
    std::uint64_t iter = 0;
    double eps = 0.0;
    double reward = 0.0;
    int action_gnb = 0;
    int action_ap = 0;
    PeriodView view;
};

// The gNB and AP side agents plus the shared interaction schedule. Both see
// the same state and the same scalar reward; the gNB sets the NR-U CW, the
// AP sets the Wi-Fi CW.
class DqnHarness : public InteractionController {
public:
    DqnHarness(std::uint64_t seed, double alpha, std::uint64_t total_iters, bool training,
               DqnConfig cfg = {});

    PeriodDecision on_period(const PeriodView& view, SimTime now) override;

    const std::vector<CurvePoint>& curve() const { return curve_; }
    DqnAgent& gnb() { return gnb_; }
    DqnAgent& ap() { return ap_; }
    const DqnAgent& gnb() const { return gnb_; }
    const DqnAgent& ap() const { return ap_; }
    double alpha() const { return alpha_; }
    std::uint64_t total_iters() const { return total_iters_; }

    // fresh harness for evaluation runs reusing trained weights
    void reset_episode();

private:
    double alpha_;
    std::uint64_t total_iters_;
    bool training_;
    DqnAgent gnb_;
    DqnAgent ap_;
    std::vector<CurvePoint> curve_;
    DqnState prev_state_;
    bool have_prev_ = false;
    int action_gnb_ = 0;
    int action_ap_ = 0;
    std::uint64_t iter_ = 0;
};

// Versioned binary checkpoint: header, layer dimensions, row-major
// little-endian f64 parameter arrays and Adam moments for both agents.
void save_checkpoint(const std::string& path, const DqnHarness& harness);
void load_checkpoint(const std::string& path, DqnHarness& harness);

} // namespace coexsim
