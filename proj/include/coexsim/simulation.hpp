#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "coexsim/access.hpp"
#include "coexsim/channel.hpp"
#include "coexsim/event_queue.hpp"
#include "coexsim/node.hpp"
#include "coexsim/rng.hpp"
#include "coexsim/skip.hpp"

namespace coexsim {

// Per-interaction-period summary handed to the learning agents.
struct PeriodView {
    double e_w = 0.0;     // Wi-Fi efficiency over the period
    double e_l_pc3 = 0.0; // NR-U PC3 efficiency over the period
    double d_l_pc1 = 1.0; // PC1 share of total NR-U delay, worst case 1
    double jfi = 1.0;     // network-level fairness over the period
};

// Contention windows to apply for the next period; -1 leaves a side
// untouched. The NR-U value drives the PC3 population; the PC1 node keeps
// its own access parameters.
struct PeriodDecision {
    int cw_nru = -1;
    int cw_wifi = -1;
};

class InteractionController {
public:
    virtual ~InteractionController() = default;
    virtual PeriodDecision on_period(const PeriodView& view, SimTime now) = 0;
};

// One per successful Data transmission: how long the node waited between
// the end of its previous success and this start. This is the URLLC-facing
// delay; the reported channel access delay is the start-to-start gap.
struct WaitSample {
    int node = -1;
    SimTime success_start = 0;
    SimTime waited = 0;
};

struct RunResult {
    std::vector<NodeConfig> node_configs; // includes drawn desync offsets
    std::vector<TransmissionRecord> history;
    std::vector<WaitSample> wait_samples;
    std::vector<int> frame_levels; // dynamic-skip level per radio frame
    SimTime horizon = 0;
};

std::optional<double> mean_wait_us(const RunResult& result, Priority priority);

// One deterministic run over a single shared channel. A Simulation owns all
// of its state; parallelism happens across independent runs only.
class Simulation {
public:
    Simulation(std::vector<NodeConfig> nodes, std::uint64_t seed,
               SimTime horizon = kDefaultSimTimeUs, SkipSettings skip = {},
               InteractionController* agent = nullptr);

    RunResult run();

private:
    enum class NodeState : std::uint8_t { Contending, GapWait, SkipWait, Occupying };

    struct NodeRuntime {
        NodeState state = NodeState::Contending;
        int counter = 0;
        int cw_cur = 15;
        SimTime defer_end = kInvalidTime; // slot grid origin while counting
        SimTime completion_at = kInvalidTime;
        SimTime wait_target = kInvalidTime; // GapWait boundary
        std::uint64_t gen = 0;
        int forfeits = 0; // transmission opportunities still to forfeit
        int fixed_mute_slot = 1;
        SimTime ready_since = 0;
        Rng rng;
    };

    struct PendingTx {
        int node = -1;
        RecordKind kind = RecordKind::Data;
        SimTime duration = 0;
    };

    void dispatch(const Event& e);
    void on_backoff_complete(int id, SimTime t);
    void protocol_dispatch(int id, SimTime t);
    void start_data(int id, SimTime t);
    void start_reservation_chain(int id, SimTime t, SimTime lssb);
    void join_tournament(int id, SimTime t);
    void resolve_tournament(SimTime lssb, SimTime t);
    void handle_record_end(int record_id, SimTime t);
    void post_data_end(const TransmissionRecord& rec, SimTime t);
    void handle_busy(SimTime t);
    void handle_idle(SimTime t);
    void handle_frame_tick(SimTime t);
    void handle_agent_tick(SimTime t);
    void become_contending(int id, SimTime t);
    void fail_attempt(int id, SimTime t);
    void schedule_completion(int id, SimTime when);
    int insert_record(int owner, RecordKind kind, SimTime start, SimTime duration);
    SkipLevel current_skip_level() const;

    std::vector<NodeConfig> cfg_;
    std::vector<NodeRuntime> nodes_;
    EventQueue queue_;
    ChannelTimeline chan_;
    bool channel_busy_ = false;
    std::vector<PendingTx> pending_tx_;
    std::map<SimTime, std::vector<int>> tournaments_;
    SimTime horizon_;
    SkipSettings skip_;
    std::optional<SkipController> controller_;
    InteractionController* agent_ = nullptr;

    std::vector<WaitSample> wait_samples_;
    std::vector<int> frame_levels_;
    std::size_t frame_scan_ = 0;
    std::optional<double> frame_ewma_;

    std::size_t period_scan_ = 0;
    std::size_t period_wait_scan_ = 0;
    SimTime period_start_ = 0;
    std::optional<double> ewma_gap_pc1_;
    std::optional<double> ewma_gap_pc3_;
};

} // namespace coexsim
