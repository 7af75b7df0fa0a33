#include "coexsim/simulation.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "coexsim/metrics.hpp"

namespace coexsim {

std::optional<double> mean_wait_us(const RunResult& result, Priority priority) {
    double sum = 0.0;
    long count = 0;
    for (const auto& s : result.wait_samples) {
        if (result.node_configs[s.node].priority != priority) continue;
        sum += static_cast<double>(s.waited);
        ++count;
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

Simulation::Simulation(std::vector<NodeConfig> nodes, std::uint64_t seed, SimTime horizon,
                       SkipSettings skip, InteractionController* agent)
    : cfg_(std::move(nodes)), horizon_(horizon), skip_(skip), agent_(agent) {
    nodes_.resize(cfg_.size());
    for (std::size_t i = 0; i < cfg_.size(); ++i) {
        auto& c = cfg_[i];
        c.id = static_cast<int>(i);
        auto& n = nodes_[i];
        n.rng = Rng(seed, 100 + i);
        if (c.network == Network::NRU && c.protocol.kind == Protocol::GAP_LBT &&
            c.protocol.gap_desync) {
            c.lssb_offset = n.rng.uniform_int(0, kSyncSlotUs - 1);
        }
        validate(c);
        n.cw_cur = c.cw_min;
        if (is_cr_family(c.protocol.kind)) {
            n.fixed_mute_slot = static_cast<int>(n.rng.uniform_int(1, c.protocol.n_sl));
        }
        // the adjusted initial backoff lets newcomers slot into the DB ring
        n.counter = c.protocol.kind == Protocol::DB_LBT
                        ? static_cast<int>(n.rng.uniform_int(0, c.protocol.db_fixed))
                        : draw_backoff(n.rng, c.cw_min);
    }
}

RunResult Simulation::run() {
    handle_idle(0);
    if (skip_.mode == SkipSettings::Mode::Dynamic) {
        controller_.emplace(skip_.target_delay_us, skip_.deescalate_factor);
        queue_.schedule({kFrameUs, 0, EventKind::FrameTick, -1, 0, 0});
    }
    if (agent_ != nullptr) {
        queue_.schedule({kAgentPeriodUs, 0, EventKind::AgentTick, -1, 0, 0});
    }

    while (!queue_.empty() && queue_.peek().time <= horizon_) {
        dispatch(queue_.pop());
    }

    RunResult result;
    result.node_configs = cfg_;
    result.history = chan_.history();
    result.wait_samples = std::move(wait_samples_);
    result.frame_levels = std::move(frame_levels_);
    result.horizon = horizon_;
    return result;
}

void Simulation::dispatch(const Event& e) {
    switch (e.kind) {
        case EventKind::BackoffSlotTick: {
            auto& n = nodes_[e.node];
            if (e.gen != n.gen) return; // cancelled timer
            on_backoff_complete(e.node, e.time);
            return;
        }
        case EventKind::TransmissionStart: {
            const PendingTx p = pending_tx_[e.aux];
            insert_record(p.node, p.kind, e.time, p.duration);
            return;
        }
        case EventKind::TransmissionEnd:
            handle_record_end(static_cast<int>(e.aux), e.time);
            return;
        case EventKind::CrSlotBoundary: {
            if (e.node < 0) {
                resolve_tournament(e.aux, e.time);
                return;
            }
            auto& n = nodes_[e.node];
            if (e.gen != n.gen) return;
            // deferred contender resumes contention, CW untouched
            n.counter = draw_backoff(n.rng, n.cw_cur);
            become_contending(e.node, e.time);
            return;
        }
        case EventKind::LssbTick: {
            auto& n = nodes_[e.node];
            if (e.gen != n.gen) return;
            if (n.state == NodeState::SkipWait) {
                // boundaries inside a transmission are not usable; try the next
                if (channel_busy_) {
                    ++n.gen;
                    queue_.schedule({e.time + kSyncSlotUs, 0, EventKind::LssbTick, e.node, 0,
                                     n.gen});
                } else {
                    become_contending(e.node, e.time); // the sat-out slot has passed
                }
                return;
            }
            assert(n.state == NodeState::GapWait);
            start_data(e.node, e.time);
            return;
        }
        case EventKind::FrameTick:
            handle_frame_tick(e.time);
            return;
        case EventKind::AgentTick:
            handle_agent_tick(e.time);
            return;
    }
}

void Simulation::schedule_completion(int id, SimTime when) {
    auto& n = nodes_[id];
    ++n.gen;
    n.completion_at = when;
    queue_.schedule({when, 0, EventKind::BackoffSlotTick, id, 0, n.gen});
}

void Simulation::become_contending(int id, SimTime t) {
    auto& n = nodes_[id];
    n.state = NodeState::Contending;
    ++n.gen;
    n.completion_at = kInvalidTime;
    if (!channel_busy_) {
        n.defer_end = t + kAifsUs;
        schedule_completion(id, n.defer_end + static_cast<SimTime>(n.counter) * kSlotUs);
    } else {
        n.defer_end = kInvalidTime;
    }
}

void Simulation::fail_attempt(int id, SimTime t) {
    auto& n = nodes_[id];
    n.cw_cur = std::min(2 * n.cw_cur + 1, cfg_[id].cw_max);
    n.counter = draw_backoff(n.rng, n.cw_cur);
    become_contending(id, t);
}

void Simulation::on_backoff_complete(int id, SimTime t) {
    auto& n = nodes_[id];
    assert(n.state == NodeState::Contending);
    n.completion_at = kInvalidTime;

    if (n.forfeits > 0) {
        // priority skip: the win is forfeited; the node sits out the slot
        // boundary it would have used and contends fresh afterwards
        --n.forfeits;
        n.counter = draw_backoff(n.rng, n.cw_cur);
        n.state = NodeState::SkipWait;
        n.defer_end = kInvalidTime;
        ++n.gen;
        const SimTime bound = next_lssb(t + 1, cfg_[id].lssb_offset);
        queue_.schedule({bound, 0, EventKind::LssbTick, id, 0, n.gen});
        return;
    }

    protocol_dispatch(id, t);
}

void Simulation::protocol_dispatch(int id, SimTime t) {
    auto& n = nodes_[id];
    const auto& c = cfg_[id];
    switch (c.protocol.kind) {
        case Protocol::EDCA:
            start_data(id, t);
            return;
        case Protocol::DB_LBT:
            if (c.network == Network::WiFi) {
                start_data(id, t);
                return;
            }
            [[fallthrough]]; // NR-U DB reserves up to the boundary like RS
        case Protocol::RS_LBT: {
            const SimTime lssb = next_lssb(t, c.lssb_offset);
            if (lssb == t)
                start_data(id, t);
            else
                start_reservation_chain(id, t, lssb);
            return;
        }
        case Protocol::GAP_LBT: {
            if (channel_busy_) {
                // a co-instant start beat us; the gap is lost before it began
                fail_attempt(id, t);
                return;
            }
            const SimTime lssb = next_lssb(t, c.lssb_offset);
            if (lssb == t) {
                start_data(id, t);
                return;
            }
            n.state = NodeState::GapWait;
            n.wait_target = lssb;
            ++n.gen;
            queue_.schedule({lssb, 0, EventKind::LssbTick, id, 0, n.gen});
            return;
        }
        case Protocol::CR_LBT:
        case Protocol::ECR_LBT:
        case Protocol::GCR_LBT:
            join_tournament(id, t);
            return;
    }
}

int Simulation::insert_record(int owner, RecordKind kind, SimTime start, SimTime duration) {
    const int id = chan_.begin_transmission(owner, cfg_[owner].network, kind, start, duration);
    queue_.schedule({start + duration, 0, EventKind::TransmissionEnd, owner, id, 0});
    if (!channel_busy_) handle_busy(start);
    return id;
}

void Simulation::start_data(int id, SimTime t) {
    nodes_[id].state = NodeState::Occupying;
    insert_record(id, RecordKind::Data, t, cfg_[id].tx_duration);
}

void Simulation::start_reservation_chain(int id, SimTime t, SimTime lssb) {
    auto& n = nodes_[id];
    n.state = NodeState::Occupying;
    // data start is scheduled before the reservation-end event so the
    // boundary never shows a spurious idle transition
    pending_tx_.push_back({id, RecordKind::Data, cfg_[id].tx_duration});
    queue_.schedule({lssb, 0, EventKind::TransmissionStart, id,
                     static_cast<std::int64_t>(pending_tx_.size() - 1), 0});
    insert_record(id, RecordKind::Reservation, t, lssb - t);
}

void Simulation::join_tournament(int id, SimTime t) {
    const SimTime lssb = next_lssb(t, cfg_[id].lssb_offset);
    auto& contenders = tournaments_[lssb];
    if (contenders.empty()) {
        // resolves after every co-instant completion has registered
        queue_.schedule({t, 0, EventKind::CrSlotBoundary, -1, lssb, 0});
    }
    contenders.push_back(id);
    nodes_[id].state = NodeState::Occupying;
}

void Simulation::resolve_tournament(SimTime lssb, SimTime t) {
    auto it = tournaments_.find(lssb);
    assert(it != tournaments_.end());
    std::vector<int> contenders = std::move(it->second);
    tournaments_.erase(it);
    std::sort(contenders.begin(), contenders.end());

    const auto& params = cfg_[contenders.front()].protocol;
    const int n_sl = params.n_sl;
    const int fitting =
        static_cast<int>(std::min<SimTime>(n_sl, (lssb - t) / kSlotUs));

    std::vector<CrPattern> patterns;
    patterns.reserve(contenders.size());
    for (int id : contenders) {
        patterns.push_back(
            make_cr_pattern(cfg_[id].protocol, nodes_[id].rng, nodes_[id].fixed_mute_slot));
    }
    const CrResult result = cr_contention(patterns, n_sl, fitting);

    // survivors transmit data at the boundary; schedule those starts first
    for (int idx : result.survivors) {
        const int id = contenders[idx];
        pending_tx_.push_back({id, RecordKind::Data, cfg_[id].tx_duration});
        queue_.schedule({lssb, 0, EventKind::TransmissionStart, id,
                         static_cast<std::int64_t>(pending_tx_.size() - 1), 0});
    }
    for (int idx : result.survivors) {
        const int id = contenders[idx];
        if (lssb > t) insert_record(id, RecordKind::Reservation, t, lssb - t);
    }
    for (std::size_t k = 0; k < result.deferred.size(); ++k) {
        const int id = contenders[result.deferred[k]];
        const int slot = result.defer_slot[k];
        const SimTime slot_start = lssb - static_cast<SimTime>(n_sl - slot + 1) * kSlotUs;
        const SimTime slot_end = slot_start + kSlotUs;
        if (slot_start > t) insert_record(id, RecordKind::Reservation, t, slot_start - t);
        auto& n = nodes_[id];
        ++n.gen;
        queue_.schedule({slot_end, 0, EventKind::CrSlotBoundary, id, 0, n.gen});
    }
}

void Simulation::handle_record_end(int record_id, SimTime t) {
    const TransmissionRecord rec = chan_.record(record_id);
    const Outcome outcome = chan_.complete(record_id);
    if (rec.kind == RecordKind::Data) {
        TransmissionRecord done = rec;
        done.outcome = outcome;
        post_data_end(done, t);
    }
    if (channel_busy_ && !chan_.busy_at(t)) handle_idle(t);
}

void Simulation::post_data_end(const TransmissionRecord& rec, SimTime t) {
    const int id = rec.owner;
    auto& n = nodes_[id];
    const auto& c = cfg_[id];
    const bool success = rec.outcome == Outcome::Success;

    bool defer_next_attempt = false;
    if (success) {
        wait_samples_.push_back({id, rec.start, rec.start - n.ready_since});
        n.ready_since = rec.end;
        n.cw_cur = c.cw_min;
        if (skip_.mode != SkipSettings::Mode::Off && c.priority == Priority::PC3) {
            const SkipDirective d = apply_skip(current_skip_level());
            if (d.mode == SkipDirective::Mode::DeferToNextLssb) defer_next_attempt = true;
            if (d.mode == SkipDirective::Mode::SkipOpportunities) n.forfeits = d.count;
        }
    } else {
        n.cw_cur = std::min(2 * n.cw_cur + 1, c.cw_max);
    }
    n.counter = c.protocol.kind == Protocol::DB_LBT
                    ? db_next_backoff(success, c.protocol.db_fixed, n.cw_cur, n.rng)
                    : draw_backoff(n.rng, n.cw_cur);
    if (defer_next_attempt) {
        // the next attempt may not start before the next usable boundary
        n.state = NodeState::SkipWait;
        n.defer_end = kInvalidTime;
        ++n.gen;
        queue_.schedule({next_lssb(t + 1, c.lssb_offset), 0, EventKind::LssbTick, id, 0, n.gen});
        return;
    }
    become_contending(id, t);
}

void Simulation::handle_busy(SimTime t) {
    channel_busy_ = true;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        auto& n = nodes_[i];
        switch (n.state) {
            case NodeState::Contending: {
                // a completion landing exactly at t still fires: both nodes
                // decided to transmit in the same slot and must collide
                if (n.completion_at != kInvalidTime && n.completion_at > t) {
                    SimTime elapsed = 0;
                    if (n.defer_end != kInvalidTime && t > n.defer_end)
                        elapsed = (t - n.defer_end) / kSlotUs;
                    n.counter = static_cast<int>(
                        std::max<SimTime>(0, n.counter - elapsed));
                    ++n.gen;
                    n.completion_at = kInvalidTime;
                    n.defer_end = kInvalidTime;
                }
                break;
            }
            case NodeState::GapWait:
                if (t < n.wait_target) {
                    ++n.gen;
                    fail_attempt(static_cast<int>(i), t); // lost the channel mid-gap
                }
                break;
            case NodeState::SkipWait: // already silent; just waiting it out
            case NodeState::Occupying:
                break;
        }
    }
}

void Simulation::handle_idle(SimTime t) {
    channel_busy_ = false;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        auto& n = nodes_[i];
        if (n.state != NodeState::Contending) continue;
        assert(n.completion_at == kInvalidTime);
        n.defer_end = t + kAifsUs;
        schedule_completion(static_cast<int>(i),
                            n.defer_end + static_cast<SimTime>(n.counter) * kSlotUs);
    }
}

SkipLevel Simulation::current_skip_level() const {
    if (skip_.mode == SkipSettings::Mode::Fixed)
        return static_cast<SkipLevel>(skip_.fixed_level);
    if (skip_.mode == SkipSettings::Mode::Dynamic && controller_)
        return controller_->level();
    return SkipLevel::NoSkip;
}

void Simulation::handle_frame_tick(SimTime t) {
    double sum = 0.0;
    long count = 0;
    for (std::size_t i = frame_scan_; i < wait_samples_.size(); ++i) {
        const auto& s = wait_samples_[i];
        if (cfg_[s.node].priority == Priority::PC1) {
            sum += static_cast<double>(s.waited);
            ++count;
        }
    }
    frame_scan_ = wait_samples_.size();

    std::optional<double> measured;
    if (count > 0) {
        const double mean = sum / static_cast<double>(count);
        frame_ewma_ = frame_ewma_ ? 0.5 * *frame_ewma_ + 0.5 * mean : mean;
        measured = frame_ewma_;
    }
    controller_->update(measured); // no-sample frame escalates
    frame_levels_.push_back(static_cast<int>(controller_->level()));

    queue_.schedule({t + kFrameUs, 0, EventKind::FrameTick, -1, 0, 0});
}

void Simulation::handle_agent_tick(SimTime t) {
    const SimTime p0 = period_start_;
    const SimTime p1 = t;

    SimTime air_nru = 0;
    SimTime air_wifi = 0;
    SimTime air_pc3 = 0;
    const auto& history = chan_.history();
    for (std::size_t i = period_scan_; i < history.size(); ++i) {
        const auto& r = history[i];
        if (r.kind != RecordKind::Data || r.outcome != Outcome::Success) continue;
        const SimTime a = std::max(r.start, p0);
        const SimTime b = std::min(r.end, p1);
        if (b <= a) continue;
        if (r.network == Network::WiFi) {
            air_wifi += b - a;
        } else {
            air_nru += b - a;
            if (cfg_[r.owner].priority == Priority::PC3) air_pc3 += b - a;
        }
    }
    period_scan_ = history.size();

    // per-class access-interval EWMA, carried across periods so sparse PC1
    // successes still produce a usable delay share
    for (std::size_t i = period_wait_scan_; i < wait_samples_.size(); ++i) {
        const auto& s = wait_samples_[i];
        const auto& c = cfg_[s.node];
        if (c.network != Network::NRU) continue;
        const double gap = static_cast<double>(s.waited + c.tx_duration);
        auto& e = c.priority == Priority::PC1 ? ewma_gap_pc1_ : ewma_gap_pc3_;
        e = e ? 0.5 * *e + 0.5 * gap : gap;
    }
    period_wait_scan_ = wait_samples_.size();

    const double win = static_cast<double>(p1 - p0);
    PeriodView view;
    view.e_w = static_cast<double>(air_wifi) / win;
    view.e_l_pc3 = static_cast<double>(air_pc3) / win;
    view.d_l_pc1 = pc1_delay_share(ewma_gap_pc1_, ewma_gap_pc3_);
    const double xs[2] = {static_cast<double>(air_nru), static_cast<double>(air_wifi)};
    view.jfi = jain_index(xs);

    const PeriodDecision decision = agent_->on_period(view, t);
    for (std::size_t i = 0; i < cfg_.size(); ++i) {
        auto& c = cfg_[i];
        int cw = -1;
        if (c.network == Network::NRU && c.priority == Priority::PC3)
            cw = decision.cw_nru;
        else if (c.network == Network::WiFi)
            cw = decision.cw_wifi;
        if (cw > 0) {
            c.cw_min = cw;
            c.cw_max = cw;
            nodes_[i].cw_cur = cw;
        }
    }

    period_start_ = t;
    queue_.schedule({t + kAgentPeriodUs, 0, EventKind::AgentTick, -1, 0, 0});
}

} // namespace coexsim
