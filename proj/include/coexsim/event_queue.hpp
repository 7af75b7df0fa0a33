#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "coexsim/sim_time.hpp"

namespace coexsim {

enum class EventKind : std::uint8_t {
    BackoffSlotTick,   // a node's backoff countdown would reach zero now
    TransmissionStart, // scheduled start of a pending transmission (aux = pending index)
    TransmissionEnd,   // aux = record id
    CrSlotBoundary,    // tournament resolution (node == -1) or CR deferral re-entry
    LssbTick,          // gap/hold expiry on a licensed slot boundary
    FrameTick,         // radio-frame boundary, drives the skip controller
    AgentTick,         // RL interaction period boundary
};

struct Event {
    SimTime time = 0;
    std::uint64_t seq = 0; // assigned by the queue; ties dequeue in schedule order
    EventKind kind = EventKind::BackoffSlotTick;
    int node = -1;
    std::int64_t aux = 0;
    std::uint64_t gen = 0; // cancellation guard for node-owned timers
};

// Min-heap on (time, seq). Equal-time events dequeue in scheduling order,
// which pins the full event trace for a fixed (seed, config).
class EventQueue {
public:
    // Throws std::logic_error when event.time is before the current clock.
    void schedule(Event event);

    Event pop();
    const Event& peek() const { return heap_.top(); }
    bool empty() const { return heap_.empty(); }
    SimTime now() const { return now_; }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
    SimTime now_ = 0;
};

} // namespace coexsim
