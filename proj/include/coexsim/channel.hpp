#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coexsim/sim_time.hpp"

namespace coexsim {

enum class Network : std::uint8_t { NRU, WiFi };

enum class RecordKind : std::uint8_t { Data, Reservation };

// Any overlap fails both transmissions (error-free PHY, no capture).
// A record overlapping both networks is charged to the intra metric, so
// IntraCollision wins over CrossCollision when both apply.
enum class Outcome : std::uint8_t { Pending, Success, IntraCollision, CrossCollision };

enum class ChannelState : std::uint8_t { Idle, Busy };

struct TransmissionRecord {
    int id = -1;
    int owner = -1;
    Network network = Network::NRU;
    RecordKind kind = RecordKind::Data;
    SimTime start = 0;
    SimTime end = 0;
    Outcome outcome = Outcome::Pending;
    // overlap flags accumulated while the record is in flight
    bool hit_same_network = false;
    bool hit_other_network = false;
};

const char* to_string(Network n);
const char* to_string(RecordKind k);
const char* to_string(Outcome o);

// Shared-channel occupancy model. Records are inserted when their
// transmission starts and resolved when it ends; overlap bookkeeping happens
// at insertion so an outcome is fully determined by the time its end fires.
class ChannelTimeline {
public:
    // Overlapping inserts are legal; they become collisions.
    int begin_transmission(int owner, Network network, RecordKind kind,
                           SimTime start, SimTime duration);

    // Resolves and archives the record; call exactly once, at its end time.
    Outcome complete(int id);

    // Busy iff any active or completed record's [start, end) contains t.
    ChannelState sense(SimTime t) const;

    // Active records only; the engine's hot-path carrier sense.
    bool busy_at(SimTime t) const;

    int active_count() const { return static_cast<int>(active_.size()); }
    const std::vector<TransmissionRecord>& active() const { return active_; }
    const std::vector<TransmissionRecord>& history() const { return history_; }

    const TransmissionRecord& record(int id) const;

private:
    std::vector<TransmissionRecord> active_;
    std::vector<TransmissionRecord> history_; // completed, ordered by end time
    int next_id_ = 0;
};

// One line per completed record: start_us,end_us,owner,network,kind,outcome
std::string trace_line(const TransmissionRecord& r);
std::string format_trace(const std::vector<TransmissionRecord>& history);

} // namespace coexsim
