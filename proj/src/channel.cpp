#include "coexsim/channel.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace coexsim {

const char* to_string(Network n) {
    return n == Network::NRU ? "nru" : "wifi";
}

const char* to_string(RecordKind k) {
    return k == RecordKind::Data ? "data" : "reservation";
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Pending: return "pending";
        case Outcome::Success: return "success";
        case Outcome::IntraCollision: return "intra_collision";
        case Outcome::CrossCollision: return "cross_collision";
    }
    return "?";
}

int ChannelTimeline::begin_transmission(int owner, Network network, RecordKind kind,
                                        SimTime start, SimTime duration) {
    assert(duration > 0);
    TransmissionRecord rec;
    rec.id = next_id_++;
    rec.owner = owner;
    rec.network = network;
    rec.kind = kind;
    rec.start = start;
    rec.end = start + duration;

    // Records insert at their start time, so every already-active record
    // began at or before rec.start; [a,b) overlaps [c,d) iff b > c here.
    for (auto& other : active_) {
        if (other.end > rec.start) {
            const bool same = other.network == rec.network;
            if (same) {
                other.hit_same_network = true;
                rec.hit_same_network = true;
            } else {
                other.hit_other_network = true;
                rec.hit_other_network = true;
            }
        }
    }
    active_.push_back(rec);
    return rec.id;
}

Outcome ChannelTimeline::complete(int id) {
    auto it = std::find_if(active_.begin(), active_.end(),
                           [id](const TransmissionRecord& r) { return r.id == id; });
    if (it == active_.end()) throw std::logic_error("complete: record not active");

    TransmissionRecord rec = *it;
    active_.erase(it);

    if (rec.hit_same_network) {
        rec.outcome = Outcome::IntraCollision;
    } else if (rec.hit_other_network) {
        rec.outcome = Outcome::CrossCollision;
    } else {
        rec.outcome = Outcome::Success;
    }
    history_.push_back(rec);
    return rec.outcome;
}

ChannelState ChannelTimeline::sense(SimTime t) const {
    for (const auto& r : active_) {
        if (r.start <= t && t < r.end) return ChannelState::Busy;
    }
    // history is ordered by end time; only the suffix with end > t can cover t
    for (auto it = history_.rbegin(); it != history_.rend(); ++it) {
        if (it->end <= t) break;
        if (it->start <= t) return ChannelState::Busy;
    }
    return ChannelState::Idle;
}

bool ChannelTimeline::busy_at(SimTime t) const {
    for (const auto& r : active_) {
        if (r.start <= t && t < r.end) return true;
    }
    return false;
}

const TransmissionRecord& ChannelTimeline::record(int id) const {
    for (const auto& r : active_) {
        if (r.id == id) return r;
    }
    for (const auto& r : history_) {
        if (r.id == id) return r;
    }
    throw std::logic_error("record: unknown id");
}

std::string trace_line(const TransmissionRecord& r) {
    std::string line;
    line += std::to_string(r.start);
    line += ',';
    line += std::to_string(r.end);
    line += ',';
    line += std::to_string(r.owner);
    line += ',';
    line += to_string(r.network);
    line += ',';
    line += to_string(r.kind);
    line += ',';
    line += to_string(r.outcome);
    return line;
}

std::string format_trace(const std::vector<TransmissionRecord>& history) {
    std::string out;
    for (const auto& r : history) {
        out += trace_line(r);
        out += '\n';
    }
    return out;
}

} // namespace coexsim
