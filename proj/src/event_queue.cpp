#include "coexsim/event_queue.hpp"

#include <stdexcept>
#include <string>

namespace coexsim {

void EventQueue::schedule(Event event) {
    if (event.time < now_) {
        throw std::logic_error("event scheduled in the past: t=" +
                               std::to_string(event.time) + " clock=" +
                               std::to_string(now_));
    }
    event.seq = next_seq_++;
    heap_.push(event);
}

Event EventQueue::pop() {
    Event e = heap_.top();
    heap_.pop();
    now_ = e.time;
    return e;
}

} // namespace coexsim
