#include "scalewall/scheduler.hpp"

#include <stdexcept>
#include <string>

namespace scalewall {

EventHandle Scheduler::schedule(Event event) {
  if (event.fire_time < now_) {
    throw std::invalid_argument("cannot schedule event at t=" + std::to_string(event.fire_time) +
                                " before clock t=" + std::to_string(now_));
  }
  event.tiebreak_seq = next_seq_++;
  queue_.push(event);
  return EventHandle{event.tiebreak_seq};
}

void Scheduler::cancel(EventHandle handle) {
  if (handle.seq < next_seq_) cancelled_.insert(handle.seq);
}

void Scheduler::drop_cancelled_top() {
  while (!queue_.empty() && !cancelled_.empty()) {
    const auto it = cancelled_.find(queue_.top().tiebreak_seq);
    if (it == cancelled_.end()) break;
    cancelled_.erase(it);
    queue_.pop();
  }
}

std::optional<Event> Scheduler::pop() {
  drop_cancelled_top();
  if (queue_.empty()) return std::nullopt;
  Event e = queue_.top();
  queue_.pop();
  now_ = e.fire_time;
  ++fired_;
  return e;
}

std::optional<Event> Scheduler::pop_until(double horizon) {
  drop_cancelled_top();
  if (queue_.empty() || queue_.top().fire_time > horizon) return std::nullopt;
  return pop();
}

}  // namespace scalewall
