#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <unordered_set>
#include <vector>

namespace scalewall {

enum class EventKind : std::uint8_t {
  MobilityUpdate,
  BeaconEmit,      // LSR heartbeat, or OLSR Hello
  MessageDeliver,  // payload indexes the engine's in-flight transmission pool
  TimeoutScan,
  TcEmit,
  Snapshot,
};

struct Event {
  double fire_time = 0.0;
  std::uint64_t tiebreak_seq = 0;  // assigned by the scheduler
  EventKind kind = EventKind::Snapshot;
  std::int32_t node = -1;
  std::uint32_t payload = 0;
};

struct EventHandle {
  std::uint64_t seq = 0;
};

/// Min-queue on (fire_time, tiebreak_seq). Single-threaded.
class Scheduler {
 public:
  /// Throws std::invalid_argument if fire_time lies before the current clock.
  EventHandle schedule(Event event);
  void cancel(EventHandle handle);

  /// Pops the next live event and advances the clock to its fire time.
  std::optional<Event> pop();
  /// Like pop(), but leaves events after `horizon` in the queue.
  std::optional<Event> pop_until(double horizon);

  double now() const { return now_; }
  std::size_t pending() const { return queue_.size() - cancelled_.size(); }
  std::uint64_t fired() const { return fired_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
      return a.tiebreak_seq > b.tiebreak_seq;
    }
  };

  void drop_cancelled_top();

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::unordered_set<std::uint64_t> cancelled_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t fired_ = 0;
  double now_ = 0.0;
};

}  // namespace scalewall
