#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace ztmesh::sim {

enum class EventKind { message_arrival, request_issued, token_presented, round_tick };
std::string to_string(EventKind kind);

// Discrete-event queue: events run in non-decreasing time order, FIFO among
// equal times by insertion order. The clock never moves backwards.
class EventQueue {
  public:
    struct LogEntry {
        double time_ms = 0.0;
        EventKind kind = EventKind::message_arrival;
        std::string detail;
    };

    using Action = std::function<void(double now_ms)>;

    // Throws PastEvent if time_ms is before the current clock.
    void schedule(double time_ms, EventKind kind, std::string detail, Action action);

    // Processes events until the queue drains or the next event would exceed
    // `until`. Returns entries processed by this call.
    std::vector<LogEntry> run_until(std::optional<double> until = std::nullopt);

    double now() const { return now_ms_; }
    bool empty() const { return queue_.empty(); }
    const std::vector<LogEntry>& log() const { return log_; }

  private:
    struct Pending {
        double time_ms;
        std::uint64_t seq;
        EventKind kind;
        std::string detail;
        Action action;
    };
    struct Later {
        bool operator()(const Pending& a, const Pending& b) const {
            if (a.time_ms != b.time_ms) return a.time_ms > b.time_ms;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Pending, std::vector<Pending>, Later> queue_;
    std::vector<LogEntry> log_;
    double now_ms_ = 0.0;
    std::uint64_t next_seq_ = 0;
};

}  // namespace ztmesh::sim
