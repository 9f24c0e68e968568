#include "ztmesh/sim/event_queue.hpp"

#include "ztmesh/errors.hpp"

namespace ztmesh::sim {

std::string to_string(EventKind kind) {
    switch (kind) {
        case EventKind::message_arrival: return "message_arrival";
        case EventKind::request_issued: return "request_issued";
        case EventKind::token_presented: return "token_presented";
        case EventKind::round_tick: return "round_tick";
    }
    return "message_arrival";
}

void EventQueue::schedule(double time_ms, EventKind kind, std::string detail, Action action) {
    if (time_ms < now_ms_) throw PastEvent("event scheduled before current clock");
    queue_.push(Pending{time_ms, next_seq_++, kind, std::move(detail), std::move(action)});
}

std::vector<EventQueue::LogEntry> EventQueue::run_until(std::optional<double> until) {
    std::vector<LogEntry> processed;
    while (!queue_.empty()) {
        const Pending& top = queue_.top();
        if (until.has_value() && top.time_ms > *until) break;
        Pending ev{top.time_ms, top.seq, top.kind, top.detail, top.action};
        queue_.pop();
        now_ms_ = ev.time_ms;
        LogEntry entry{ev.time_ms, ev.kind, ev.detail};
        log_.push_back(entry);
        processed.push_back(entry);
        if (ev.action) ev.action(now_ms_);
    }
    if (until.has_value() && *until > now_ms_) now_ms_ = *until;
    return processed;
}

}  // namespace ztmesh::sim
