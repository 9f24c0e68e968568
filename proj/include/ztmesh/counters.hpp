#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <string>
#include <vector>

namespace ztmesh::metrics {

// Operation taxonomy tracked by the instrumented counters: exponentiation,
// hash, signing, model inference, policy comparison, scalar multiplication,
// symmetric cipher op.
enum class Op : int { Exp = 0, H, Sig, I, Cp, M, Cs };
inline constexpr int kOpCount = 7;

struct OpCounters {
    std::int64_t exp = 0;
    std::int64_t h = 0;
    std::int64_t sig = 0;
    std::int64_t i = 0;
    std::int64_t cp = 0;
    std::int64_t m = 0;
    std::int64_t cs = 0;

    OpCounters& operator+=(const OpCounters& o);
    friend OpCounters operator+(OpCounters a, const OpCounters& b) { return a += b; }
    OpCounters& operator-=(const OpCounters& o);
    friend OpCounters operator-(OpCounters a, const OpCounters& b) { return a -= b; }
    bool operator==(const OpCounters&) const = default;

    std::int64_t get(Op op) const;
    std::string to_string() const;
};

// Process-wide counter registry. Crypto and model call sites charge into it;
// scopes snapshot it to report per-flow deltas. Charges are atomic so worker
// threads may report, but scope bookkeeping itself belongs to one actor.
class Registry {
  public:
    void charge(Op op, std::int64_t n = 1);
    OpCounters totals() const;
    void reset();

    // Scope stack for labelled measurements. Scopes must close LIFO.
    std::uint64_t open_scope(std::string label);
    OpCounters close_scope(std::uint64_t id);  // throws UnbalancedScope
    OpCounters diff(std::uint64_t id) const;   // accrued so far, scope still open

  private:
    struct OpenScope {
        std::uint64_t id;
        std::string label;
        OpCounters start;
    };
    std::array<std::atomic<std::int64_t>, kOpCount> totals_{};
    std::vector<OpenScope> stack_;
    std::uint64_t next_id_ = 1;
};

Registry& registry();
inline void charge(Op op, std::int64_t n = 1) { registry().charge(op, n); }

// RAII labelled scope over the global registry.
class CounterScope {
  public:
    explicit CounterScope(std::string label, Registry& reg = registry());
    ~CounterScope();
    CounterScope(const CounterScope&) = delete;
    CounterScope& operator=(const CounterScope&) = delete;

    OpCounters diff() const;
    OpCounters close();

  private:
    Registry& reg_;
    std::uint64_t id_;
    bool closed_ = false;
};

}  // namespace ztmesh::metrics
