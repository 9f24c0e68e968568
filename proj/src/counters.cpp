#include "ztmesh/counters.hpp"

#include <sstream>

#include "ztmesh/errors.hpp"

namespace ztmesh::metrics {

OpCounters& OpCounters::operator+=(const OpCounters& o) {
    exp += o.exp;
    h += o.h;
    sig += o.sig;
    i += o.i;
    cp += o.cp;
    m += o.m;
    cs += o.cs;
    return *this;
}

OpCounters& OpCounters::operator-=(const OpCounters& o) {
    exp -= o.exp;
    h -= o.h;
    sig -= o.sig;
    i -= o.i;
    cp -= o.cp;
    m -= o.m;
    cs -= o.cs;
    return *this;
}

std::int64_t OpCounters::get(Op op) const {
    switch (op) {
        case Op::Exp: return exp;
        case Op::H: return h;
        case Op::Sig: return sig;
        case Op::I: return i;
        case Op::Cp: return cp;
        case Op::M: return m;
        case Op::Cs: return cs;
    }
    return 0;
}

std::string OpCounters::to_string() const {
    std::ostringstream os;
    os << "{Exp:" << exp << ",H:" << h << ",Sig:" << sig << ",I:" << i << ",CP:" << cp
       << ",M:" << m << ",CS:" << cs << "}";
    return os.str();
}

void Registry::charge(Op op, std::int64_t n) {
    totals_[static_cast<int>(op)].fetch_add(n, std::memory_order_relaxed);
}

OpCounters Registry::totals() const {
    OpCounters out;
    out.exp = totals_[0].load(std::memory_order_relaxed);
    out.h = totals_[1].load(std::memory_order_relaxed);
    out.sig = totals_[2].load(std::memory_order_relaxed);
    out.i = totals_[3].load(std::memory_order_relaxed);
    out.cp = totals_[4].load(std::memory_order_relaxed);
    out.m = totals_[5].load(std::memory_order_relaxed);
    out.cs = totals_[6].load(std::memory_order_relaxed);
    return out;
}

void Registry::reset() {
    for (auto& t : totals_) t.store(0, std::memory_order_relaxed);
    stack_.clear();
}

std::uint64_t Registry::open_scope(std::string label) {
    OpenScope s{next_id_++, std::move(label), totals()};
    stack_.push_back(std::move(s));
    return stack_.back().id;
}

OpCounters Registry::close_scope(std::uint64_t id) {
    if (stack_.empty() || stack_.back().id != id) {
        throw UnbalancedScope("counter scope closed out of order");
    }
    OpCounters delta = totals() - stack_.back().start;
    stack_.pop_back();
    return delta;
}

OpCounters Registry::diff(std::uint64_t id) const {
    for (const auto& s : stack_) {
        if (s.id == id) return totals() - s.start;
    }
    throw UnbalancedScope("counter scope not open");
}

Registry& registry() {
    static Registry reg;
    return reg;
}

CounterScope::CounterScope(std::string label, Registry& reg)
    : reg_(reg), id_(reg.open_scope(std::move(label))) {}

CounterScope::~CounterScope() {
    if (!closed_) {
        try {
            reg_.close_scope(id_);
        } catch (const UnbalancedScope&) {
        }
    }
}

OpCounters CounterScope::diff() const {
    return reg_.diff(id_);
}

OpCounters CounterScope::close() {
    closed_ = true;
    return reg_.close_scope(id_);
}

}  // namespace ztmesh::metrics
