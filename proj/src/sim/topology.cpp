#include "ztmesh/sim/topology.hpp"

#include <algorithm>

#include "ztmesh/errors.hpp"

namespace ztmesh::sim {

std::pair<std::string, std::string> Topology::ordered(const std::string& a,
                                                      const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

void Topology::add_domain(const std::string& id) {
    if (!has_domain(id)) domains_.push_back(id);
}

void Topology::add_edge(const std::string& a, const std::string& b, double latency_ms) {
    if (a == b) throw NotNeighbors("self-loops are not allowed");
    if (!has_domain(a) || !has_domain(b)) throw MalformedMessage("edge references unknown domain");
    if (latency_ms < 0.0) latency_ms = default_latency_ms;
    edges_[ordered(a, b)] = latency_ms;
}

bool Topology::has_domain(const std::string& id) const {
    return std::find(domains_.begin(), domains_.end(), id) != domains_.end();
}

bool Topology::is_neighbor(const std::string& a, const std::string& b) const {
    return edges_.contains(ordered(a, b));
}

double Topology::latency_ms(const std::string& a, const std::string& b) const {
    auto it = edges_.find(ordered(a, b));
    if (it == edges_.end()) throw NotNeighbors("domains are not adjacent: " + a + "," + b);
    return it->second;
}

std::vector<std::string> Topology::neighbors(const std::string& id) const {
    std::vector<std::string> out;
    for (const auto& [edge, latency] : edges_) {
        if (edge.first == id) out.push_back(edge.second);
        if (edge.second == id) out.push_back(edge.first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Topology Topology::star(int spokes, double latency_ms) {
    Topology t;
    t.default_latency_ms = latency_ms;
    t.add_domain("dom-0");
    for (int i = 1; i <= spokes; ++i) {
        t.add_domain("dom-" + std::to_string(i));
        t.add_edge("dom-0", "dom-" + std::to_string(i), latency_ms);
    }
    return t;
}

Topology Topology::complete(int n, double latency_ms) {
    Topology t;
    t.default_latency_ms = latency_ms;
    for (int i = 0; i < n; ++i) t.add_domain("dom-" + std::to_string(i));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            t.add_edge("dom-" + std::to_string(i), "dom-" + std::to_string(j), latency_ms);
        }
    }
    return t;
}

Topology Topology::ring(int n, double latency_ms) {
    Topology t;
    t.default_latency_ms = latency_ms;
    for (int i = 0; i < n; ++i) t.add_domain("dom-" + std::to_string(i));
    if (n == 2) {
        t.add_edge("dom-0", "dom-1", latency_ms);
        return t;
    }
    for (int i = 0; i < n; ++i) {
        t.add_edge("dom-" + std::to_string(i), "dom-" + std::to_string((i + 1) % n), latency_ms);
    }
    return t;
}

}  // namespace ztmesh::sim
