#pragma once

#include <map>
#include <string>
#include <vector>

namespace ztmesh::sim {

// Simple undirected neighbor graph with per-edge one-way latency.
class Topology {
  public:
    double default_latency_ms = 10.0;

    void add_domain(const std::string& id);
    // Throws NotNeighbors on self-loops and MalformedMessage on unknown ids.
    void add_edge(const std::string& a, const std::string& b, double latency_ms = -1.0);

    bool has_domain(const std::string& id) const;
    bool is_neighbor(const std::string& a, const std::string& b) const;
    double latency_ms(const std::string& a, const std::string& b) const;  // throws NotNeighbors
    std::vector<std::string> neighbors(const std::string& id) const;      // sorted
    const std::vector<std::string>& domains() const { return domains_; }

    static Topology star(int spokes, double latency_ms = 10.0);     // hub = "dom-0"
    static Topology complete(int n, double latency_ms = 10.0);
    static Topology ring(int n, double latency_ms = 10.0);

  private:
    static std::pair<std::string, std::string> ordered(const std::string& a, const std::string& b);

    std::vector<std::string> domains_;
    std::map<std::pair<std::string, std::string>, double> edges_;
};

}  // namespace ztmesh::sim
