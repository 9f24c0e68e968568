#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ztmesh/control_plane.hpp"
#include "ztmesh/counters.hpp"
#include "ztmesh/dfl/engine.hpp"
#include "ztmesh/metrics.hpp"
#include "ztmesh/protocol.hpp"
#include "ztmesh/sim/event_queue.hpp"
#include "ztmesh/sim/topology.hpp"

namespace ztmesh::sim {

// Simulated processing cost per counted operation, in ms. Service time at a
// domain actor is the dot product of the op-count delta with these costs,
// which keeps the latency model tied to the instrumented accounting.
struct OpCosts {
    double exp = 0.8;
    double h = 0.04;
    double sig = 1.0;
    double i = 2.0;
    double cp = 0.4;
    double m = 0.6;
    double cs = 0.2;

    double cost_ms(const metrics::OpCounters& delta) const;
};

enum class ParallelismScope { global, per_source_domain };

struct WorkloadConfig {
    int device_count = 10;
    int total_requests = 200;
    double cross_domain_fraction = 0.2;
    int parallelism = 4;
    ParallelismScope scope = ParallelismScope::global;
    double timeout_ms = 5000.0;
    std::vector<std::string> resources = {"svc/telemetry", "svc/files", "db/records"};
    std::vector<std::string> intentions = {"read sensor data", "sync files", "audit records"};
    double read_fraction = 0.8;
    double write_fraction = 0.15;  // remainder is admin
};

struct DflConfig {
    dfl::Architecture arch;
    dfl::TrainingHyperparams hyper;
    dfl::DataConfig data;
    int pretrain_rounds = 5;
    double round_interval_ms = 50.0;
};

struct SimConfig {
    Topology topology;
    WorkloadConfig workload;
    DflConfig dfl;
    zta::TrustRules trust_rules;
    zta::PolicyConfig policy;
    OpCosts op_costs;
    double intra_latency_ms = 1.0;
    double link_ms_per_kb = 0.0;  // serialization cost model, 0 = pure latency
    std::uint64_t seed = 1;
    bool trace = false;
    // Experiment-cell annotations stamped onto latency samples (sweep axes).
    int cell_n = 0;
    int cell_q = 0;
};

struct RequestSpec {
    std::uint64_t id = 0;
    std::string device_id;
    std::string origin_domain;
    std::string target_domain;
    std::string resource;
    zta::AccessLevel level = zta::AccessLevel::read;
    std::string intention;
    bool cross = false;
};

// Deterministic request list: per-device counts differ by at most one,
// cross-domain targets drawn uniformly from the device's neighbor domains.
std::vector<RequestSpec> generate_workload(const WorkloadConfig& workload,
                                           const Topology& topology,
                                           const std::map<std::string, std::string>& device_home,
                                           std::uint64_t seed);

struct DflRoundRow {
    int round = 0;
    std::string domain;
    double f1 = 0.0;
    double eta = 0.0;
    std::map<std::string, double> waf_by_neighbor;
};

struct SimResult {
    std::vector<metrics::LatencySample> latency;
    metrics::ThroughputRecord throughput;
    std::vector<std::pair<std::string, metrics::OpCounters>> counter_scopes;
    std::vector<DflRoundRow> dfl_rounds;
    std::int64_t grants = 0;
    std::int64_t denials = 0;
    std::int64_t timeouts = 0;
    std::uint64_t state_hash = 0;
    std::vector<EventQueue::LogEntry> event_log;
};

// One multi-domain run: domain setup and registration, DFL pretraining over
// the event clock (round ticks, wire-encoded exchanges, edge latency),
// counter probes for the two Table-style flows, then the request workload.
class Simulation {
  public:
    explicit Simulation(SimConfig config);
    ~Simulation();
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    SimResult run();

    // Moves a device's home pointer between adjacent domains. Throws
    // NotNeighbors otherwise.
    void move_device(const std::string& device_id, const std::string& from_domain,
                     const std::string& to_domain);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ztmesh::sim
