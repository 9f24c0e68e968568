#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ztmesh/counters.hpp"

namespace ztmesh::metrics {

enum class Phase { data_sharing, full_preauthorization, token_verification };
std::string to_string(Phase phase);

struct LatencySample {
    std::uint64_t request_id = 0;
    Phase phase = Phase::data_sharing;
    double start_ms = 0.0;
    double end_ms = 0.0;
    int n = 0;  // neighboring domain count of the experiment cell
    int q = 0;  // parallel request count of the experiment cell

    double duration_ms() const { return end_ms - start_ms; }
};

struct ThroughputRecord {
    int domains = 0;
    int devices = 0;
    double window_s = 0.0;
    std::int64_t completed = 0;
    double rate_rps = 0.0;
};

ThroughputRecord make_throughput_record(int domains, int devices, double window_s,
                                        std::int64_t completed);

// Nearest-rank percentile: the ceil(p/100 * n)-th order statistic, no
// interpolation. Throws EmptyInput.
double percentile(std::vector<double> values, double p);
double percentile_latency(const std::vector<LatencySample>& samples, Phase phase, double p);

// Table keyed by (domains, devices) -> rate.
std::map<std::pair<int, int>, double> throughput_curve(const std::vector<ThroughputRecord>& runs);

// CSV emission with fixed documented headers.
std::string latency_csv(const std::vector<LatencySample>& samples);
std::string throughput_csv(const std::vector<ThroughputRecord>& records);
std::string counters_csv(const std::vector<std::pair<std::string, OpCounters>>& scopes);

// Expected Table-style totals used by the report conformance check.
OpCounters expected_intra_request_with_registration();
OpCounters expected_cross_preauth_with_registration();

}  // namespace ztmesh::metrics
