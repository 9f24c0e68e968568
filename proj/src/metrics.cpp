#include "ztmesh/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ztmesh/errors.hpp"

namespace ztmesh::metrics {

std::string to_string(Phase phase) {
    switch (phase) {
        case Phase::data_sharing: return "data_sharing";
        case Phase::full_preauthorization: return "full_preauthorization";
        case Phase::token_verification: return "token_verification";
    }
    return "data_sharing";
}

ThroughputRecord make_throughput_record(int domains, int devices, double window_s,
                                        std::int64_t completed) {
    ThroughputRecord r;
    r.domains = domains;
    r.devices = devices;
    r.window_s = window_s;
    r.completed = completed;
    r.rate_rps = window_s > 0.0 ? static_cast<double>(completed) / window_s : 0.0;
    return r;
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw EmptyInput("percentile of empty sample set");
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    std::size_t rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
    if (rank < 1) rank = 1;
    if (rank > values.size()) rank = values.size();
    return values[rank - 1];
}

double percentile_latency(const std::vector<LatencySample>& samples, Phase phase, double p) {
    std::vector<double> values;
    for (const auto& s : samples) {
        if (s.phase == phase) values.push_back(s.duration_ms());
    }
    return percentile(std::move(values), p);
}

std::map<std::pair<int, int>, double> throughput_curve(const std::vector<ThroughputRecord>& runs) {
    std::map<std::pair<int, int>, double> curve;
    for (const auto& r : runs) {
        curve[{r.domains, r.devices}] = r.rate_rps;
    }
    return curve;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string latency_csv(const std::vector<LatencySample>& samples) {
    std::string out = "request_id,phase,n,q,ms\n";
    for (const auto& s : samples) {
        out += std::to_string(s.request_id);
        out += ',';
        out += to_string(s.phase);
        out += ',';
        out += std::to_string(s.n);
        out += ',';
        out += std::to_string(s.q);
        out += ',';
        out += fmt(s.duration_ms());
        out += '\n';
    }
    return out;
}

std::string throughput_csv(const std::vector<ThroughputRecord>& records) {
    std::string out = "n,devices,rate_rps\n";
    for (const auto& r : records) {
        out += std::to_string(r.domains);
        out += ',';
        out += std::to_string(r.devices);
        out += ',';
        out += fmt(r.rate_rps);
        out += '\n';
    }
    return out;
}

std::string counters_csv(const std::vector<std::pair<std::string, OpCounters>>& scopes) {
    std::string out = "label,exp,h,sig,i,cp,m,cs\n";
    for (const auto& [label, c] : scopes) {
        out += label;
        out += ',' + std::to_string(c.exp) + ',' + std::to_string(c.h) + ',' +
               std::to_string(c.sig) + ',' + std::to_string(c.i) + ',' + std::to_string(c.cp) +
               ',' + std::to_string(c.m) + ',' + std::to_string(c.cs) + '\n';
    }
    return out;
}

OpCounters expected_intra_request_with_registration() {
    OpCounters c;
    c.exp = 3;
    c.h = 2;
    c.sig = 1;
    c.i = 2;
    c.cp = 1;
    return c;
}

OpCounters expected_cross_preauth_with_registration() {
    OpCounters c;
    c.exp = 3;
    c.h = 3;
    c.sig = 2;
    c.m = 4;
    c.cs = 2;
    c.i = 2;
    c.cp = 1;
    return c;
}

}  // namespace ztmesh::metrics
