#include "ztmesh/sim/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "ztmesh/errors.hpp"
#include "ztmesh/log.hpp"
#include "ztmesh/wire.hpp"

namespace ztmesh::sim {

double OpCosts::cost_ms(const metrics::OpCounters& delta) const {
    return delta.exp * exp + delta.h * h + delta.sig * sig + delta.i * i + delta.cp * cp +
           delta.m * m + delta.cs * cs;
}

std::vector<RequestSpec> generate_workload(const WorkloadConfig& workload,
                                           const Topology& topology,
                                           const std::map<std::string, std::string>& device_home,
                                           std::uint64_t seed) {
    if (workload.device_count < 1) throw ConfigError("workload needs at least one device");
    std::vector<std::string> devices;
    devices.reserve(device_home.size());
    for (const auto& [id, home] : device_home) devices.push_back(id);
    if (devices.empty()) throw ConfigError("no devices");

    std::mt19937_64 rng(seed ^ 0xa5c152f7d6b3e081ULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<RequestSpec> out;
    out.reserve(workload.total_requests);
    for (int k = 0; k < workload.total_requests; ++k) {
        RequestSpec spec;
        spec.id = static_cast<std::uint64_t>(k);
        spec.device_id = devices[k % devices.size()];
        spec.origin_domain = device_home.at(spec.device_id);
        std::vector<std::string> neighbors = topology.neighbors(spec.origin_domain);
        spec.cross = !neighbors.empty() && u(rng) < workload.cross_domain_fraction;
        if (spec.cross) {
            std::uniform_int_distribution<std::size_t> pick(0, neighbors.size() - 1);
            spec.target_domain = neighbors[pick(rng)];
        } else {
            spec.target_domain = spec.origin_domain;
        }
        std::uniform_int_distribution<std::size_t> res(0, workload.resources.size() - 1);
        std::size_t r = res(rng);
        spec.resource = workload.resources[r];
        spec.intention = workload.intentions[r % workload.intentions.size()];
        double roll = u(rng);
        if (roll < workload.read_fraction) {
            spec.level = zta::AccessLevel::read;
        } else if (roll < workload.read_fraction + workload.write_fraction) {
            spec.level = zta::AccessLevel::write;
        } else {
            spec.level = zta::AccessLevel::admin;
        }
        out.push_back(std::move(spec));
    }
    return out;
}

namespace {

struct DeviceState {
    std::string id;
    std::string home;         // current home pointer (move_device updates it)
    std::string origin;       // workload origin, static
    crypto::KeyPair keys;
    crypto::Certificate cert;
    int context_class = 0;
};

struct DomainActor {
    std::string id;
    int index = 0;
    std::unique_ptr<zta::DomainControlPlane> cp;
    crypto::KeyPair gateway_keys;
    std::unique_ptr<dfl::DomainTrainer> trainer;
    proto::TokenLedger ledger;
    double next_free_ms = 0.0;
    std::mt19937_64 rng;
    std::map<std::string, dfl::RoundMessage> dfl_inbox;
};

enum class Terminal { none, grant, denial, timeout };

struct PendingRequest {
    RequestSpec spec;
    double issue_ms = 0.0;
    Terminal terminal = Terminal::none;
    double terminal_ms = 0.0;
};

}  // namespace

struct Simulation::Impl {
    SimConfig config;
    EventQueue queue;
    std::map<std::string, DomainActor> domains;
    std::map<std::string, DeviceState> devices;
    std::map<std::string, std::string> device_home;  // workload origins
    dfl::SyntheticData data;
    std::vector<PendingRequest> requests;
    SimResult result;

    // issue bookkeeping: per scope unit, queued request indices and in-flight
    std::map<std::string, std::vector<std::size_t>> issue_queue;
    std::map<std::string, std::size_t> issue_cursor;
    std::map<std::string, int> in_flight;
    double workload_start_ms = 0.0;
    double last_terminal_ms = 0.0;
    std::int64_t terminals = 0;

    explicit Impl(SimConfig cfg) : config(std::move(cfg)) {}

    std::string scope_unit(const RequestSpec& spec) const {
        return config.workload.scope == ParallelismScope::global ? std::string("*")
                                                                 : spec.origin_domain;
    }

    double link_cost_ms(std::size_t bytes) const {
        return config.link_ms_per_kb * (static_cast<double>(bytes) / 1024.0);
    }

    void setup_domains() {
        const auto& ids = config.topology.domains();
        int class_count = config.dfl.data.classes;
        int feature_dim = config.dfl.data.input_dim;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            DomainActor actor;
            actor.id = ids[i];
            actor.index = static_cast<int>(i);
            std::uint64_t dseed = config.seed + fnv1a64(to_bytes(ids[i]));
            actor.cp = std::make_unique<zta::DomainControlPlane>(
                ids[i], crypto::generate_keypair(dseed), config.trust_rules, config.policy,
                feature_dim, class_count);
            actor.gateway_keys = crypto::generate_keypair(dseed ^ 0x77ULL);
            actor.rng.seed(dseed ^ 0x1234567ULL);
            domains.emplace(ids[i], std::move(actor));
        }
    }

    void setup_dfl() {
        dfl::DataConfig data_cfg = config.dfl.data;
        data = dfl::generate_noniid(data_cfg, static_cast<int>(config.topology.domains().size()));
        const auto& ids = config.topology.domains();
        for (std::size_t i = 0; i < ids.size(); ++i) {
            DomainActor& actor = domains.at(ids[i]);
            dfl::Architecture arch = config.dfl.arch;
            arch.input_dim = data_cfg.input_dim;
            arch.classes = data_cfg.classes;
            actor.trainer = std::make_unique<dfl::DomainTrainer>(
                ids[i], arch, config.dfl.hyper, data.domains[i],
                config.topology.neighbors(ids[i]), config.seed + 31ULL * (i + 1));
            actor.cp->te().set_oracle(actor.trainer.get());
        }
    }

    void setup_devices() {
        const auto& ids = config.topology.domains();
        const int total = config.workload.device_count;
        int created = 0;
        std::mt19937_64 rng(config.seed ^ 0xdeafbeefULL);
        std::normal_distribution<double> noise(0.0, config.dfl.data.noise_sigma);
        for (int k = 0; created < total; ++k) {
            for (std::size_t d = 0; d < ids.size() && created < total; ++d, ++created) {
                DeviceState dev;
                const auto& gen_devices = data.devices[d];
                if (config.dfl.data.mode == dfl::DataMode::device_linked &&
                    !gen_devices.empty()) {
                    const auto& [gid, gclass] = gen_devices[k % gen_devices.size()];
                    dev.id = k < static_cast<int>(gen_devices.size())
                                 ? gid
                                 : gid + "-x" + std::to_string(k);
                    dev.context_class = gclass;
                } else {
                    dev.id = "dev-" + std::to_string(d) + "-" + std::to_string(k);
                    std::uniform_int_distribution<int> cls(0, config.dfl.data.classes - 1);
                    dev.context_class = cls(rng);
                }
                dev.home = ids[d];
                dev.origin = ids[d];
                dev.keys = crypto::generate_keypair(config.seed + fnv1a64(to_bytes(dev.id)));
                DomainActor& actor = domains.at(ids[d]);
                dev.cert = actor.cp->am().register_device(dev.keys.public_key, dev.id);
                // Seed the CAM with a few context records for the device.
                for (int r = 0; r < 3; ++r) {
                    zta::DeviceContextRecord rec;
                    rec.device_id = dev.id;
                    rec.context_class = dev.context_class;
                    rec.feature_vector = dfl::featurize_device(dev.id, config.dfl.data.input_dim);
                    for (double& v : rec.feature_vector) {
                        v = std::min(1.0, std::max(0.0, v + 0.05 * noise(rng)));
                    }
                    rec.timestamp_ms = 0.0;
                    actor.cp->cam().ingest(rec);
                }
                device_home[dev.id] = dev.home;
                devices.emplace(dev.id, std::move(dev));
            }
        }
    }

    // DFL pretraining over the event clock: tick 0 broadcasts the initial
    // messages; tick k >= 1 runs round k from whatever has arrived.
    void run_pretraining() {
        const double interval = config.dfl.round_interval_ms;
        const int rounds = config.dfl.pretrain_rounds;
        if (rounds <= 0) return;
        for (int k = 0; k <= rounds; ++k) {
            queue.schedule(k * interval, EventKind::round_tick,
                           "round " + std::to_string(k), [this, k](double now) {
                               if (k == 0) {
                                   for (auto& [id, actor] : domains) {
                                       broadcast_round_message(actor,
                                                               actor.trainer->initial_message(),
                                                               now);
                                   }
                                   return;
                               }
                               for (auto& [id, actor] : domains) {
                                   std::map<std::string, dfl::RoundMessage> inbox;
                                   inbox.swap(actor.dfl_inbox);
                                   dfl::RoundMessage out = actor.trainer->run_round(inbox);
                                   record_round_stats(actor);
                                   broadcast_round_message(actor, out, now);
                               }
                           });
        }
        queue.run_until((rounds + 1) * interval);
    }

    void broadcast_round_message(DomainActor& from, const dfl::RoundMessage& message,
                                 double now) {
        Bytes encoded = dfl::encode_round_message(message);
        for (const std::string& nb : config.topology.neighbors(from.id)) {
            double lat = config.topology.latency_ms(from.id, nb);
            double arrive = now + lat + link_cost_ms(encoded.size());
            std::string src = from.id;
            queue.schedule(arrive, EventKind::message_arrival,
                           "dfl " + src + "->" + nb,
                           [this, nb, src, encoded](double) {
                               domains.at(nb).dfl_inbox[src] =
                                   dfl::decode_round_message(encoded);
                           });
        }
    }

    void record_round_stats(DomainActor& actor) {
        const dfl::RoundStats& stats = actor.trainer->last_stats();
        DflRoundRow row;
        row.round = stats.round;
        row.domain = actor.id;
        row.f1 = data.global_test.empty() ? stats.local_f1
                                          : actor.trainer->evaluate_f1(data.global_test);
        row.eta = stats.eta;
        row.waf_by_neighbor = stats.waf_by_neighbor;
        result.dfl_rounds.push_back(std::move(row));
    }

    // Counter probes for the two Table-style flows, run between pretraining
    // and the workload. Deltas are scoped, so global accumulation is fine.
    void run_probes() {
        const auto& ids = config.topology.domains();
        {
            metrics::CounterScope scope("intra_request_with_registration");
            DomainActor& actor = domains.at(ids[0]);
            crypto::KeyPair kp = crypto::generate_keypair(config.seed ^ 0xabcdefULL);
            actor.cp->am().register_device(kp.public_key, "probe-intra");
            zta::DeviceContextRecord rec;
            rec.device_id = "probe-intra";
            rec.context_class = 0;
            rec.feature_vector = dfl::featurize_device("probe-intra", config.dfl.data.input_dim);
            rec.timestamp_ms = queue.now();
            actor.cp->cam().ingest(rec);
            zta::AccessRequest request;
            request.certificate = *actor.cp->store().find_certificate("probe-intra");
            request.device_id = "probe-intra";
            request.target_domain = actor.id;
            request.resource = config.workload.resources[0];
            request.access_level = zta::AccessLevel::read;
            request.access_intention = "probe";
            actor.cp->handle_intra_request(request, queue.now());
            result.counter_scopes.emplace_back("intra_request_with_registration", scope.close());
        }
        if (ids.size() >= 2 && config.topology.is_neighbor(ids[0], ids[1])) {
            metrics::CounterScope scope("cross_preauth_with_registration");
            DomainActor& source = domains.at(ids[1]);
            DomainActor& target = domains.at(ids[0]);
            crypto::KeyPair kp = crypto::generate_keypair(config.seed ^ 0xfedcbaULL);
            crypto::Certificate cert =
                source.cp->am().register_device(kp.public_key, "probe-cross");
            zta::AccessRequest request;
            request.certificate = cert;
            request.device_id = "probe-cross";
            request.target_domain = target.id;
            request.resource = config.workload.resources[0];
            request.access_level = zta::AccessLevel::read;
            request.access_intention = "probe";
            crypto::SharedKey key_src = crypto::derive_shared_key(
                source.gateway_keys.private_key, target.gateway_keys.public_key);
            Bytes envelope = proto::encode_encrypted_request(request, key_src, source.rng);
            crypto::SharedKey key_dst = crypto::derive_shared_key(
                target.gateway_keys.private_key, source.gateway_keys.public_key);
            zta::AccessRequest received = proto::decrypt_request(envelope, key_dst);
            proto::decide_and_issue(*target.cp, target.ledger, received,
                                    source.cp->am().public_key(), queue.now(), target.rng);
            result.counter_scopes.emplace_back("cross_preauth_with_registration", scope.close());
        }
    }

    zta::AccessRequest build_request(const PendingRequest& pending) {
        const DeviceState& dev = devices.at(pending.spec.device_id);
        zta::AccessRequest request;
        request.certificate = dev.cert;
        request.device_id = dev.id;
        request.target_domain = pending.spec.target_domain;
        request.resource = pending.spec.resource;
        request.access_level = pending.spec.level;
        request.access_intention = pending.spec.intention;
        return request;
    }

    void finish(std::size_t idx, Terminal terminal, double now) {
        PendingRequest& pending = requests[idx];
        if (pending.terminal != Terminal::none) return;
        pending.terminal = terminal;
        pending.terminal_ms = now;
        if (terminal == Terminal::grant) ++result.grants;
        if (terminal == Terminal::denial) ++result.denials;
        if (terminal == Terminal::timeout) ++result.timeouts;
        ++terminals;
        last_terminal_ms = std::max(last_terminal_ms, now);
        std::string unit = scope_unit(pending.spec);
        --in_flight[unit];
        issue_ready(unit, now);
    }

    void issue_ready(const std::string& unit, double now) {
        auto& queue_ids = issue_queue[unit];
        std::size_t& cursor = issue_cursor[unit];
        while (cursor < queue_ids.size() && in_flight[unit] < config.workload.parallelism) {
            std::size_t idx = queue_ids[cursor++];
            ++in_flight[unit];
            double at = std::max(now, workload_start_ms);
            queue.schedule(at, EventKind::request_issued,
                           "req " + std::to_string(requests[idx].spec.id),
                           [this, idx](double t) { start_request(idx, t); });
        }
    }

    void start_request(std::size_t idx, double now) {
        PendingRequest& pending = requests[idx];
        pending.issue_ms = now;
        queue.schedule(now + config.workload.timeout_ms, EventKind::message_arrival,
                       "timeout req " + std::to_string(pending.spec.id),
                       [this, idx](double t) { finish(idx, Terminal::timeout, t); });
        // Device to home PEP.
        double arrive = now + config.intra_latency_ms;
        if (pending.spec.cross) {
            queue.schedule(arrive, EventKind::message_arrival,
                           "pep " + std::to_string(pending.spec.id),
                           [this, idx](double t) { source_process(idx, t); });
        } else {
            queue.schedule(arrive, EventKind::message_arrival,
                           "pep " + std::to_string(pending.spec.id),
                           [this, idx](double t) { intra_process(idx, t); });
        }
    }

    void intra_process(std::size_t idx, double now) {
        PendingRequest& pending = requests[idx];
        if (pending.terminal != Terminal::none) return;
        DomainActor& actor = domains.at(pending.spec.origin_domain);
        double start = std::max(now, actor.next_free_ms);
        metrics::OpCounters before = metrics::registry().totals();
        zta::AuthorizationDecision decision =
            actor.cp->handle_intra_request(build_request(pending), start);
        double service = config.op_costs.cost_ms(metrics::registry().totals() - before);
        actor.next_free_ms = start + service;
        double done = start + service + config.intra_latency_ms;
        bool allow = decision.allow;
        queue.schedule(done, EventKind::message_arrival,
                       "resp " + std::to_string(pending.spec.id), [this, idx, allow](double t) {
                           finish(idx, allow ? Terminal::grant : Terminal::denial, t);
                       });
    }

    void source_process(std::size_t idx, double now) {
        PendingRequest& pending = requests[idx];
        if (pending.terminal != Terminal::none) return;
        DomainActor& source = domains.at(pending.spec.origin_domain);
        DomainActor& target = domains.at(pending.spec.target_domain);
        double start = std::max(now, source.next_free_ms);
        metrics::OpCounters before = metrics::registry().totals();
        crypto::SharedKey key = crypto::derive_shared_key(source.gateway_keys.private_key,
                                                          target.gateway_keys.public_key);
        Bytes envelope = proto::encode_encrypted_request(build_request(pending), key, source.rng);
        double service = config.op_costs.cost_ms(metrics::registry().totals() - before);
        source.next_free_ms = start + service;
        double sent = start + service;
        double lat = config.topology.latency_ms(source.id, target.id);
        double arrive = sent + lat + link_cost_ms(envelope.size());
        queue.schedule(arrive, EventKind::message_arrival,
                       "xreq " + std::to_string(pending.spec.id),
                       [this, idx, envelope](double t) { target_process(idx, envelope, t); });
    }

    void target_process(std::size_t idx, const Bytes& envelope, double now) {
        PendingRequest& pending = requests[idx];
        if (pending.terminal != Terminal::none) return;
        DomainActor& source = domains.at(pending.spec.origin_domain);
        DomainActor& target = domains.at(pending.spec.target_domain);
        double start = std::max(now, target.next_free_ms);

        metrics::OpCounters before = metrics::registry().totals();
        crypto::SharedKey key = crypto::derive_shared_key(target.gateway_keys.private_key,
                                                          source.gateway_keys.public_key);
        zta::AccessRequest request;
        try {
            request = proto::decrypt_request(envelope, key);
        } catch (const ChannelFailure&) {
            double service = config.op_costs.cost_ms(metrics::registry().totals() - before);
            target.next_free_ms = start + service;
            finish(idx, Terminal::denial, start + service);
            return;
        }
        double pre_service = config.op_costs.cost_ms(metrics::registry().totals() - before);
        double shared_at = start + pre_service;
        result.latency.push_back({pending.spec.id, metrics::Phase::data_sharing,
                                  pending.issue_ms, shared_at, 0, 0});

        metrics::OpCounters mid = metrics::registry().totals();
        proto::PreauthProcessing processed = proto::decide_and_issue(
            *target.cp, target.ledger, request, source.cp->am().public_key(), shared_at,
            target.rng);
        double decision_service = config.op_costs.cost_ms(metrics::registry().totals() - mid);
        double done = shared_at + decision_service;
        target.next_free_ms = done;

        double lat = config.topology.latency_ms(source.id, target.id);
        double back = done + lat + link_cost_ms(processed.response_wire.size());
        Bytes response = processed.response_wire;
        queue.schedule(back, EventKind::message_arrival,
                       "xresp " + std::to_string(pending.spec.id),
                       [this, idx, response](double t) { source_response(idx, response, t); });
    }

    void source_response(std::size_t idx, const Bytes& response, double now) {
        PendingRequest& pending = requests[idx];
        if (pending.terminal != Terminal::none) return;
        double device_at = now + config.intra_latency_ms;
        auto outcome = proto::decode_preauth_response(response);
        if (std::holds_alternative<proto::Denial>(outcome)) {
            queue.schedule(device_at, EventKind::message_arrival,
                           "deny " + std::to_string(pending.spec.id), [this, idx](double t) {
                               requests[idx].terminal_ms = t;
                               record_full_latency(idx, t);
                               finish(idx, Terminal::denial, t);
                           });
            return;
        }
        proto::OneTimeToken token = std::get<proto::OneTimeToken>(outcome);
        queue.schedule(device_at, EventKind::token_presented,
                       "present " + std::to_string(pending.spec.id),
                       [this, idx, token](double t) {
                           record_full_latency(idx, t);
                           present_token(idx, token, t);
                       });
    }

    void record_full_latency(std::size_t idx, double now) {
        PendingRequest& pending = requests[idx];
        result.latency.push_back({pending.spec.id, metrics::Phase::full_preauthorization,
                                  pending.issue_ms, now, 0, 0});
    }

    // The device enters the target domain and presents the token (Alg. 2).
    void present_token(std::size_t idx, const proto::OneTimeToken& token, double now) {
        PendingRequest& pending = requests[idx];
        if (pending.terminal != Terminal::none) return;
        DeviceState& dev = devices.at(pending.spec.device_id);
        move_device_impl(dev.id, dev.home, pending.spec.target_domain);
        double lat = config.topology.latency_ms(pending.spec.origin_domain,
                                                pending.spec.target_domain);
        double present_start = now;
        queue.schedule(now + lat, EventKind::message_arrival,
                       "verify " + std::to_string(pending.spec.id),
                       [this, idx, token, present_start](double t) {
                           verify_at_target(idx, token, present_start, t);
                       });
    }

    void verify_at_target(std::size_t idx, const proto::OneTimeToken& token, double present_start,
                          double now) {
        PendingRequest& pending = requests[idx];
        if (pending.terminal != Terminal::none) return;
        DomainActor& target = domains.at(pending.spec.target_domain);
        double start = std::max(now, target.next_free_ms);
        metrics::OpCounters before = metrics::registry().totals();
        auto outcome = proto::verify_token(target.ledger, target.cp->am().public_key(), token,
                                           build_request(pending), start);
        double service = config.op_costs.cost_ms(metrics::registry().totals() - before);
        target.next_free_ms = start + service;
        double done = start + service + config.intra_latency_ms;
        bool granted = std::holds_alternative<proto::Grant>(outcome);
        queue.schedule(done, EventKind::message_arrival,
                       "granted " + std::to_string(pending.spec.id),
                       [this, idx, granted, present_start](double t) {
                           PendingRequest& p = requests[idx];
                           result.latency.push_back({p.spec.id,
                                                     metrics::Phase::token_verification,
                                                     present_start, t, 0, 0});
                           DeviceState& dev = devices.at(p.spec.device_id);
                           move_device_impl(dev.id, dev.home, dev.origin);
                           finish(idx, granted ? Terminal::grant : Terminal::denial, t);
                       });
    }

    void move_device_impl(const std::string& device_id, const std::string& from,
                          const std::string& to) {
        if (from == to) return;
        if (!config.topology.is_neighbor(from, to)) {
            throw NotNeighbors("device move between non-adjacent domains");
        }
        devices.at(device_id).home = to;
    }

    void run_workload() {
        workload_start_ms = queue.now();
        auto specs = generate_workload(config.workload, config.topology, device_home, config.seed);
        requests.clear();
        requests.reserve(specs.size());
        for (auto& spec : specs) {
            PendingRequest pending;
            pending.spec = std::move(spec);
            requests.push_back(std::move(pending));
        }
        for (std::size_t i = 0; i < requests.size(); ++i) {
            issue_queue[scope_unit(requests[i].spec)].push_back(i);
        }
        for (auto& [unit, ids] : issue_queue) {
            issue_cursor[unit] = 0;
            in_flight[unit] = 0;
        }
        queue.schedule(workload_start_ms, EventKind::request_issued, "workload start",
                       [this](double t) {
                           for (auto& [unit, ids] : issue_queue) issue_ready(unit, t);
                       });
        queue.run_until();
        if (terminals != static_cast<std::int64_t>(requests.size())) {
            throw Error("conservation violated: not every request reached a terminal state");
        }
    }

    SimResult run() {
        metrics::CounterScope run_scope("run_total");
        setup_domains();
        setup_dfl();
        setup_devices();
        run_pretraining();
        run_probes();
        run_workload();

        double window_s = std::max(1e-9, (last_terminal_ms - workload_start_ms) / 1000.0);
        result.throughput = metrics::make_throughput_record(
            static_cast<int>(config.topology.domains().size()), config.workload.device_count,
            window_s, result.grants + result.denials);
        result.counter_scopes.emplace_back("run_total", run_scope.close());

        // Run-local state hash over the event log and outcome counts.
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const auto& entry : queue.log()) {
            Bytes b;
            put_f64_be(b, entry.time_ms);
            b.push_back(static_cast<std::uint8_t>(entry.kind));
            Bytes detail = to_bytes(entry.detail);
            b.insert(b.end(), detail.begin(), detail.end());
            h = fnv1a64(b, h);
        }
        Bytes tail;
        put_u64_be(tail, static_cast<std::uint64_t>(result.grants));
        put_u64_be(tail, static_cast<std::uint64_t>(result.denials));
        put_u64_be(tail, static_cast<std::uint64_t>(result.timeouts));
        result.state_hash = fnv1a64(tail, h);
        if (config.trace) result.event_log = queue.log();
        return result;
    }
};

Simulation::Simulation(SimConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
Simulation::~Simulation() = default;

SimResult Simulation::run() {
    return impl_->run();
}

void Simulation::move_device(const std::string& device_id, const std::string& from_domain,
                             const std::string& to_domain) {
    impl_->move_device_impl(device_id, from_domain, to_domain);
}

}  // namespace ztmesh::sim
