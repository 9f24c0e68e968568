#include "ztmesh/control_plane.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ztmesh/counters.hpp"
#include "ztmesh/errors.hpp"

namespace ztmesh::zta {

std::string to_string(AccessLevel level) {
    switch (level) {
        case AccessLevel::read: return "read";
        case AccessLevel::write: return "write";
        case AccessLevel::admin: return "admin";
    }
    return "read";
}

AccessLevel access_level_from_string(const std::string& s) {
    if (s == "read") return AccessLevel::read;
    if (s == "write") return AccessLevel::write;
    if (s == "admin") return AccessLevel::admin;
    throw MalformedMessage("unknown access level: " + s);
}

void AccessRequest::validate() const {
    if (device_id.empty() || target_domain.empty() || resource.empty() ||
        access_intention.empty()) {
        throw MalformedMessage("access request has empty fields");
    }
    if (device_id != certificate.device_id) {
        throw MalformedMessage("request device_id does not match certificate");
    }
    if (access_intention.size() > 256) {
        throw MalformedMessage("access_intention exceeds 256 bytes");
    }
}

DataStore::DataStore(int feature_dim, int class_count)
    : feature_dim_(feature_dim), class_count_(class_count) {}

bool DataStore::has_certificate(const std::string& device_id) const {
    return certificates_.contains(device_id);
}

void DataStore::put_certificate(const crypto::Certificate& cert) {
    certificates_[cert.device_id] = cert;
}

const crypto::Certificate* DataStore::find_certificate(const std::string& device_id) const {
    auto it = certificates_.find(device_id);
    return it == certificates_.end() ? nullptr : &it->second;
}

std::size_t DataStore::ingest(const DeviceContextRecord& record) {
    if (static_cast<int>(record.feature_vector.size()) != feature_dim_) {
        throw DimensionMismatch("feature vector length != configured input dimension");
    }
    if (record.context_class < 0 || record.context_class >= class_count_) {
        throw DimensionMismatch("context class out of configured range");
    }
    records_.push_back(record);
    latest_[record.device_id] = records_.size() - 1;
    if (!persist_path_.empty()) {
        std::ofstream out(persist_path_, std::ios::app);
        out << record.device_id << '\t' << record.context_class << '\t';
        for (std::size_t i = 0; i < record.feature_vector.size(); ++i) {
            if (i) out << ',';
            out << record.feature_vector[i];
        }
        out << '\t' << record.timestamp_ms << '\n';
    }
    return records_.size();
}

const DeviceContextRecord* DataStore::latest_record(const std::string& device_id) const {
    auto it = latest_.find(device_id);
    return it == latest_.end() ? nullptr : &records_[it->second];
}

void DataStore::attach_persistence(const std::string& path) {
    persist_path_ = path;
}

AuthModule::AuthModule(std::string domain_id, crypto::KeyPair keys, DataStore* store)
    : domain_id_(std::move(domain_id)), keys_(std::move(keys)), store_(store) {}

crypto::Certificate AuthModule::register_device(BytesView device_public_key,
                                                const std::string& device_id) {
    if (store_->has_certificate(device_id)) {
        throw DuplicateId("device already registered: " + device_id);
    }
    crypto::validate_public_key(device_public_key);
    crypto::Certificate cert =
        crypto::issue_certificate(keys_, domain_id_, device_id, device_public_key);
    store_->put_certificate(cert);
    return cert;
}

bool AuthModule::authenticate(const AccessRequest& request) const {
    bool signature_ok = crypto::verify_certificate(keys_.public_key, request.certificate);
    bool registered = store_->has_certificate(request.device_id) &&
                      request.certificate.device_id == request.device_id;
    return signature_ok && registered;
}

bool AuthModule::authenticate_foreign(const AccessRequest& request,
                                      BytesView issuer_am_public) const {
    return crypto::verify_certificate(issuer_am_public, request.certificate) &&
           request.certificate.device_id == request.device_id;
}

namespace {

double clamp01(double v) {
    return std::min(1.0, std::max(0.0, v));
}

double hour_of_day(double now_ms) {
    double hours = now_ms / 3.6e6;
    return hours - 24.0 * std::floor(hours / 24.0);
}

}  // namespace

TrustScore TrustEngine::assess(const AccessRequest& request,
                               const std::optional<DeviceContextRecord>& context,
                               double now_ms) const {
    return assess_impl(request, context, now_ms, nullptr);
}

TrustScore TrustEngine::assess_predicted(const AccessRequest& request,
                                         const ContextPrediction& prediction,
                                         double now_ms) const {
    DeviceContextRecord ctx;
    ctx.device_id = request.device_id;
    ctx.context_class = prediction.context_class;
    ctx.feature_vector = prediction.feature_estimate;
    ctx.timestamp_ms = now_ms;
    return assess_impl(request, ctx, now_ms, &prediction);
}

TrustScore TrustEngine::assess_impl(const AccessRequest& request,
                                    const std::optional<DeviceContextRecord>& context,
                                    double now_ms, const ContextPrediction* supplied) const {
    TrustScore score;
    if (!context.has_value()) {
        score.value = rules_.no_context_floor;
        score.components["no_context_floor"] = rules_.no_context_floor;
        return score;
    }

    double weight_sum = 0.0;
    double weighted = 0.0;
    auto add = [&](const std::string& name, double contribution, double weight) {
        score.components[name] = contribution;
        weighted += weight * contribution;
        weight_sum += weight;
    };

    // A device whose identity resolves through the shared model counts as
    // known even when the local store has no record of it yet.
    bool known = supplied != nullptr || store_->has_certificate(request.device_id) ||
                 store_->latest_record(request.device_id) != nullptr;
    add("known_device", known ? 1.0 : 0.0, rules_.weight_known_device);

    double hour = hour_of_day(now_ms);
    bool in_hours = hour >= rules_.hours_start && hour < rules_.hours_end;
    add("time_of_day", in_hours ? 1.0 : 0.0, rules_.weight_time_of_day);

    double level_risk = rules_.risk_read;
    if (request.access_level == AccessLevel::write) level_risk = rules_.risk_write;
    if (request.access_level == AccessLevel::admin) level_risk = rules_.risk_admin;
    add("access_level", level_risk, rules_.weight_access_level);

    bool anomalous = rules_.anomalous_classes.contains(context->context_class);
    add("context_anomaly", anomalous ? 0.0 : 1.0, rules_.weight_context_anomaly);

    if (oracle_ != nullptr) {
        // Identity consistency: the probability the model assigns to the
        // class this device is on record with. A supplied prediction already
        // carries that value (and its inference charge).
        double identity;
        if (supplied != nullptr) {
            identity = supplied->confidence;
        } else {
            ContextPrediction p = oracle_->predict(request.device_id);
            identity = context->context_class < static_cast<int>(p.class_distribution.size())
                           ? p.class_distribution[context->context_class]
                           : 0.0;
        }
        // Risk scoring: confident predictions of an anomalous class push the
        // contribution toward 0, confident normal predictions toward 1.
        ContextPrediction risk_pred = oracle_->predict(request.device_id);
        double class_risk = rules_.anomalous_classes.contains(risk_pred.context_class) ? 0.0 : 1.0;
        double risk = 0.5 + risk_pred.confidence * (class_risk - 0.5);
        add("model", 0.5 * (identity + risk), rules_.weight_model);
    }

    score.value = weight_sum > 0.0 ? clamp01(weighted / weight_sum) : 0.0;
    return score;
}

AuthorizationDecision PolicyEngine::decide(const AccessRequest& request, bool authenticated,
                                           const TrustScore& trust, double now_ms) const {
    metrics::charge(metrics::Op::Cp);
    AuthorizationDecision decision;
    decision.intention = request.access_intention;
    if (!authenticated) {
        decision.reason = "authentication";
        return decision;
    }
    if (trust.value < config_.threshold) {
        decision.reason = "trust";
        return decision;
    }
    if (!permitted(request.resource, request.access_level)) {
        decision.reason = "policy";
        return decision;
    }
    decision.allow = true;
    decision.scope = {request.resource};
    decision.time_start_ms = now_ms;
    decision.time_end_ms = now_ms + config_.token_ttl_ms;
    decision.reason = "ok";
    return decision;
}

bool PolicyEngine::permitted(const std::string& resource, AccessLevel level) const {
    if (config_.permissions.empty()) return true;
    const PermissionRule* best = nullptr;
    for (const auto& rule : config_.permissions) {
        if (resource.starts_with(rule.resource_prefix)) {
            if (best == nullptr || rule.resource_prefix.size() > best->resource_prefix.size()) {
                best = &rule;
            }
        }
    }
    if (best == nullptr) return false;
    return static_cast<int>(level) <= static_cast<int>(best->max_level);
}

std::size_t ContextAwareModule::ingest(const DeviceContextRecord& record) {
    return store_->ingest(record);
}

DomainControlPlane::DomainControlPlane(std::string domain_id, crypto::KeyPair am_keys,
                                       TrustRules rules, PolicyConfig policy, int feature_dim,
                                       int class_count)
    : domain_id_(domain_id),
      store_(feature_dim, class_count),
      am_(domain_id, std::move(am_keys), &store_),
      te_(rules, &store_),
      pe_(policy),
      cam_(&store_) {}

AuthorizationDecision DomainControlPlane::handle_intra_request(const AccessRequest& request,
                                                               double now_ms) {
    bool authenticated = am_.authenticate(request);
    if (!authenticated) {
        // Short-circuit: the TE is not consulted for a failed authentication.
        TrustScore none;
        return pe_.decide(request, false, none, now_ms);
    }
    std::optional<DeviceContextRecord> context;
    if (const DeviceContextRecord* latest = store_.latest_record(request.device_id)) {
        context = *latest;
    }
    TrustScore trust = te_.assess(request, context, now_ms);
    return pe_.decide(request, true, trust, now_ms);
}

AuthorizationDecision DomainControlPlane::handle_predicted_request(
    const AccessRequest& request, const ContextPrediction& prediction,
    BytesView issuer_am_public, double now_ms) {
    bool authenticated = am_.authenticate_foreign(request, issuer_am_public);
    if (!authenticated) {
        TrustScore none;
        return pe_.decide(request, false, none, now_ms);
    }
    TrustScore trust = te_.assess_predicted(request, prediction, now_ms);
    return pe_.decide(request, true, trust, now_ms);
}

}  // namespace ztmesh::zta
