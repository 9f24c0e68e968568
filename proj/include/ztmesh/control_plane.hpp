#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ztmesh/crypto.hpp"

namespace ztmesh::zta {

enum class AccessLevel { read, write, admin };

std::string to_string(AccessLevel level);
AccessLevel access_level_from_string(const std::string& s);  // throws MalformedMessage

struct AccessRequest {
    crypto::Certificate certificate;
    std::string device_id;
    std::string target_domain;
    std::string resource;
    AccessLevel access_level = AccessLevel::read;
    std::string access_intention;  // free text, bounded 256 bytes

    bool operator==(const AccessRequest&) const = default;
    void validate() const;  // throws MalformedMessage on invariant breach
};

struct DeviceContextRecord {
    std::string device_id;
    int context_class = 0;
    std::vector<double> feature_vector;  // entries normalized to [0,1]
    double timestamp_ms = 0.0;

    bool operator==(const DeviceContextRecord&) const = default;
};

struct TrustScore {
    double value = 0.0;  // clamp(weighted mean of components, 0, 1)
    std::map<std::string, double> components;
};

struct AuthorizationDecision {
    bool allow = false;
    std::vector<std::string> scope;  // empty when denied
    double time_start_ms = 0.0;
    double time_end_ms = 0.0;
    std::string intention;
    std::string reason;
};

// Output of the domain model for a device identifier.
struct ContextPrediction {
    int context_class = 0;
    double confidence = 0.0;
    std::vector<double> class_distribution;
    std::vector<double> feature_estimate;
};

// Implemented by the DFL engine. Every predict() call is one model
// inference and charges one I counter at the model call site.
class ContextOracle {
  public:
    virtual ~ContextOracle() = default;
    virtual ContextPrediction predict(const std::string& device_id) const = 0;
    virtual int class_count() const = 0;
};

struct TrustRules {
    double weight_known_device = 1.0;
    double weight_time_of_day = 1.0;
    double weight_access_level = 1.0;
    double weight_context_anomaly = 1.0;
    double weight_model = 1.0;
    double no_context_floor = 0.3;
    // Working-hours window on the simulated clock, [start_hour, end_hour).
    // The all-day default disables the rule until a scenario narrows it.
    double hours_start = 0.0;
    double hours_end = 24.0;
    double risk_read = 1.0;
    double risk_write = 0.6;
    double risk_admin = 0.2;
    std::set<int> anomalous_classes;
};

struct PermissionRule {
    std::string resource_prefix;
    AccessLevel max_level = AccessLevel::admin;
};

struct PolicyConfig {
    double threshold = 0.6;
    double token_ttl_ms = 300000.0;  // 5 simulated minutes
    std::vector<PermissionRule> permissions;  // empty: everything permitted
};

// Per-domain storage system: issued certificates plus the device context
// dataset D_i maintained by the CAM. Optional append-only persistence, one
// tab-separated record per line.
class DataStore {
  public:
    explicit DataStore(int feature_dim = 16, int class_count = 4);

    bool has_certificate(const std::string& device_id) const;
    void put_certificate(const crypto::Certificate& cert);
    const crypto::Certificate* find_certificate(const std::string& device_id) const;

    // cam_ingest. Returns the dataset size after the append.
    std::size_t ingest(const DeviceContextRecord& record);
    const std::vector<DeviceContextRecord>& records() const { return records_; }
    const DeviceContextRecord* latest_record(const std::string& device_id) const;

    void attach_persistence(const std::string& path);
    int feature_dim() const { return feature_dim_; }
    int class_count() const { return class_count_; }

  private:
    int feature_dim_;
    int class_count_;
    std::map<std::string, crypto::Certificate> certificates_;
    std::vector<DeviceContextRecord> records_;
    std::map<std::string, std::size_t> latest_;
    std::string persist_path_;
};

class AuthModule {
  public:
    AuthModule(std::string domain_id, crypto::KeyPair keys, DataStore* store);

    // Registration: validates the public key (Exp), hashes the certificate
    // payload (H) and signs it (Sig). Throws DuplicateId.
    crypto::Certificate register_device(BytesView device_public_key,
                                        const std::string& device_id);

    // Authentication: certificate signature valid AND device registered.
    // Charges H + Exp via verify_certificate.
    bool authenticate(const AccessRequest& request) const;

    // Cross-domain authentication: the certificate was issued by another
    // domain's AM whose public key arrived with the channel setup. Same
    // H + Exp cost as the intra check.
    bool authenticate_foreign(const AccessRequest& request, BytesView issuer_am_public) const;

    const Bytes& public_key() const { return keys_.public_key; }
    const Bytes& private_key() const { return keys_.private_key; }
    const std::string& domain_id() const { return domain_id_; }

  private:
    std::string domain_id_;
    crypto::KeyPair keys_;
    DataStore* store_;
};

class TrustEngine {
  public:
    TrustEngine(TrustRules rules, const DataStore* store) : rules_(rules), store_(store) {}

    void set_oracle(const ContextOracle* oracle) { oracle_ = oracle; }
    const ContextOracle* oracle() const { return oracle_; }
    const TrustRules& rules() const { return rules_; }

    // Static rule table plus, when a model is attached, two model-backed
    // contributions (identity consistency and predicted-class risk). The
    // model invocations carry the authorization phase's inference charges.
    TrustScore assess(const AccessRequest& request,
                      const std::optional<DeviceContextRecord>& context,
                      double now_ms) const;

    // Variant for contexts that were themselves produced by predict_context:
    // the prediction already paid one inference, so only the risk inference
    // runs here.
    TrustScore assess_predicted(const AccessRequest& request, const ContextPrediction& prediction,
                                double now_ms) const;

  private:
    TrustScore assess_impl(const AccessRequest& request,
                           const std::optional<DeviceContextRecord>& context, double now_ms,
                           const ContextPrediction* supplied) const;

    TrustRules rules_;
    const DataStore* store_;
    const ContextOracle* oracle_ = nullptr;
};

class PolicyEngine {
  public:
    explicit PolicyEngine(PolicyConfig config) : config_(config) {}

    // Pure policy comparison, charges CP:
    //   allow <=> authenticated AND trust.value >= threshold AND resource
    //   permitted for access_level.
    // Scope on allow is the requested resource (least privilege).
    AuthorizationDecision decide(const AccessRequest& request, bool authenticated,
                                 const TrustScore& trust, double now_ms) const;

    bool permitted(const std::string& resource, AccessLevel level) const;
    const PolicyConfig& config() const { return config_; }

  private:
    PolicyConfig config_;
};

class ContextAwareModule {
  public:
    explicit ContextAwareModule(DataStore* store) : store_(store) {}

    // Validates the record against the configured dimensions and appends it
    // to D_i. Throws DimensionMismatch.
    std::size_t ingest(const DeviceContextRecord& record);

  private:
    DataStore* store_;
};

// One domain's control plane: AM, PEP entry point, PE, TE, CAM and storage.
class DomainControlPlane {
  public:
    DomainControlPlane(std::string domain_id, crypto::KeyPair am_keys, TrustRules rules,
                       PolicyConfig policy, int feature_dim = 16, int class_count = 4);

    // Fig. 3 pipeline: authenticate, assess, decide. An authentication
    // failure short-circuits before trust assessment.
    AuthorizationDecision handle_intra_request(const AccessRequest& request, double now_ms);

    // Same pipeline with a model-predicted context and a foreign issuer
    // (cross-domain pre-authorization path).
    AuthorizationDecision handle_predicted_request(const AccessRequest& request,
                                                   const ContextPrediction& prediction,
                                                   BytesView issuer_am_public, double now_ms);

    const std::string& domain_id() const { return domain_id_; }
    AuthModule& am() { return am_; }
    const AuthModule& am() const { return am_; }
    TrustEngine& te() { return te_; }
    PolicyEngine& pe() { return pe_; }
    const PolicyEngine& pe() const { return pe_; }
    ContextAwareModule& cam() { return cam_; }
    DataStore& store() { return store_; }
    const DataStore& store() const { return store_; }

  private:
    std::string domain_id_;
    DataStore store_;
    AuthModule am_;
    TrustEngine te_;
    PolicyEngine pe_;
    ContextAwareModule cam_;
};

}  // namespace ztmesh::zta
