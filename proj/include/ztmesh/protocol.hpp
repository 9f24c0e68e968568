#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "ztmesh/control_plane.hpp"
#include "ztmesh/crypto.hpp"
#include "ztmesh/wire.hpp"

namespace ztmesh::proto {

inline constexpr std::size_t kTokenNonceBytes = 16;

struct OneTimeToken {
    std::string device_id;
    std::vector<std::string> scope;  // resource set S_j
    double time_start_ms = 0.0;      // T_a
    double time_end_ms = 0.0;
    std::string intention;  // I_a
    Bytes nonce;            // 16 random bytes r
    Bytes signature;        // AM signature over the canonical bytes

    bool operator==(const OneTimeToken&) const = default;
};

enum class DenyReason { signature, expired, scope, intention, replay, authentication, trust, policy, channel };
std::string to_string(DenyReason reason);

struct Denial {
    DenyReason reason = DenyReason::policy;
    std::string detail;
};

struct Grant {
    std::string resource;
    double granted_at_ms = 0.0;
};

// Canonical serialization of the signed fields; the signature is made over
// the hash of these bytes.
Bytes token_canonical_bytes(const OneTimeToken& token);
Bytes serialize_token(const OneTimeToken& token);
OneTimeToken deserialize_token(BytesView frame);

// Single-use tracking. Entries are never removed within a run; the used set
// is always a subset of the issued set.
class TokenLedger {
  public:
    struct IssuanceRecord {
        std::string device_id;
        double issued_at_ms = 0.0;
    };

    // Throws DuplicateId if the nonce was already issued in this domain.
    void record_issued(const OneTimeToken& token, double now_ms);
    bool is_used(const Bytes& nonce) const;
    bool is_issued(const Bytes& nonce) const;
    // Check-and-mark in one step; returns false if already used.
    bool try_consume(const Bytes& nonce);

    std::size_t issued_count() const { return issued_.size(); }
    std::size_t used_count() const { return used_.size(); }

  private:
    std::map<Bytes, IssuanceRecord> issued_;
    std::set<Bytes> used_;
};

// Channel setup per §III.C: exchange gateway public keys, each side derives
// the shared key. Returns one key per side; both are byte identical.
std::pair<crypto::SharedKey, crypto::SharedKey> establish_channel(const crypto::KeyPair& domain_a,
                                                                  const crypto::KeyPair& domain_b);

// Source-side half of Algorithm 1: serialize and AEAD-encrypt the request
// for the inter-domain channel. Returns the transport envelope.
Bytes encode_encrypted_request(const zta::AccessRequest& request, const crypto::SharedKey& key,
                               std::mt19937_64& rng);

// Target-side first half of Algorithm 1: decrypt and deserialize the
// request. Throws ChannelFailure when decryption fails.
zta::AccessRequest decrypt_request(BytesView request_envelope, const crypto::SharedKey& key);

// Target-side second half: model context lookup, ZTA decision, and on allow
// a signed one-time token recorded in the ledger.
struct PreauthProcessing {
    std::variant<OneTimeToken, Denial> outcome;
    zta::AuthorizationDecision decision;
    Bytes response_wire;  // preauth_response envelope sent back
};
PreauthProcessing decide_and_issue(zta::DomainControlPlane& target, TokenLedger& ledger,
                                   const zta::AccessRequest& request, BytesView issuer_am_public,
                                   double now_ms, std::mt19937_64& rng);

PreauthProcessing target_process_preauth(zta::DomainControlPlane& target, TokenLedger& ledger,
                                         BytesView request_envelope, const crypto::SharedKey& key,
                                         BytesView issuer_am_public, double now_ms,
                                         std::mt19937_64& rng);

std::variant<OneTimeToken, Denial> decode_preauth_response(BytesView envelope);

// One-shot composition of Algorithm 1 for library use and tests: source
// encrypt, target decrypt/decide/issue, response decode.
struct PreauthResult {
    std::variant<OneTimeToken, Denial> outcome;
    zta::AuthorizationDecision decision;
    Bytes request_wire;
    Bytes response_wire;
};
PreauthResult preauthorize(zta::DomainControlPlane& source, zta::DomainControlPlane& target,
                           TokenLedger& target_ledger, const zta::AccessRequest& request,
                           const crypto::SharedKey& channel_key, double now_ms,
                           std::mt19937_64& rng);

// Algorithm 2: verify signature, time range, scope, intention, single use;
// a grant consumes the nonce atomically with the decision.
std::variant<Grant, Denial> verify_token(TokenLedger& ledger, BytesView am_public,
                                         const OneTimeToken& token,
                                         const zta::AccessRequest& presented_request,
                                         double now_ms);

}  // namespace ztmesh::proto
