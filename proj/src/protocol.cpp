#include "ztmesh/protocol.hpp"

#include <algorithm>
#include <cctype>

#include "ztmesh/counters.hpp"
#include "ztmesh/errors.hpp"

namespace ztmesh::proto {

std::string to_string(DenyReason reason) {
    switch (reason) {
        case DenyReason::signature: return "signature";
        case DenyReason::expired: return "expired";
        case DenyReason::scope: return "scope";
        case DenyReason::intention: return "intention";
        case DenyReason::replay: return "replay";
        case DenyReason::authentication: return "authentication";
        case DenyReason::trust: return "trust";
        case DenyReason::policy: return "policy";
        case DenyReason::channel: return "channel";
    }
    return "policy";
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

DenyReason reason_from_decision(const std::string& reason) {
    if (reason == "authentication") return DenyReason::authentication;
    if (reason == "trust") return DenyReason::trust;
    return DenyReason::policy;
}

Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
    Bytes out(n);
    for (auto& b : out) {
        b = static_cast<std::uint8_t>(rng() & 0xff);
    }
    return out;
}

}  // namespace

Bytes token_canonical_bytes(const OneTimeToken& token) {
    wire::FrameBuilder frame;
    frame.add_string(token.device_id);
    frame.add_f64(token.time_start_ms);
    frame.add_f64(token.time_end_ms);
    frame.add_string(token.intention);
    frame.add_bytes(token.nonce);
    for (const std::string& resource : token.scope) {
        frame.add_string(resource);
    }
    return frame.build();
}

Bytes serialize_token(const OneTimeToken& token) {
    wire::FrameBuilder frame;
    frame.add_bytes(token_canonical_bytes(token));
    frame.add_bytes(token.signature);
    return frame.build();
}

OneTimeToken deserialize_token(BytesView bytes) {
    wire::FrameView outer(bytes);
    if (outer.field_count() != 2) throw MalformedMessage("token frame needs 2 fields");
    wire::FrameView inner(outer.field(0));
    if (inner.field_count() < 5) throw MalformedMessage("token canonical frame needs 5+ fields");
    OneTimeToken token;
    token.device_id = inner.field_string(0);
    token.time_start_ms = inner.field_f64(1);
    token.time_end_ms = inner.field_f64(2);
    token.intention = inner.field_string(3);
    BytesView nonce = inner.field(4);
    token.nonce.assign(nonce.begin(), nonce.end());
    for (std::size_t i = 5; i < inner.field_count(); ++i) {
        token.scope.push_back(inner.field_string(i));
    }
    BytesView sig = outer.field(1);
    token.signature.assign(sig.begin(), sig.end());
    return token;
}

void TokenLedger::record_issued(const OneTimeToken& token, double now_ms) {
    auto [it, inserted] = issued_.try_emplace(token.nonce,
                                              IssuanceRecord{token.device_id, now_ms});
    if (!inserted) throw DuplicateId("token nonce already issued");
}

bool TokenLedger::is_used(const Bytes& nonce) const {
    return used_.contains(nonce);
}

bool TokenLedger::is_issued(const Bytes& nonce) const {
    return issued_.contains(nonce);
}

bool TokenLedger::try_consume(const Bytes& nonce) {
    if (used_.contains(nonce)) return false;
    issued_.try_emplace(nonce, IssuanceRecord{});  // keeps used subset of issued
    used_.insert(nonce);
    return true;
}

std::pair<crypto::SharedKey, crypto::SharedKey> establish_channel(const crypto::KeyPair& domain_a,
                                                                  const crypto::KeyPair& domain_b) {
    crypto::SharedKey a_side = crypto::derive_shared_key(domain_a.private_key, domain_b.public_key);
    crypto::SharedKey b_side = crypto::derive_shared_key(domain_b.private_key, domain_a.public_key);
    return {a_side, b_side};
}

Bytes encode_encrypted_request(const zta::AccessRequest& request, const crypto::SharedKey& key,
                               std::mt19937_64& rng) {
    Bytes plaintext = wire::serialize_request(request);
    Bytes nonce = random_bytes(rng, crypto::kAeadNonceBytes);
    Bytes sealed = crypto::encrypt(key, plaintext, nonce);
    return wire::envelope(wire::MessageType::encrypted_request, sealed);
}

namespace {

Bytes encode_preauth_response(const std::variant<OneTimeToken, Denial>& outcome) {
    wire::FrameBuilder frame;
    if (std::holds_alternative<OneTimeToken>(outcome)) {
        frame.add_string("grant");
        frame.add_bytes(serialize_token(std::get<OneTimeToken>(outcome)));
    } else {
        const Denial& denial = std::get<Denial>(outcome);
        frame.add_string("deny");
        frame.add_string(to_string(denial.reason));
    }
    return wire::envelope(wire::MessageType::preauth_response, frame.build());
}

}  // namespace

std::variant<OneTimeToken, Denial> decode_preauth_response(BytesView envelope) {
    if (wire::envelope_type(envelope) != wire::MessageType::preauth_response) {
        throw MalformedMessage("not a preauth response");
    }
    wire::FrameView frame(wire::envelope_body(envelope));
    if (frame.field_count() != 2) throw MalformedMessage("response frame needs 2 fields");
    std::string status = frame.field_string(0);
    if (status == "grant") {
        return deserialize_token(frame.field(1));
    }
    Denial denial;
    std::string reason = frame.field_string(1);
    for (DenyReason r : {DenyReason::signature, DenyReason::expired, DenyReason::scope,
                         DenyReason::intention, DenyReason::replay, DenyReason::authentication,
                         DenyReason::trust, DenyReason::policy, DenyReason::channel}) {
        if (to_string(r) == reason) {
            denial.reason = r;
            return denial;
        }
    }
    throw MalformedMessage("unknown denial reason: " + reason);
}

zta::AccessRequest decrypt_request(BytesView request_envelope, const crypto::SharedKey& key) {
    if (wire::envelope_type(request_envelope) != wire::MessageType::encrypted_request) {
        throw MalformedMessage("not an encrypted request envelope");
    }
    Bytes plaintext;
    try {
        plaintext = crypto::decrypt(key, wire::envelope_body(request_envelope));
    } catch (const AuthenticationFailure& e) {
        throw ChannelFailure(e.what());
    }
    return wire::deserialize_request(plaintext);
}

PreauthProcessing decide_and_issue(zta::DomainControlPlane& target, TokenLedger& ledger,
                                   const zta::AccessRequest& request, BytesView issuer_am_public,
                                   double now_ms, std::mt19937_64& rng) {
    // Algorithm 1 line 9: the target model supplies the device context. With
    // no model attached the TE falls back to its configured floor.
    PreauthProcessing result;
    if (const zta::ContextOracle* oracle = target.te().oracle()) {
        zta::ContextPrediction prediction = oracle->predict(request.device_id);
        result.decision =
            target.handle_predicted_request(request, prediction, issuer_am_public, now_ms);
    } else {
        bool authenticated = target.am().authenticate_foreign(request, issuer_am_public);
        zta::TrustScore trust;
        if (authenticated) {
            trust = target.te().assess(request, std::nullopt, now_ms);
        }
        result.decision = target.pe().decide(request, authenticated, trust, now_ms);
    }

    if (result.decision.allow) {
        OneTimeToken token;
        token.device_id = request.device_id;
        token.scope = result.decision.scope;
        token.time_start_ms = result.decision.time_start_ms;
        token.time_end_ms = result.decision.time_end_ms;
        token.intention = result.decision.intention;
        token.nonce = random_bytes(rng, kTokenNonceBytes);
        Bytes digest = crypto::hash(token_canonical_bytes(token));
        token.signature = crypto::sign(target.am().private_key(), digest);
        ledger.record_issued(token, now_ms);
        result.outcome = token;
    } else {
        result.outcome = Denial{reason_from_decision(result.decision.reason), result.decision.reason};
    }
    result.response_wire = encode_preauth_response(result.outcome);
    return result;
}

PreauthProcessing target_process_preauth(zta::DomainControlPlane& target, TokenLedger& ledger,
                                         BytesView request_envelope, const crypto::SharedKey& key,
                                         BytesView issuer_am_public, double now_ms,
                                         std::mt19937_64& rng) {
    zta::AccessRequest request = decrypt_request(request_envelope, key);
    return decide_and_issue(target, ledger, request, issuer_am_public, now_ms, rng);
}

PreauthResult preauthorize(zta::DomainControlPlane& source, zta::DomainControlPlane& target,
                           TokenLedger& target_ledger, const zta::AccessRequest& request,
                           const crypto::SharedKey& channel_key, double now_ms,
                           std::mt19937_64& rng) {
    PreauthResult result;
    result.request_wire = encode_encrypted_request(request, channel_key, rng);
    PreauthProcessing processed =
        target_process_preauth(target, target_ledger, result.request_wire, channel_key,
                               source.am().public_key(), now_ms, rng);
    result.outcome = decode_preauth_response(processed.response_wire);
    result.decision = processed.decision;
    result.response_wire = std::move(processed.response_wire);
    return result;
}

std::variant<Grant, Denial> verify_token(TokenLedger& ledger, BytesView am_public,
                                         const OneTimeToken& token,
                                         const zta::AccessRequest& presented_request,
                                         double now_ms) {
    Bytes digest = crypto::hash(token_canonical_bytes(token));
    if (!crypto::verify(am_public, digest, token.signature)) {
        return Denial{DenyReason::signature, "token signature invalid"};
    }
    if (now_ms < token.time_start_ms || now_ms > token.time_end_ms) {
        return Denial{DenyReason::expired, "outside authorized time range"};
    }
    if (std::find(token.scope.begin(), token.scope.end(), presented_request.resource) ==
        token.scope.end()) {
        return Denial{DenyReason::scope, "resource not in token scope"};
    }
    if (trim(token.intention) != trim(presented_request.access_intention)) {
        return Denial{DenyReason::intention, "intention mismatch"};
    }
    if (!ledger.try_consume(token.nonce)) {
        return Denial{DenyReason::replay, "token already used"};
    }
    return Grant{presented_request.resource, now_ms};
}

}  // namespace ztmesh::proto
