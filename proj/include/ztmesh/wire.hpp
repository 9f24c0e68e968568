#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ztmesh/bytes.hpp"
#include "ztmesh/control_plane.hpp"

namespace ztmesh::wire {

// Framing shared by every serialized structure in the repo:
//   [version: 1 byte][field_count: 1 byte][fields: (u16 BE length, bytes)*]
// All multi-byte integers are big-endian. Total frame length < 64 KiB.
inline constexpr std::uint8_t kVersion = 0x01;
inline constexpr std::size_t kMaxFrameBytes = 64 * 1024;

// Message-type bytes of the transport envelope [version][type][body].
enum class MessageType : std::uint8_t {
    encrypted_request = 0x01,
    dfl_round = 0x02,
    preauth_response = 0x03,
    token_presentation = 0x04,
};

class FrameBuilder {
  public:
    FrameBuilder& add_bytes(BytesView value);
    FrameBuilder& add_string(std::string_view value);
    FrameBuilder& add_u64(std::uint64_t value);
    FrameBuilder& add_f64(double value);
    Bytes build() const;  // throws MalformedMessage when limits are exceeded

  private:
    std::vector<Bytes> fields_;
};

class FrameView {
  public:
    explicit FrameView(BytesView frame);  // throws MalformedMessage

    std::size_t field_count() const { return fields_.size(); }
    BytesView field(std::size_t index) const;  // throws IndexOutOfRange
    std::string field_string(std::size_t index) const;
    std::uint64_t field_u64(std::size_t index) const;
    double field_f64(std::size_t index) const;

  private:
    std::vector<Bytes> fields_;
};

// SerializedRequest: fixed field order (certificate, device_id,
// target_domain, resource, access_level, access_intention); the certificate
// travels as a nested frame (device_id, public key, issuer, signature).
Bytes serialize_request(const zta::AccessRequest& request);
zta::AccessRequest deserialize_request(BytesView frame);

Bytes serialize_certificate(const crypto::Certificate& cert);
crypto::Certificate deserialize_certificate(BytesView frame);

Bytes envelope(MessageType type, BytesView body);
MessageType envelope_type(BytesView message);  // throws MalformedMessage
BytesView envelope_body(BytesView message);

}  // namespace ztmesh::wire
