#include "ztmesh/wire.hpp"

#include "ztmesh/errors.hpp"

namespace ztmesh::wire {

FrameBuilder& FrameBuilder::add_bytes(BytesView value) {
    fields_.emplace_back(value.begin(), value.end());
    return *this;
}

FrameBuilder& FrameBuilder::add_string(std::string_view value) {
    fields_.emplace_back(value.begin(), value.end());
    return *this;
}

FrameBuilder& FrameBuilder::add_u64(std::uint64_t value) {
    Bytes b;
    put_u64_be(b, value);
    fields_.push_back(std::move(b));
    return *this;
}

FrameBuilder& FrameBuilder::add_f64(double value) {
    Bytes b;
    put_f64_be(b, value);
    fields_.push_back(std::move(b));
    return *this;
}

Bytes FrameBuilder::build() const {
    if (fields_.size() > 255) throw MalformedMessage("frame has more than 255 fields");
    Bytes out;
    out.push_back(kVersion);
    out.push_back(static_cast<std::uint8_t>(fields_.size()));
    for (const Bytes& f : fields_) {
        if (f.size() > 0xffff) throw MalformedMessage("frame field exceeds 64 KiB");
        put_u16_be(out, static_cast<std::uint16_t>(f.size()));
        out.insert(out.end(), f.begin(), f.end());
    }
    if (out.size() >= kMaxFrameBytes) throw MalformedMessage("frame exceeds 64 KiB");
    return out;
}

FrameView::FrameView(BytesView frame) {
    if (frame.size() < 2) throw MalformedMessage("frame too short");
    if (frame[0] != kVersion) throw MalformedMessage("unsupported frame version");
    std::size_t count = frame[1];
    std::size_t offset = 2;
    fields_.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (offset + 2 > frame.size()) throw MalformedMessage("truncated frame field length");
        std::uint16_t len = get_u16_be(frame, offset);
        offset += 2;
        if (offset + len > frame.size()) throw MalformedMessage("truncated frame field");
        fields_.emplace_back(frame.begin() + offset, frame.begin() + offset + len);
        offset += len;
    }
    if (offset != frame.size()) throw MalformedMessage("trailing bytes after frame");
}

BytesView FrameView::field(std::size_t index) const {
    if (index >= fields_.size()) throw IndexOutOfRange("frame field index");
    return fields_[index];
}

std::string FrameView::field_string(std::size_t index) const {
    BytesView f = field(index);
    return std::string(f.begin(), f.end());
}

std::uint64_t FrameView::field_u64(std::size_t index) const {
    BytesView f = field(index);
    if (f.size() != 8) throw MalformedMessage("u64 field must be 8 bytes");
    return get_u64_be(f, 0);
}

double FrameView::field_f64(std::size_t index) const {
    BytesView f = field(index);
    if (f.size() != 8) throw MalformedMessage("f64 field must be 8 bytes");
    return get_f64_be(f, 0);
}

Bytes serialize_certificate(const crypto::Certificate& cert) {
    FrameBuilder frame;
    frame.add_string(cert.device_id);
    frame.add_bytes(cert.device_public_key);
    frame.add_string(cert.issuer_id);
    frame.add_bytes(cert.am_signature);
    return frame.build();
}

crypto::Certificate deserialize_certificate(BytesView bytes) {
    FrameView frame(bytes);
    if (frame.field_count() != 4) throw MalformedMessage("certificate frame needs 4 fields");
    crypto::Certificate cert;
    cert.device_id = frame.field_string(0);
    BytesView pk = frame.field(1);
    cert.device_public_key.assign(pk.begin(), pk.end());
    cert.issuer_id = frame.field_string(2);
    BytesView sig = frame.field(3);
    cert.am_signature.assign(sig.begin(), sig.end());
    return cert;
}

Bytes serialize_request(const zta::AccessRequest& request) {
    request.validate();
    FrameBuilder frame;
    frame.add_bytes(serialize_certificate(request.certificate));
    frame.add_string(request.device_id);
    frame.add_string(request.target_domain);
    frame.add_string(request.resource);
    frame.add_string(zta::to_string(request.access_level));
    frame.add_string(request.access_intention);
    return frame.build();
}

zta::AccessRequest deserialize_request(BytesView bytes) {
    FrameView frame(bytes);
    if (frame.field_count() != 6) throw MalformedMessage("request frame needs 6 fields");
    zta::AccessRequest request;
    request.certificate = deserialize_certificate(frame.field(0));
    request.device_id = frame.field_string(1);
    request.target_domain = frame.field_string(2);
    request.resource = frame.field_string(3);
    request.access_level = zta::access_level_from_string(frame.field_string(4));
    request.access_intention = frame.field_string(5);
    request.validate();
    return request;
}

Bytes envelope(MessageType type, BytesView body) {
    Bytes out;
    out.reserve(body.size() + 2);
    out.push_back(kVersion);
    out.push_back(static_cast<std::uint8_t>(type));
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

MessageType envelope_type(BytesView message) {
    if (message.size() < 2) throw MalformedMessage("envelope too short");
    if (message[0] != kVersion) throw MalformedMessage("unsupported envelope version");
    std::uint8_t t = message[1];
    if (t < 0x01 || t > 0x04) throw MalformedMessage("unknown message type");
    return static_cast<MessageType>(t);
}

BytesView envelope_body(BytesView message) {
    envelope_type(message);
    return message.subspan(2);
}

}  // namespace ztmesh::wire
