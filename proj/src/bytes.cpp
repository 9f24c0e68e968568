#include "ztmesh/bytes.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace ztmesh {

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("invalid hex digit");
}
}  // namespace

std::string to_hex(BytesView b) {
    std::string out;
    out.reserve(b.size() * 2);
    for (std::uint8_t byte : b) {
        out.push_back(kHexDigits[byte >> 4]);
        out.push_back(kHexDigits[byte & 0x0f]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("odd hex length");
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(hex_nibble(hex[2 * i]) << 4 | hex_nibble(hex[2 * i + 1]));
    }
    return out;
}

void put_u16_be(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32_be(Bytes& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) {
        out.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

void put_u64_be(Bytes& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) {
        out.push_back(static_cast<std::uint8_t>(v >> shift));
    }
}

void put_f64_be(Bytes& out, double v) {
    put_u64_be(out, std::bit_cast<std::uint64_t>(v));
}

namespace {
void check_range(BytesView b, std::size_t offset, std::size_t len) {
    if (offset + len > b.size()) throw std::out_of_range("byte read past end");
}
}  // namespace

std::uint16_t get_u16_be(BytesView b, std::size_t offset) {
    check_range(b, offset, 2);
    return static_cast<std::uint16_t>(b[offset] << 8 | b[offset + 1]);
}

std::uint32_t get_u32_be(BytesView b, std::size_t offset) {
    check_range(b, offset, 4);
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < 4; ++i) v = v << 8 | b[offset + i];
    return v;
}

std::uint64_t get_u64_be(BytesView b, std::size_t offset) {
    check_range(b, offset, 8);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < 8; ++i) v = v << 8 | b[offset + i];
    return v;
}

double get_f64_be(BytesView b, std::size_t offset) {
    return std::bit_cast<double>(get_u64_be(b, offset));
}

std::uint64_t fnv1a64(BytesView b, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (std::uint8_t byte : b) {
        h ^= byte;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace ztmesh
