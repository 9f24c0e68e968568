#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ztmesh {

using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(BytesView b) {
    return std::string(b.begin(), b.end());
}

std::string to_hex(BytesView b);
Bytes from_hex(std::string_view hex);

// Big-endian integer IO used by the wire framing.
void put_u16_be(Bytes& out, std::uint16_t v);
void put_u32_be(Bytes& out, std::uint32_t v);
void put_u64_be(Bytes& out, std::uint64_t v);
void put_f64_be(Bytes& out, double v);

std::uint16_t get_u16_be(BytesView b, std::size_t offset);
std::uint32_t get_u32_be(BytesView b, std::size_t offset);
std::uint64_t get_u64_be(BytesView b, std::size_t offset);
double get_f64_be(BytesView b, std::size_t offset);

// FNV-1a over arbitrary bytes; used for state hashing and stable featurization
// seeds, not for anything security relevant.
std::uint64_t fnv1a64(BytesView b, std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace ztmesh
