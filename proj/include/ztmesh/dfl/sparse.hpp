#pragma once

#include <cstdint>
#include <vector>

#include "ztmesh/bytes.hpp"
#include "ztmesh/dfl/model.hpp"

namespace ztmesh::dfl {

// TopK-compressed model: per layer exactly min(k_top, layer length) entries,
// the ones of largest absolute value, indices strictly increasing.
struct SparseUpdate {
    struct Layer {
        std::uint32_t original_len = 0;
        std::vector<std::pair<std::uint32_t, double>> entries;
    };
    std::vector<Layer> layers;
    int k_top = 0;

    bool operator==(const SparseUpdate&) const = default;
};

SparseUpdate compress_topk(const ModelParameters& model, int k_top);

// Dense vectors with zeros at omitted positions. Throws IndexOutOfRange.
std::vector<std::vector<double>> decompress_layers(const SparseUpdate& update);
ModelParameters decompress(const SparseUpdate& update, const Architecture& arch);

// Whole per-round exchange payload: exactly (compressed model, F1, class
// probability distribution). Nothing else ever crosses the domain boundary.
struct RoundMessage {
    SparseUpdate update;
    double f1 = 0.0;
    std::vector<double> class_distribution;

    bool operator==(const RoundMessage&) const = default;
};

// Transport encoding with message-type byte 0x02 on the shared envelope.
Bytes encode_round_message(const RoundMessage& message);
RoundMessage decode_round_message(BytesView envelope);

}  // namespace ztmesh::dfl
