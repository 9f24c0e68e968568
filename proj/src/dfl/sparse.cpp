#include "ztmesh/dfl/sparse.hpp"

#include "ztmesh/dfl/kernels.hpp"
#include "ztmesh/errors.hpp"
#include "ztmesh/wire.hpp"

namespace ztmesh::dfl {

SparseUpdate compress_topk(const ModelParameters& model, int k_top) {
    if (k_top < 1) throw ShapeMismatch("k_top must be >= 1");
    SparseUpdate update;
    update.k_top = k_top;
    update.layers.resize(model.layers.size());
#pragma omp parallel for schedule(static) if (model.layers.size() > 1)
    for (std::int64_t l = 0; l < static_cast<std::int64_t>(model.layers.size()); ++l) {
        const std::vector<double>& layer = model.layers[l];
        SparseUpdate::Layer& out = update.layers[l];
        out.original_len = static_cast<std::uint32_t>(layer.size());
        std::vector<std::uint32_t> idx = kernels::topk_indices(layer, k_top);
        out.entries.reserve(idx.size());
        for (std::uint32_t i : idx) out.entries.emplace_back(i, layer[i]);
    }
    return update;
}

std::vector<std::vector<double>> decompress_layers(const SparseUpdate& update) {
    std::vector<std::vector<double>> layers(update.layers.size());
    for (std::size_t l = 0; l < update.layers.size(); ++l) {
        const SparseUpdate::Layer& sl = update.layers[l];
        layers[l].assign(sl.original_len, 0.0);
        for (const auto& [idx, value] : sl.entries) {
            if (idx >= sl.original_len) throw IndexOutOfRange("sparse entry index out of range");
            layers[l][idx] = value;
        }
    }
    return layers;
}

ModelParameters decompress(const SparseUpdate& update, const Architecture& arch) {
    ModelParameters m;
    m.arch = arch;
    m.layers = decompress_layers(update);
    if (static_cast<int>(m.layers.size()) != arch.layer_count()) {
        throw ShapeMismatch("sparse layer count does not match architecture");
    }
    for (int l = 0; l < arch.layer_count(); ++l) {
        if (static_cast<int>(m.layers[l].size()) != arch.layer_len(l)) {
            throw ShapeMismatch("sparse layer length does not match architecture");
        }
    }
    return m;
}

Bytes encode_round_message(const RoundMessage& message) {
    wire::FrameBuilder frame;
    frame.add_f64(message.f1);
    Bytes dist;
    for (double p : message.class_distribution) put_f64_be(dist, p);
    frame.add_bytes(dist);
    frame.add_u64(static_cast<std::uint64_t>(message.update.k_top));
    for (const auto& layer : message.update.layers) {
        Bytes b;
        put_u32_be(b, layer.original_len);
        put_u32_be(b, static_cast<std::uint32_t>(layer.entries.size()));
        for (const auto& [idx, value] : layer.entries) {
            put_u32_be(b, idx);
            put_f64_be(b, value);
        }
        frame.add_bytes(b);
    }
    return wire::envelope(wire::MessageType::dfl_round, frame.build());
}

RoundMessage decode_round_message(BytesView envelope) {
    if (wire::envelope_type(envelope) != wire::MessageType::dfl_round) {
        throw MalformedMessage("not a dfl round message");
    }
    wire::FrameView frame(wire::envelope_body(envelope));
    if (frame.field_count() < 3) throw MalformedMessage("round message needs 3+ fields");
    RoundMessage message;
    message.f1 = frame.field_f64(0);
    BytesView dist = frame.field(1);
    if (dist.size() % 8 != 0) throw MalformedMessage("distribution field not f64 aligned");
    for (std::size_t off = 0; off < dist.size(); off += 8) {
        message.class_distribution.push_back(get_f64_be(dist, off));
    }
    message.update.k_top = static_cast<int>(frame.field_u64(2));
    for (std::size_t f = 3; f < frame.field_count(); ++f) {
        BytesView b = frame.field(f);
        if (b.size() < 8) throw MalformedMessage("truncated sparse layer");
        SparseUpdate::Layer layer;
        layer.original_len = get_u32_be(b, 0);
        std::uint32_t count = get_u32_be(b, 4);
        if (b.size() != 8 + static_cast<std::size_t>(count) * 12) {
            throw MalformedMessage("sparse layer size mismatch");
        }
        layer.entries.reserve(count);
        for (std::uint32_t i = 0; i < count; ++i) {
            std::size_t off = 8 + static_cast<std::size_t>(i) * 12;
            layer.entries.emplace_back(get_u32_be(b, off), get_f64_be(b, off + 4));
        }
        message.update.layers.push_back(std::move(layer));
    }
    return message;
}

}  // namespace ztmesh::dfl
