#include "ztmesh/dfl/model.hpp"

#include <cmath>
#include <cstring>
#include <random>

#include "ztmesh/dfl/kernels.hpp"
#include "ztmesh/errors.hpp"

namespace ztmesh::dfl {

int Architecture::layer_in(int layer) const {
    if (layer == 0) return input_dim;
    return hidden[layer - 1];
}

int Architecture::layer_out(int layer) const {
    if (layer == static_cast<int>(hidden.size())) return classes;
    return hidden[layer];
}

void ModelParameters::validate() const {
    if (static_cast<int>(layers.size()) != arch.layer_count()) {
        throw ShapeMismatch("layer count does not match architecture");
    }
    for (int l = 0; l < arch.layer_count(); ++l) {
        if (static_cast<int>(layers[l].size()) != arch.layer_len(l)) {
            throw ShapeMismatch("layer length does not match architecture");
        }
        for (double v : layers[l]) {
            if (!std::isfinite(v)) throw NonFiniteGradient("non-finite model parameter");
        }
    }
}

bool ModelParameters::same_shape(const ModelParameters& other) const {
    if (arch != other.arch || layers.size() != other.layers.size()) return false;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        if (layers[l].size() != other.layers[l].size()) return false;
    }
    return true;
}

ModelParameters init_model(const Architecture& arch, std::uint64_t seed) {
    ModelParameters m;
    m.arch = arch;
    m.layers.resize(arch.layer_count());
    std::mt19937_64 rng(seed);
    for (int l = 0; l < arch.layer_count(); ++l) {
        const int in = arch.layer_in(l);
        const int out = arch.layer_out(l);
        const double bound = std::sqrt(6.0 / (in + out));
        std::uniform_real_distribution<double> dist(-bound, bound);
        m.layers[l].resize(arch.layer_len(l));
        for (int i = 0; i < in * out; ++i) m.layers[l][i] = dist(rng);
        // biases start at zero
    }
    return m;
}

namespace {

struct Dispatch {
    void (*affine_forward)(const double*, const double*, const double*, double*, int, int, int);
    void (*affine_backward)(const double*, const double*, const double*, double*, double*,
                            double*, int, int, int);
    void (*relu_forward)(double*, std::int64_t);
    void (*relu_backward)(const double*, double*, std::int64_t);
    void (*softmax_rows)(double*, int, int);
    double (*xent_loss_grad)(const double*, const int*, double*, int, int);
};

constexpr Dispatch kParallel{kernels::affine_forward, kernels::affine_backward,
                             kernels::relu_forward, kernels::relu_backward,
                             kernels::softmax_rows, kernels::xent_loss_grad};
constexpr Dispatch kReference{reference::affine_forward, reference::affine_backward,
                              reference::relu_forward, reference::relu_backward,
                              reference::softmax_rows, reference::xent_loss_grad};

}  // namespace

double loss_and_gradients(const ModelParameters& params, const std::vector<double>& batch_x,
                          const std::vector<int>& labels,
                          std::vector<std::vector<double>>* grads, bool use_reference) {
    const Dispatch& k = use_reference ? kReference : kParallel;
    const Architecture& arch = params.arch;
    const int batch = static_cast<int>(labels.size());
    if (batch == 0) throw EmptyInput("empty batch");
    if (batch_x.size() != static_cast<std::size_t>(batch) * arch.input_dim) {
        throw ShapeMismatch("batch feature size mismatch");
    }

    const int layer_count = arch.layer_count();
    // activations[0] = input, activations[l+1] = output of layer l
    std::vector<std::vector<double>> activations(layer_count + 1);
    activations[0] = batch_x;
    for (int l = 0; l < layer_count; ++l) {
        const int in = arch.layer_in(l);
        const int out = arch.layer_out(l);
        const double* w = params.layers[l].data();
        const double* b = w + static_cast<std::int64_t>(in) * out;
        activations[l + 1].resize(static_cast<std::size_t>(batch) * out);
        k.affine_forward(activations[l].data(), w, b, activations[l + 1].data(), batch, in, out);
        if (l + 1 < layer_count) {
            k.relu_forward(activations[l + 1].data(), activations[l + 1].size());
        }
    }

    std::vector<double>& probs = activations[layer_count];
    k.softmax_rows(probs.data(), batch, arch.classes);

    if (grads == nullptr) {
        return k.xent_loss_grad(probs.data(), labels.data(), nullptr, batch, arch.classes);
    }

    std::vector<double> delta(static_cast<std::size_t>(batch) * arch.classes);
    double loss = k.xent_loss_grad(probs.data(), labels.data(), delta.data(), batch, arch.classes);

    grads->assign(layer_count, {});
    for (int l = layer_count - 1; l >= 0; --l) {
        const int in = arch.layer_in(l);
        const int out = arch.layer_out(l);
        const double* w = params.layers[l].data();
        (*grads)[l].resize(arch.layer_len(l));
        double* dw = (*grads)[l].data();
        double* db = dw + static_cast<std::int64_t>(in) * out;
        std::vector<double> dx;
        double* dx_ptr = nullptr;
        if (l > 0) {
            dx.resize(static_cast<std::size_t>(batch) * in);
            dx_ptr = dx.data();
        }
        k.affine_backward(activations[l].data(), w, delta.data(), dw, db, dx_ptr, batch, in, out);
        if (l > 0) {
            k.relu_backward(activations[l].data(), dx.data(),
                            static_cast<std::int64_t>(batch) * in);
            delta = std::move(dx);
        }
    }
    for (const auto& g : *grads) {
        for (double v : g) {
            if (!std::isfinite(v)) throw NonFiniteGradient("non-finite gradient");
        }
    }
    return loss;
}

std::vector<double> predict_proba(const ModelParameters& params, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != params.arch.input_dim) {
        throw ShapeMismatch("input dimension mismatch");
    }
    const Architecture& arch = params.arch;
    std::vector<double> cur = x;
    for (int l = 0; l < arch.layer_count(); ++l) {
        const int in = arch.layer_in(l);
        const int out = arch.layer_out(l);
        const double* w = params.layers[l].data();
        const double* b = w + static_cast<std::int64_t>(in) * out;
        std::vector<double> next(out);
        reference::affine_forward(cur.data(), w, b, next.data(), 1, in, out);
        if (l + 1 < arch.layer_count()) reference::relu_forward(next.data(), next.size());
        cur = std::move(next);
    }
    reference::softmax_rows(cur.data(), 1, arch.classes);
    return cur;
}

namespace {

constexpr char kMagic[4] = {'Z', 'T', 'M', 'C'};
constexpr std::uint8_t kCheckpointVersion = 1;

void put_u32_le(Bytes& out, std::uint32_t v) {
    for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint32_t get_u32_le(BytesView b, std::size_t& offset) {
    if (offset + 4 > b.size()) throw MalformedMessage("truncated checkpoint");
    std::uint32_t v = 0;
    for (int shift = 0; shift < 32; shift += 8) v |= static_cast<std::uint32_t>(b[offset++]) << shift;
    return v;
}

void put_f64_le(Bytes& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int shift = 0; shift < 64; shift += 8) out.push_back(static_cast<std::uint8_t>(bits >> shift));
}

double get_f64_le(BytesView b, std::size_t& offset) {
    if (offset + 8 > b.size()) throw MalformedMessage("truncated checkpoint");
    std::uint64_t bits = 0;
    for (int shift = 0; shift < 64; shift += 8) bits |= static_cast<std::uint64_t>(b[offset++]) << shift;
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
}

}  // namespace

Bytes serialize_checkpoint(const ModelParameters& params) {
    params.validate();
    Bytes out(kMagic, kMagic + 4);
    out.push_back(kCheckpointVersion);
    put_u32_le(out, static_cast<std::uint32_t>(params.arch.input_dim));
    put_u32_le(out, static_cast<std::uint32_t>(params.arch.hidden.size()));
    for (int h : params.arch.hidden) put_u32_le(out, static_cast<std::uint32_t>(h));
    put_u32_le(out, static_cast<std::uint32_t>(params.arch.classes));
    put_u32_le(out, static_cast<std::uint32_t>(params.arch.activation.size()));
    out.insert(out.end(), params.arch.activation.begin(), params.arch.activation.end());
    put_u32_le(out, static_cast<std::uint32_t>(params.layers.size()));
    for (const auto& layer : params.layers) {
        put_u32_le(out, static_cast<std::uint32_t>(layer.size()));
        for (double v : layer) put_f64_le(out, v);
    }
    return out;
}

ModelParameters deserialize_checkpoint(BytesView bytes) {
    if (bytes.size() < 5 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw MalformedMessage("bad checkpoint magic");
    }
    if (bytes[4] != kCheckpointVersion) throw MalformedMessage("unsupported checkpoint version");
    std::size_t offset = 5;
    ModelParameters m;
    m.arch.input_dim = static_cast<int>(get_u32_le(bytes, offset));
    std::uint32_t hidden_count = get_u32_le(bytes, offset);
    m.arch.hidden.resize(hidden_count);
    for (auto& h : m.arch.hidden) h = static_cast<int>(get_u32_le(bytes, offset));
    m.arch.classes = static_cast<int>(get_u32_le(bytes, offset));
    std::uint32_t act_len = get_u32_le(bytes, offset);
    if (offset + act_len > bytes.size()) throw MalformedMessage("truncated checkpoint");
    m.arch.activation.assign(bytes.begin() + offset, bytes.begin() + offset + act_len);
    offset += act_len;
    std::uint32_t layer_count = get_u32_le(bytes, offset);
    m.layers.resize(layer_count);
    for (auto& layer : m.layers) {
        std::uint32_t len = get_u32_le(bytes, offset);
        layer.resize(len);
        for (auto& v : layer) v = get_f64_le(bytes, offset);
    }
    if (offset != bytes.size()) throw MalformedMessage("trailing checkpoint bytes");
    m.validate();
    return m;
}

}  // namespace ztmesh::dfl
