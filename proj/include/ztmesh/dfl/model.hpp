#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ztmesh/bytes.hpp"

namespace ztmesh::dfl {

// MLP with flattened per-layer parameter vectors. Each affine layer stores
// row-major weights followed by biases: [w(0,0)..w(in-1,out-1), b(0)..b(out-1)].
struct Architecture {
    int input_dim = 16;
    std::vector<int> hidden = {32};
    int classes = 4;
    std::string activation = "relu";

    int layer_count() const { return static_cast<int>(hidden.size()) + 1; }
    int layer_in(int layer) const;
    int layer_out(int layer) const;
    int layer_len(int layer) const { return (layer_in(layer) + 1) * layer_out(layer); }

    bool operator==(const Architecture&) const = default;
};

struct ModelParameters {
    Architecture arch;
    std::vector<std::vector<double>> layers;

    void validate() const;  // throws ShapeMismatch / NonFiniteGradient on bad values
    bool same_shape(const ModelParameters& other) const;
};

ModelParameters init_model(const Architecture& arch, std::uint64_t seed);

// Mean cross-entropy loss over the batch; when grads is non-null it receives
// d(loss)/d(params) in the same flattened layout. use_reference selects the
// serial reference kernels instead of the OpenMP ones (test oracle path).
double loss_and_gradients(const ModelParameters& params, const std::vector<double>& batch_x,
                          const std::vector<int>& labels,
                          std::vector<std::vector<double>>* grads, bool use_reference = false);

// Softmax class probabilities for a single input.
std::vector<double> predict_proba(const ModelParameters& params, const std::vector<double>& x);

// Checkpoint file format (documented in docs/wire.md): magic "ZTMC",
// version byte, architecture descriptor, little-endian 64-bit floats.
Bytes serialize_checkpoint(const ModelParameters& params);
ModelParameters deserialize_checkpoint(BytesView bytes);

}  // namespace ztmesh::dfl
