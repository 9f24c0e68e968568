#include "ztmesh/dfl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ztmesh/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ztmesh::dfl::kernels {

void affine_forward(const double* x, const double* w, const double* b, double* y,
                    int batch, int in, int out) {
#pragma omp parallel for schedule(static) if (static_cast<std::int64_t>(batch) * out > 4096)
    for (int r = 0; r < batch; ++r) {
        const double* xr = x + static_cast<std::int64_t>(r) * in;
        double* yr = y + static_cast<std::int64_t>(r) * out;
        for (int j = 0; j < out; ++j) yr[j] = b[j];
        for (int i = 0; i < in; ++i) {
            const double xi = xr[i];
            const double* wrow = w + static_cast<std::int64_t>(i) * out;
            for (int j = 0; j < out; ++j) yr[j] += xi * wrow[j];
        }
    }
}

void affine_backward(const double* x, const double* w, const double* dy, double* dw, double* db,
                     double* dx, int batch, int in, int out) {
    // dw: each (i,j) owns its full reduction over the batch, serial inner loop.
#pragma omp parallel for schedule(static) if (static_cast<std::int64_t>(in) * out > 4096)
    for (int i = 0; i < in; ++i) {
        double* dwrow = dw + static_cast<std::int64_t>(i) * out;
        for (int j = 0; j < out; ++j) {
            double acc = 0.0;
            for (int r = 0; r < batch; ++r) {
                acc += x[static_cast<std::int64_t>(r) * in + i] *
                       dy[static_cast<std::int64_t>(r) * out + j];
            }
            dwrow[j] = acc;
        }
    }
    for (int j = 0; j < out; ++j) {
        double acc = 0.0;
        for (int r = 0; r < batch; ++r) acc += dy[static_cast<std::int64_t>(r) * out + j];
        db[j] = acc;
    }
    if (dx != nullptr) {
#pragma omp parallel for schedule(static) if (static_cast<std::int64_t>(batch) * in > 4096)
        for (int r = 0; r < batch; ++r) {
            const double* dyr = dy + static_cast<std::int64_t>(r) * out;
            double* dxr = dx + static_cast<std::int64_t>(r) * in;
            for (int i = 0; i < in; ++i) {
                const double* wrow = w + static_cast<std::int64_t>(i) * out;
                double acc = 0.0;
                for (int j = 0; j < out; ++j) acc += dyr[j] * wrow[j];
                dxr[i] = acc;
            }
        }
    }
}

void relu_forward(double* y, std::int64_t n) {
#pragma omp parallel for schedule(static) if (n > 16384)
    for (std::int64_t i = 0; i < n; ++i) {
        if (y[i] < 0.0) y[i] = 0.0;
    }
}

void relu_backward(const double* y, double* dz, std::int64_t n) {
#pragma omp parallel for schedule(static) if (n > 16384)
    for (std::int64_t i = 0; i < n; ++i) {
        if (y[i] <= 0.0) dz[i] = 0.0;
    }
}

void softmax_rows(double* y, int rows, int cols) {
#pragma omp parallel for schedule(static) if (static_cast<std::int64_t>(rows) * cols > 4096)
    for (int r = 0; r < rows; ++r) {
        double* yr = y + static_cast<std::int64_t>(r) * cols;
        double mx = yr[0];
        for (int j = 1; j < cols; ++j) mx = std::max(mx, yr[j]);
        double sum = 0.0;
        for (int j = 0; j < cols; ++j) {
            yr[j] = std::exp(yr[j] - mx);
            sum += yr[j];
        }
        for (int j = 0; j < cols; ++j) yr[j] /= sum;
    }
}

double xent_loss_grad(const double* probs, const int* labels, double* dlogits, int rows, int cols) {
    constexpr double kEps = 1e-12;
    double loss = 0.0;
    for (int r = 0; r < rows; ++r) {
        loss -= std::log(std::max(probs[static_cast<std::int64_t>(r) * cols + labels[r]], kEps));
    }
    loss /= rows;
    if (dlogits != nullptr) {
        const double inv = 1.0 / rows;
#pragma omp parallel for schedule(static) if (static_cast<std::int64_t>(rows) * cols > 16384)
        for (int r = 0; r < rows; ++r) {
            const double* pr = probs + static_cast<std::int64_t>(r) * cols;
            double* dr = dlogits + static_cast<std::int64_t>(r) * cols;
            for (int j = 0; j < cols; ++j) {
                dr[j] = (pr[j] - (labels[r] == j ? 1.0 : 0.0)) * inv;
            }
        }
    }
    return loss;
}

namespace {

std::vector<std::uint32_t> topk_common(const std::vector<double>& values, int k) {
    const int len = static_cast<int>(values.size());
    const int keep = std::min(k, len);
    std::vector<std::uint32_t> idx(len);
    std::iota(idx.begin(), idx.end(), 0u);
    auto better = [&](std::uint32_t a, std::uint32_t b) {
        double va = std::fabs(values[a]);
        double vb = std::fabs(values[b]);
        if (va != vb) return va > vb;
        return a < b;  // tie toward the lower index
    };
    std::nth_element(idx.begin(), idx.begin() + keep, idx.end(), better);
    idx.resize(keep);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace

std::vector<std::uint32_t> topk_indices(const std::vector<double>& values, int k) {
    if (k < 1) throw ShapeMismatch("k_top must be >= 1");
    return topk_common(values, k);
}

std::vector<double> weighted_sum(const std::vector<const std::vector<double>*>& vectors,
                                 const std::vector<double>& weights) {
    if (vectors.empty() || vectors.size() != weights.size()) {
        throw ShapeMismatch("weighted_sum needs matching non-empty inputs");
    }
    const std::size_t n = vectors[0]->size();
    for (const auto* v : vectors) {
        if (v->size() != n) throw ShapeMismatch("weighted_sum vector lengths differ");
    }
    std::vector<double> out(n);
#pragma omp parallel for schedule(static) if (n > 16384)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < vectors.size(); ++d) acc += weights[d] * (*vectors[d])[i];
        out[i] = acc;
    }
    return out;
}

void axpy(double* y, const double* g, double scale, std::int64_t n) {
#pragma omp parallel for schedule(static) if (n > 16384)
    for (std::int64_t i = 0; i < n; ++i) y[i] += scale * g[i];
}

}  // namespace ztmesh::dfl::kernels

namespace ztmesh::dfl::reference {

void affine_forward(const double* x, const double* w, const double* b, double* y,
                    int batch, int in, int out) {
    for (int r = 0; r < batch; ++r) {
        const double* xr = x + static_cast<std::int64_t>(r) * in;
        double* yr = y + static_cast<std::int64_t>(r) * out;
        for (int j = 0; j < out; ++j) yr[j] = b[j];
        for (int i = 0; i < in; ++i) {
            const double xi = xr[i];
            const double* wrow = w + static_cast<std::int64_t>(i) * out;
            for (int j = 0; j < out; ++j) yr[j] += xi * wrow[j];
        }
    }
}

void affine_backward(const double* x, const double* w, const double* dy, double* dw, double* db,
                     double* dx, int batch, int in, int out) {
    for (int i = 0; i < in; ++i) {
        double* dwrow = dw + static_cast<std::int64_t>(i) * out;
        for (int j = 0; j < out; ++j) {
            double acc = 0.0;
            for (int r = 0; r < batch; ++r) {
                acc += x[static_cast<std::int64_t>(r) * in + i] *
                       dy[static_cast<std::int64_t>(r) * out + j];
            }
            dwrow[j] = acc;
        }
    }
    for (int j = 0; j < out; ++j) {
        double acc = 0.0;
        for (int r = 0; r < batch; ++r) acc += dy[static_cast<std::int64_t>(r) * out + j];
        db[j] = acc;
    }
    if (dx != nullptr) {
        for (int r = 0; r < batch; ++r) {
            const double* dyr = dy + static_cast<std::int64_t>(r) * out;
            double* dxr = dx + static_cast<std::int64_t>(r) * in;
            for (int i = 0; i < in; ++i) {
                const double* wrow = w + static_cast<std::int64_t>(i) * out;
                double acc = 0.0;
                for (int j = 0; j < out; ++j) acc += dyr[j] * wrow[j];
                dxr[i] = acc;
            }
        }
    }
}

void relu_forward(double* y, std::int64_t n) {
    for (std::int64_t i = 0; i < n; ++i) {
        if (y[i] < 0.0) y[i] = 0.0;
    }
}

void relu_backward(const double* y, double* dz, std::int64_t n) {
    for (std::int64_t i = 0; i < n; ++i) {
        if (y[i] <= 0.0) dz[i] = 0.0;
    }
}

void softmax_rows(double* y, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* yr = y + static_cast<std::int64_t>(r) * cols;
        double mx = yr[0];
        for (int j = 1; j < cols; ++j) mx = std::max(mx, yr[j]);
        double sum = 0.0;
        for (int j = 0; j < cols; ++j) {
            yr[j] = std::exp(yr[j] - mx);
            sum += yr[j];
        }
        for (int j = 0; j < cols; ++j) yr[j] /= sum;
    }
}

double xent_loss_grad(const double* probs, const int* labels, double* dlogits, int rows, int cols) {
    constexpr double kEps = 1e-12;
    double loss = 0.0;
    for (int r = 0; r < rows; ++r) {
        loss -= std::log(std::max(probs[static_cast<std::int64_t>(r) * cols + labels[r]], kEps));
    }
    loss /= rows;
    if (dlogits != nullptr) {
        const double inv = 1.0 / rows;
        for (int r = 0; r < rows; ++r) {
            const double* pr = probs + static_cast<std::int64_t>(r) * cols;
            double* dr = dlogits + static_cast<std::int64_t>(r) * cols;
            for (int j = 0; j < cols; ++j) {
                dr[j] = (pr[j] - (labels[r] == j ? 1.0 : 0.0)) * inv;
            }
        }
    }
    return loss;
}

std::vector<std::uint32_t> topk_indices(const std::vector<double>& values, int k) {
    if (k < 1) throw ShapeMismatch("k_top must be >= 1");
    // Full stable sort by (|value| desc, index asc); simple and obviously
    // correct, which is the point of the reference path.
    std::vector<std::uint32_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::stable_sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        double va = std::fabs(values[a]);
        double vb = std::fabs(values[b]);
        if (va != vb) return va > vb;
        return a < b;
    });
    idx.resize(std::min<std::size_t>(idx.size(), static_cast<std::size_t>(k)));
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<double> weighted_sum(const std::vector<const std::vector<double>*>& vectors,
                                 const std::vector<double>& weights) {
    if (vectors.empty() || vectors.size() != weights.size()) {
        throw ShapeMismatch("weighted_sum needs matching non-empty inputs");
    }
    const std::size_t n = vectors[0]->size();
    for (const auto* v : vectors) {
        if (v->size() != n) throw ShapeMismatch("weighted_sum vector lengths differ");
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < vectors.size(); ++d) acc += weights[d] * (*vectors[d])[i];
        out[i] = acc;
    }
    return out;
}

void axpy(double* y, const double* g, double scale, std::int64_t n) {
    for (std::int64_t i = 0; i < n; ++i) y[i] += scale * g[i];
}

}  // namespace ztmesh::dfl::reference
