#pragma once

#include <cstdint>
#include <vector>

namespace ztmesh::dfl::kernels {

// OpenMP-parallel dense kernels used by training and aggregation. Every
// kernel partitions work by output element with serial inner loops, so the
// results are bitwise identical to dfl::reference regardless of thread count.

// y[batch x out] = x[batch x in] * w[in x out] + b[out]
void affine_forward(const double* x, const double* w, const double* b, double* y,
                    int batch, int in, int out);

// dw[in x out] = x^T * dy;  db[out] = column sums of dy;  dx = dy * w^T
void affine_backward(const double* x, const double* w, const double* dy, double* dw, double* db,
                     double* dx, int batch, int in, int out);

void relu_forward(double* y, std::int64_t n);
// dz *= (y > 0) where y is the post-activation value
void relu_backward(const double* y, double* dz, std::int64_t n);

// Row-wise softmax in place, max-subtracted for stability.
void softmax_rows(double* y, int rows, int cols);

// Mean cross-entropy over rows given softmax probabilities; fills dlogits
// with (p - onehot)/rows when non-null. Returns the loss.
double xent_loss_grad(const double* probs, const int* labels, double* dlogits, int rows, int cols);

// Indices of the k entries of largest absolute value, ties broken toward
// the lower index, returned in increasing index order. k >= len returns all.
std::vector<std::uint32_t> topk_indices(const std::vector<double>& values, int k);

// out = sum_d weights[d] * vectors[d], elementwise.
std::vector<double> weighted_sum(const std::vector<const std::vector<double>*>& vectors,
                                 const std::vector<double>& weights);

// y += scale * g
void axpy(double* y, const double* g, double scale, std::int64_t n);

}  // namespace ztmesh::dfl::kernels

namespace ztmesh::dfl::reference {

// Serial reference implementations with identical contracts; kept as the
// oracle the kernel tests and gradient checks compare against.

void affine_forward(const double* x, const double* w, const double* b, double* y,
                    int batch, int in, int out);
void affine_backward(const double* x, const double* w, const double* dy, double* dw, double* db,
                     double* dx, int batch, int in, int out);
void relu_forward(double* y, std::int64_t n);
void relu_backward(const double* y, double* dz, std::int64_t n);
void softmax_rows(double* y, int rows, int cols);
double xent_loss_grad(const double* probs, const int* labels, double* dlogits, int rows, int cols);
std::vector<std::uint32_t> topk_indices(const std::vector<double>& values, int k);
std::vector<double> weighted_sum(const std::vector<const std::vector<double>*>& vectors,
                                 const std::vector<double>& weights);
void axpy(double* y, const double* g, double scale, std::int64_t n);

}  // namespace ztmesh::dfl::reference
