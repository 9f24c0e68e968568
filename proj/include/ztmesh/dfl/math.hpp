#pragma once

#include <vector>

namespace ztmesh::dfl {

enum class F1Formula {
    standard,    // 2PR / (P + R)
    as_printed,  // PR / (P + R)
};

// Binary F1 for one positive class over integer label vectors. Returns 0
// when precision + recall is 0. Throws LengthMismatch / EmptyInput.
double f1_score(const std::vector<int>& predictions, const std::vector<int>& truth,
                int positive_class, F1Formula formula = F1Formula::standard);

// Unweighted mean of the per-class F1 scores.
double macro_f1(const std::vector<int>& predictions, const std::vector<int>& truth,
                int class_count, F1Formula formula = F1Formula::standard);

// sum_i p_i * ln(p_i / q_i); p_i == 0 terms contribute 0, q_i is floored at
// 1e-12 where p_i > 0. Throws LengthMismatch / NotNormalized.
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

// waf = lambda1 * f1 + lambda2 * kl
double weight_adjustment_factor(double f1, double kl, double lambda1, double lambda2);

// Softmax with max subtraction; output sums to 1.
std::vector<double> normalize_weights(const std::vector<double>& wafs);

// Per-neighbor adjustment delta_d = alpha_d * (waf_d - mean(waf)), actual
// rate eta_d = eta0 + delta_d, round rate = mean(eta_d), clamped to
// [eta0/10, 10*eta0]. Throws EmptyInput.
double learning_rate_round(double eta0, const std::vector<double>& wafs,
                           const std::vector<double>& alphas);

// alpha' = clamp(alpha + beta * waf * (gamma - gamma_trailing_mean), 0, alpha_max).
// The trailing mean over the last 5 reported F1 values is caller state.
double update_alpha(double alpha, double waf, double gamma, double gamma_trailing_mean,
                    double beta, double alpha_max = 1.0);

}  // namespace ztmesh::dfl
