#include "ztmesh/dfl/math.hpp"

#include <algorithm>
#include <cmath>

#include "ztmesh/errors.hpp"

namespace ztmesh::dfl {

double f1_score(const std::vector<int>& predictions, const std::vector<int>& truth,
                int positive_class, F1Formula formula) {
    if (predictions.size() != truth.size()) throw LengthMismatch("prediction/truth lengths differ");
    if (predictions.empty()) throw EmptyInput("empty label vectors");
    std::int64_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const bool pred_pos = predictions[i] == positive_class;
        const bool true_pos = truth[i] == positive_class;
        if (pred_pos && true_pos) ++tp;
        if (pred_pos && !true_pos) ++fp;
        if (!pred_pos && true_pos) ++fn;
    }
    if (tp == 0 && (fp > 0 || fn > 0)) return 0.0;
    if (tp == 0) return 0.0;  // no positives anywhere: precision+recall == 0
    const double precision = static_cast<double>(tp) / (tp + fp);
    const double recall = static_cast<double>(tp) / (tp + fn);
    if (precision + recall == 0.0) return 0.0;
    const double num = formula == F1Formula::standard ? 2.0 * precision * recall
                                                      : precision * recall;
    return num / (precision + recall);
}

double macro_f1(const std::vector<int>& predictions, const std::vector<int>& truth,
                int class_count, F1Formula formula) {
    if (class_count <= 0) throw EmptyInput("class_count must be positive");
    double sum = 0.0;
    for (int c = 0; c < class_count; ++c) {
        sum += f1_score(predictions, truth, c, formula);
    }
    return sum / class_count;
}

namespace {

void check_distribution(const std::vector<double>& p, const char* name) {
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw NotNormalized(std::string(name) + " has negative entries");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw NotNormalized(std::string(name) + " does not sum to 1");
}

}  // namespace

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw LengthMismatch("distribution lengths differ");
    if (p.empty()) throw EmptyInput("empty distributions");
    check_distribution(p, "p");
    check_distribution(q, "q");
    constexpr double kEps = 1e-12;
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        kl += p[i] * std::log(p[i] / std::max(q[i], kEps));
    }
    return kl;
}

double weight_adjustment_factor(double f1, double kl, double lambda1, double lambda2) {
    return lambda1 * f1 + lambda2 * kl;
}

std::vector<double> normalize_weights(const std::vector<double>& wafs) {
    if (wafs.empty()) throw EmptyInput("normalize_weights needs at least one value");
    const double mx = *std::max_element(wafs.begin(), wafs.end());
    std::vector<double> out(wafs.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < wafs.size(); ++i) {
        out[i] = std::exp(wafs[i] - mx);
        sum += out[i];
    }
    for (double& v : out) v /= sum;
    return out;
}

double learning_rate_round(double eta0, const std::vector<double>& wafs,
                           const std::vector<double>& alphas) {
    if (wafs.empty() || wafs.size() != alphas.size()) {
        throw EmptyInput("learning_rate_round needs matching non-empty inputs");
    }
    double mean_waf = 0.0;
    for (double w : wafs) mean_waf += w;
    mean_waf /= wafs.size();

    double eta_sum = 0.0;
    for (std::size_t d = 0; d < wafs.size(); ++d) {
        const double delta = alphas[d] * (wafs[d] - mean_waf);
        eta_sum += eta0 + delta;
    }
    const double eta = eta_sum / wafs.size();
    return std::clamp(eta, eta0 / 10.0, 10.0 * eta0);
}

double update_alpha(double alpha, double waf, double gamma, double gamma_trailing_mean,
                    double beta, double alpha_max) {
    const double delta = waf * (gamma - gamma_trailing_mean);
    return std::clamp(alpha + beta * delta, 0.0, alpha_max);
}

}  // namespace ztmesh::dfl
