#include "ztmesh/dfl/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ztmesh/counters.hpp"
#include "ztmesh/dfl/kernels.hpp"
#include "ztmesh/errors.hpp"

namespace ztmesh::dfl {

void TrainingHyperparams::validate() const {
    if (eta0 <= 0.0) throw ConfigError("eta0 must be > 0");
    if (beta <= 0.0 || beta > 1.0) throw ConfigError("beta must be in (0, 1]");
    if (k_top < 1) throw ConfigError("k_top must be >= 1");
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (rounds < 0) throw ConfigError("rounds must be >= 0");
    if (local_epochs_per_round < 1) throw ConfigError("local_epochs_per_round must be >= 1");
    if (alpha0 < 0.0 || alpha0 > alpha_max) throw ConfigError("alpha0 must be in [0, alpha_max]");
    if (missing_reuse_rounds < 0) throw ConfigError("missing_reuse_rounds must be >= 0");
}

DomainTrainer::DomainTrainer(std::string domain_id, Architecture arch, TrainingHyperparams hyper,
                             DomainDataset dataset, std::vector<std::string> neighbor_ids,
                             std::uint64_t seed)
    : domain_id_(std::move(domain_id)),
      arch_(arch),
      hyper_(hyper),
      dataset_(std::move(dataset)),
      model_(init_model(arch, seed)),
      rng_(seed ^ 0x5851f42d4c957f2dULL) {
    hyper_.validate();
    if (dataset_.train.empty()) throw EmptyInput("local dataset is empty");
    if (dataset_.class_distribution.empty()) {
        dataset_.class_distribution =
            empirical_class_distribution(dataset_.train, arch_.classes);
    }
    std::sort(neighbor_ids.begin(), neighbor_ids.end());
    for (auto& id : neighbor_ids) {
        NeighborState state;
        state.domain_id = std::move(id);
        state.alpha = hyper_.alpha0;
        state.eta = hyper_.eta0;
        neighbors_.push_back(std::move(state));
    }
}

RoundMessage DomainTrainer::initial_message() const {
    RoundMessage message;
    message.update = compress_topk(model_, hyper_.k_top);
    message.f1 = evaluate_f1(dataset_.train);
    message.class_distribution = dataset_.class_distribution;
    return message;
}

RoundMessage DomainTrainer::run_round(const std::map<std::string, RoundMessage>& inbox) {
    ++round_;
    stats_ = RoundStats{};
    stats_.round = round_;

    // Ingest this round's messages; a missing neighbor reuses its previous
    // state for up to missing_reuse_rounds rounds, then drops out of the
    // softmax until it speaks again.
    std::vector<NeighborState*> active;
    for (NeighborState& nb : neighbors_) {
        auto it = inbox.find(nb.domain_id);
        if (it != inbox.end()) {
            nb.last_update = it->second.update;
            nb.f1 = it->second.f1;
            nb.class_distribution = it->second.class_distribution;
            nb.staleness = 0;
            nb.f1_history.push_back(nb.f1);
            while (nb.f1_history.size() > 5) nb.f1_history.pop_front();
        } else if (nb.last_update.has_value()) {
            ++nb.staleness;
        }
        if (nb.last_update.has_value() && nb.staleness <= hyper_.missing_reuse_rounds) {
            active.push_back(&nb);
        }
    }

    ModelParameters aggregated;
    double eta = hyper_.eta0;
    if (active.empty()) {
        // Isolated domain: plain local SGD at the base rate.
        aggregated = model_;
    } else {
        std::vector<std::vector<std::vector<double>>> dense;
        std::vector<double> wafs;
        std::vector<double> alphas;
        dense.reserve(active.size());
        for (NeighborState* nb : active) {
            dense.push_back(decompress_layers(*nb->last_update));
            double kl = kl_divergence(nb->class_distribution, dataset_.class_distribution);
            nb->waf = weight_adjustment_factor(nb->f1, kl, hyper_.lambda1, hyper_.lambda2);
            wafs.push_back(nb->waf);
            alphas.push_back(nb->alpha);
            stats_.waf_by_neighbor[nb->domain_id] = nb->waf;
        }

        std::vector<double> weights;
        if (hyper_.weighting == Weighting::dynamic) {
            weights = normalize_weights(wafs);
        } else {
            weights.assign(wafs.size(), 1.0 / static_cast<double>(wafs.size()));
        }
        for (std::size_t d = 0; d < active.size(); ++d) {
            stats_.weight_by_neighbor[active[d]->domain_id] = weights[d];
        }

        aggregated.arch = arch_;
        aggregated.layers.resize(arch_.layer_count());
        for (int l = 0; l < arch_.layer_count(); ++l) {
            std::vector<const std::vector<double>*> ptrs;
            ptrs.reserve(dense.size());
            for (const auto& m : dense) ptrs.push_back(&m[l]);
            aggregated.layers[l] = kernels::weighted_sum(ptrs, weights);
        }
        aggregated.validate();

        eta = learning_rate_round(hyper_.eta0, wafs, alphas);
        double mean_waf = std::accumulate(wafs.begin(), wafs.end(), 0.0) / wafs.size();
        for (NeighborState* nb : active) {
            nb->eta = hyper_.eta0 + nb->alpha * (nb->waf - mean_waf);
        }
    }
    stats_.eta = eta;

    if (hyper_.step_from == StepFrom::aggregated && !active.empty()) {
        model_ = aggregated;
    }

    // Local update: minibatch SGD for the configured epochs. The first step
    // of the round evaluates the gradient at the aggregated parameters.
    const int n_samples = static_cast<int>(dataset_.train.size());
    std::vector<int> order(n_samples);
    std::iota(order.begin(), order.end(), 0);
    bool first_step = true;
    for (int epoch = 0; epoch < hyper_.local_epochs_per_round; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng_);
        for (int start = 0; start < n_samples; start += hyper_.batch_size) {
            const int end = std::min(start + hyper_.batch_size, n_samples);
            const int batch = end - start;
            std::vector<double> x(static_cast<std::size_t>(batch) * arch_.input_dim);
            std::vector<int> y(batch);
            for (int i = 0; i < batch; ++i) {
                const Sample& s = dataset_.train[order[start + i]];
                std::copy(s.features.begin(), s.features.end(),
                          x.begin() + static_cast<std::size_t>(i) * arch_.input_dim);
                y[i] = s.label;
            }
            const ModelParameters& point =
                (first_step && hyper_.step_from == StepFrom::local && !active.empty())
                    ? aggregated
                    : model_;
            std::vector<std::vector<double>> grads;
            loss_and_gradients(point, x, y, &grads);
            for (int l = 0; l < arch_.layer_count(); ++l) {
                kernels::axpy(model_.layers[l].data(), grads[l].data(), -eta,
                              static_cast<std::int64_t>(model_.layers[l].size()));
            }
            first_step = false;
        }
    }

    RoundMessage outbound;
    outbound.update = compress_topk(model_, hyper_.k_top);
    outbound.f1 = evaluate_f1(dataset_.train);
    outbound.class_distribution = dataset_.class_distribution;
    stats_.local_f1 = outbound.f1;

    // Adapt the per-neighbor learning-rate parameters from the reported F1
    // against its trailing mean.
    for (NeighborState* nb : active) {
        double gamma_bar = nb->f1;
        if (!nb->f1_history.empty()) {
            gamma_bar = std::accumulate(nb->f1_history.begin(), nb->f1_history.end(), 0.0) /
                        static_cast<double>(nb->f1_history.size());
        }
        nb->alpha = update_alpha(nb->alpha, nb->waf, nb->f1, gamma_bar, hyper_.beta,
                                 hyper_.alpha_max);
    }
    return outbound;
}

zta::ContextPrediction DomainTrainer::predict(const std::string& device_id) const {
    metrics::charge(metrics::Op::I);
    zta::ContextPrediction prediction;
    prediction.feature_estimate = featurize_device(device_id, arch_.input_dim);
    prediction.class_distribution = predict_proba(model_, prediction.feature_estimate);
    auto it = std::max_element(prediction.class_distribution.begin(),
                               prediction.class_distribution.end());
    prediction.context_class = static_cast<int>(it - prediction.class_distribution.begin());
    prediction.confidence = *it;
    return prediction;
}

std::vector<int> DomainTrainer::predict_labels(const std::vector<Sample>& samples) const {
    std::vector<int> labels(samples.size());
#pragma omp parallel for schedule(static) if (samples.size() > 64)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples.size()); ++i) {
        std::vector<double> proba = predict_proba(model_, samples[i].features);
        labels[i] = static_cast<int>(std::max_element(proba.begin(), proba.end()) - proba.begin());
    }
    return labels;
}

double DomainTrainer::evaluate_f1(const std::vector<Sample>& samples) const {
    if (samples.empty()) throw EmptyInput("no samples to evaluate");
    std::vector<int> truth(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) truth[i] = samples[i].label;
    return macro_f1(predict_labels(samples), truth, arch_.classes, hyper_.f1_formula);
}

LockstepTrainer::LockstepTrainer(std::vector<DomainTrainer*> domains,
                                 std::map<std::string, std::vector<std::string>> neighbor_map)
    : domains_(std::move(domains)), neighbors_(std::move(neighbor_map)) {
    for (DomainTrainer* d : domains_) {
        outbox_[d->domain_id()] = d->initial_message();
    }
}

void LockstepTrainer::run_one_round() {
    std::vector<std::map<std::string, RoundMessage>> inboxes(domains_.size());
    for (std::size_t i = 0; i < domains_.size(); ++i) {
        for (const std::string& nb : neighbors_[domains_[i]->domain_id()]) {
            auto it = outbox_.find(nb);
            if (it != outbox_.end()) inboxes[i].emplace(nb, it->second);
        }
    }
    std::vector<RoundMessage> produced(domains_.size());
#pragma omp parallel for schedule(static) if (domains_.size() > 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(domains_.size()); ++i) {
        produced[i] = domains_[i]->run_round(inboxes[i]);
    }
    for (std::size_t i = 0; i < domains_.size(); ++i) {
        outbox_[domains_[i]->domain_id()] = std::move(produced[i]);
    }
}

void LockstepTrainer::run_rounds(int rounds) {
    for (int t = 0; t < rounds; ++t) run_one_round();
}

}  // namespace ztmesh::dfl
