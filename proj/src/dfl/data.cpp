#include "ztmesh/dfl/data.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ztmesh/bytes.hpp"
#include "ztmesh/errors.hpp"

namespace ztmesh::dfl {

namespace {

double clip01(double v) {
    return std::min(1.0, std::max(0.0, v));
}

std::vector<double> dirichlet(std::mt19937_64& rng, int dim, double alpha) {
    std::gamma_distribution<double> gamma(alpha, 1.0);
    std::vector<double> out(dim);
    double sum = 0.0;
    for (double& v : out) {
        v = gamma(rng);
        sum += v;
    }
    if (sum <= 0.0) {
        std::fill(out.begin(), out.end(), 1.0 / dim);
        return out;
    }
    for (double& v : out) v /= sum;
    return out;
}

std::vector<std::vector<double>> class_means(std::mt19937_64& rng, int classes, int dim) {
    std::uniform_real_distribution<double> dist(0.15, 0.85);
    std::vector<std::vector<double>> means(classes, std::vector<double>(dim));
    for (auto& mean : means) {
        for (double& v : mean) v = dist(rng);
    }
    return means;
}

int sample_class(std::mt19937_64& rng, const std::vector<double>& proportions) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = u(rng);
    double acc = 0.0;
    for (std::size_t c = 0; c < proportions.size(); ++c) {
        acc += proportions[c];
        if (r <= acc) return static_cast<int>(c);
    }
    return static_cast<int>(proportions.size()) - 1;
}

}  // namespace

std::vector<double> featurize_device(const std::string& device_id, int input_dim) {
    Bytes id_bytes = to_bytes(device_id);
    std::mt19937_64 rng(fnv1a64(id_bytes));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> out(input_dim);
    for (double& v : out) v = u(rng);
    return out;
}

std::vector<double> empirical_class_distribution(const std::vector<Sample>& samples, int classes) {
    std::vector<double> dist(classes, 0.0);
    if (samples.empty()) {
        std::fill(dist.begin(), dist.end(), 1.0 / classes);
        return dist;
    }
    for (const Sample& s : samples) {
        if (s.label >= 0 && s.label < classes) dist[s.label] += 1.0;
    }
    for (double& v : dist) v /= static_cast<double>(samples.size());
    return dist;
}

SyntheticData generate_noniid(const DataConfig& config, int domain_count) {
    if (domain_count < 1) throw EmptyInput("domain_count must be >= 1");
    SyntheticData data;
    data.domains.resize(domain_count);
    data.devices.resize(domain_count);

    std::mt19937_64 mean_rng(config.seed * 0x9e3779b97f4a7c15ULL + 17);
    const auto means = class_means(mean_rng, config.classes, config.input_dim);
    std::normal_distribution<double> noise(0.0, config.noise_sigma);

    for (int d = 0; d < domain_count; ++d) {
        std::mt19937_64 rng(config.seed + 1000003ULL * (d + 1));
        DomainDataset& ds = data.domains[d];
        std::vector<double> proportions = dirichlet(rng, config.classes, config.dirichlet_alpha);

        if (config.mode == DataMode::class_gaussian) {
            ds.train.resize(config.samples_per_domain);
            for (Sample& s : ds.train) {
                s.label = sample_class(rng, proportions);
                s.features.resize(config.input_dim);
                for (int i = 0; i < config.input_dim; ++i) {
                    s.features[i] = clip01(means[s.label][i] + noise(rng));
                }
            }
        } else {
            // Devices carry a fixed class; their records cluster around the
            // stable hash featurization of their id so identifier-only
            // prediction is learnable.
            for (int k = 0; k < config.devices_per_domain; ++k) {
                std::string id = "dev-" + std::to_string(d) + "-" + std::to_string(k);
                data.devices[d].emplace_back(id, sample_class(rng, proportions));
            }
            ds.train.reserve(config.samples_per_domain);
            for (int i = 0; i < config.samples_per_domain; ++i) {
                const auto& [id, label] = data.devices[d][i % data.devices[d].size()];
                Sample s;
                s.label = label;
                s.features = featurize_device(id, config.input_dim);
                for (double& v : s.features) v = clip01(v + 0.1 * noise(rng));
                ds.train.push_back(std::move(s));
            }
        }
        ds.class_distribution = empirical_class_distribution(ds.train, config.classes);
    }

    // Global held-out test set: uniform class mix from the same generative
    // process (class Gaussians; device mode reuses each domain's devices).
    std::mt19937_64 test_rng(config.seed + 7777777ULL);
    data.global_test.resize(config.test_samples);
    if (config.mode == DataMode::class_gaussian) {
        std::uniform_int_distribution<int> cls(0, config.classes - 1);
        for (Sample& s : data.global_test) {
            s.label = cls(test_rng);
            s.features.resize(config.input_dim);
            for (int i = 0; i < config.input_dim; ++i) {
                s.features[i] = clip01(means[s.label][i] + noise(test_rng));
            }
        }
    } else {
        std::vector<std::pair<std::string, int>> all_devices;
        for (const auto& dom : data.devices) {
            all_devices.insert(all_devices.end(), dom.begin(), dom.end());
        }
        std::uniform_int_distribution<std::size_t> pick(0, all_devices.size() - 1);
        for (Sample& s : data.global_test) {
            const auto& [id, label] = all_devices[pick(test_rng)];
            s.label = label;
            s.features = featurize_device(id, config.input_dim);
            for (double& v : s.features) v = clip01(v + 0.1 * noise(test_rng));
        }
    }
    return data;
}

}  // namespace ztmesh::dfl
