#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ztmesh::dfl {

struct Sample {
    std::vector<double> features;  // [0,1]
    int label = 0;
};

struct DomainDataset {
    std::vector<Sample> train;
    std::vector<double> class_distribution;  // empirical P_i over classes
};

enum class DataMode {
    class_gaussian,  // class-conditional Gaussians, Dirichlet class mix
    device_linked,   // features derived from stable device-id hashes
};

struct DataConfig {
    int classes = 4;
    int input_dim = 16;
    int samples_per_domain = 600;
    int test_samples = 400;
    double dirichlet_alpha = 0.3;
    double noise_sigma = 0.18;
    std::uint64_t seed = 1;
    DataMode mode = DataMode::class_gaussian;
    int devices_per_domain = 8;  // device_linked only
};

struct SyntheticData {
    std::vector<DomainDataset> domains;
    std::vector<Sample> global_test;
    // device_linked mode: ids and assigned classes, per domain
    std::vector<std::vector<std::pair<std::string, int>>> devices;
};

// Deterministic feature vector for a device identifier: a stable hash seeds
// a generator that fills input_dim uniforms in [0,1].
std::vector<double> featurize_device(const std::string& device_id, int input_dim);

// Per-domain class proportions drawn from Dirichlet(alpha); features are
// class-conditional Gaussians clipped to [0,1]. Fully seeded.
SyntheticData generate_noniid(const DataConfig& config, int domain_count);

std::vector<double> empirical_class_distribution(const std::vector<Sample>& samples, int classes);

}  // namespace ztmesh::dfl
