#pragma once

#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ztmesh/control_plane.hpp"
#include "ztmesh/dfl/data.hpp"
#include "ztmesh/dfl/math.hpp"
#include "ztmesh/dfl/model.hpp"
#include "ztmesh/dfl/sparse.hpp"

namespace ztmesh::dfl {

enum class StepFrom {
    local,       // m^{t+1} = m^t - eta * grad J(m~^t), literal update rule
    aggregated,  // m^{t+1} = m~^t - eta * grad J(m~^t)
};

enum class Weighting { dynamic, uniform };

struct TrainingHyperparams {
    double eta0 = 0.01;
    double lambda1 = 0.7;
    double lambda2 = 0.3;
    double beta = 0.5;
    int k_top = 128;
    int batch_size = 32;
    int rounds = 100;
    int local_epochs_per_round = 1;
    double alpha0 = 0.1;
    double alpha_max = 1.0;
    F1Formula f1_formula = F1Formula::standard;
    StepFrom step_from = StepFrom::local;
    Weighting weighting = Weighting::dynamic;
    int missing_reuse_rounds = 3;

    void validate() const;  // throws ConfigError
};

// Per-neighbor bookkeeping: weight adjustment factor, learning-rate
// adjustment parameter, reported F1 and class distribution, last update.
struct NeighborState {
    std::string domain_id;
    double waf = 0.0;
    double alpha = 0.0;
    double eta = 0.0;
    double f1 = 0.0;
    std::vector<double> class_distribution;
    std::optional<SparseUpdate> last_update;
    int staleness = 0;  // rounds since the last fresh message
    std::deque<double> f1_history;
};

struct RoundStats {
    int round = 0;
    double eta = 0.0;
    double local_f1 = 0.0;  // F1 on local data, as exchanged
    std::map<std::string, double> waf_by_neighbor;
    std::map<std::string, double> weight_by_neighbor;
};

// Worker + coordinator for one domain. Also serves as the control plane's
// context oracle; every predict() charges one I counter.
class DomainTrainer : public zta::ContextOracle {
  public:
    DomainTrainer(std::string domain_id, Architecture arch, TrainingHyperparams hyper,
                  DomainDataset dataset, std::vector<std::string> neighbor_ids,
                  std::uint64_t seed);

    // Message sent before the first round: compressed initial model, its F1
    // on local data, the local class distribution.
    RoundMessage initial_message() const;

    // One full round: ingest neighbor messages (missing entries fall back to
    // the reuse policy), aggregate, adapt the learning rate, run the local
    // update, recompress, update alphas, and emit the outbound message.
    RoundMessage run_round(const std::map<std::string, RoundMessage>& inbox);

    // ContextOracle
    zta::ContextPrediction predict(const std::string& device_id) const override;
    int class_count() const override { return arch_.classes; }

    double evaluate_f1(const std::vector<Sample>& samples) const;
    const ModelParameters& model() const { return model_; }
    const RoundStats& last_stats() const { return stats_; }
    const std::string& domain_id() const { return domain_id_; }
    int round() const { return round_; }
    const std::vector<NeighborState>& neighbors() const { return neighbors_; }

  private:
    void local_update(const ModelParameters& gradient_point);
    std::vector<int> predict_labels(const std::vector<Sample>& samples) const;

    std::string domain_id_;
    Architecture arch_;
    TrainingHyperparams hyper_;
    DomainDataset dataset_;
    ModelParameters model_;
    std::vector<NeighborState> neighbors_;  // fixed order by id
    std::mt19937_64 rng_;
    int round_ = 0;
    RoundStats stats_;
};

// Lockstep multi-domain driver used by the train command, tests and the
// simulator's pretraining phase. Domains may advance in parallel; messages
// are exchanged between rounds only.
class LockstepTrainer {
  public:
    LockstepTrainer(std::vector<DomainTrainer*> domains,
                    std::map<std::string, std::vector<std::string>> neighbor_map);

    void run_rounds(int rounds);
    void run_one_round();

  private:
    std::vector<DomainTrainer*> domains_;
    std::map<std::string, std::vector<std::string>> neighbors_;
    std::map<std::string, RoundMessage> outbox_;
};

}  // namespace ztmesh::dfl
