#pragma once
// Ingestion, synthetic trajectory generation with known ground truth, and
// serialization of datasets, traces, and results.

#include <cstdint>
#include <string>
#include <vector>

#include "bcm/dynamics.hpp"
#include "bcm/labeling.hpp"

namespace bcm {

struct TrajectoryRecord {
    std::string ego_id;
    std::string user_id;
    int segment = 0;
    std::string dimension;
    double score = 0.0;
};

// How true sigma is drawn per synthetic network.
struct SigmaDistribution {
    bool fixed = true;
    double value = 0.5;  // fixed
    double lo = 0.1;     // uniform
    double hi = 0.9;
};

struct SynthSpec {
    int num_networks = 10;
    int alters_per_network = 5;  // 1..5
    int num_segments = 20;
    double true_mu = 0.4;
    SigmaDistribution sigma;
    double noise_stdev = 0.0;
    InteractionMode mode = InteractionMode::EgoOnly;
    GroupScheme scheme = GroupScheme::Sequential;
    std::uint64_t seed = 0;

    void require_valid() const;
};

struct GroundTruth {
    std::string ego_id;
    double true_mu = 0.4;
    double true_sigma = 0.5;
};

struct SyntheticCorpus {
    std::vector<EgoNetwork> networks;
    std::vector<GroundTruth> ground_truth;
};

SyntheticCorpus generate_synthetic(const SynthSpec& spec);

// Trajectory CSV: header "ego_id,user_id,segment,dimension,score".
std::string networks_to_csv(const std::vector<EgoNetwork>& nets);
std::vector<EgoNetwork> networks_from_csv(const std::string& text,
                                          bool interpolate = false);

// Network JSON mirror of the CSV schema.
std::string networks_to_json(const std::vector<EgoNetwork>& nets);
std::vector<EgoNetwork> networks_from_json(const std::string& text,
                                           bool interpolate = false);

// File-level ingestion; format is "csv" or "json".
std::vector<EgoNetwork> load_trajectories(const std::string& path,
                                          const std::string& format,
                                          bool interpolate = false);

// Fills interior gaps linearly per (user, dimension). Leading/trailing
// gaps are an error.
EgoNetwork interpolate_gaps(const EgoNetwork& net);

// Ground-truth CSV: "ego_id,true_mu,true_sigma".
std::string ground_truth_to_csv(const std::vector<GroundTruth>& gt);
std::vector<GroundTruth> ground_truth_from_csv(const std::string& text);

// Sigma dataset CSV:
// "ego_id,alter_id,dimension,segment,v_i_t,v_j_t,v_i_next,mu,sigma_label".
std::string dataset_to_csv(const SigmaDataset& d);
SigmaDataset dataset_from_csv(const std::string& text);

// Simulation trace CSV: "step,user_id,dimension,score".
std::string traces_to_csv(const std::vector<StepTrace>& traces,
                          const EgoNetwork& net);

// Long-format plot data (one CSV per figure kind).
std::string plot_hyperparam_variation(const std::vector<double>& history);
std::string plot_model_loss(const std::vector<std::pair<std::string, double>>& losses);
std::string plot_actual_vs_predicted(const std::vector<double>& actual,
                                     const std::vector<double>& predicted);

// Small file helpers.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace bcm
