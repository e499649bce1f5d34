#pragma once
// End-to-end orchestration: label -> split -> tune -> fit -> evaluate ->
// forecast -> plot data. Used by the CLI and callable in-process.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bcm/io.hpp"
#include "bcm/pso.hpp"

namespace bcm {

struct RunConfig {
    std::string input_path;
    std::string input_format = "csv";
    std::string out_dir = "out";
    bool interpolate = false;

    double mu = 0.4;
    double delta = 0.01;
    std::array<double, 3> split_fractions = {0.7, 0.2, 0.1};
    std::uint64_t seed = 0;

    RegressorFamily family = RegressorFamily::Svr;
    std::optional<SearchSpace> space;  // default_search_space(family) when unset
    PsoConfig pso;                     // defaults: 10 particles x 15 generations

    InteractionMode mode = InteractionMode::EgoOnly;
    GroupScheme scheme = GroupScheme::Sequential;

    // Kernel-method fits subsample above this many training points.
    std::optional<std::size_t> max_train_points = 1500;

    // Also fit the other families with defaults for the model-loss plot.
    bool compare_families = true;
};

struct Forecast {
    std::string ego_id;
    ValueDimension dimension;
    double last_observed = 0.0;
    double forecast = 0.0;
};

struct PipelineResult {
    SigmaDataset dataset;
    DatasetSplit split;
    TuneResult tuned;
    FittedModel model;
    double test_mse = 0.0;
    std::vector<Forecast> forecasts;
    std::vector<std::pair<std::string, double>> family_losses;
    std::string metrics_json;
};

// Next-segment ego forecasts: sigma predicted per (ego, alter, dimension)
// from the last observed transition, then one influence step from the
// final segment with the predicted thresholds.
std::vector<Forecast> forecast_networks(const std::vector<EgoNetwork>& nets,
                                        const FittedModel& model, double mu,
                                        InteractionMode mode, GroupScheme scheme);

PipelineResult run_pipeline(const std::vector<EgoNetwork>& networks,
                            const RunConfig& config);

// File-based variant: loads the input, writes all artifacts plus a
// manifest under config.out_dir.
PipelineResult run_pipeline_files(const RunConfig& config);

std::string forecasts_to_csv(const std::vector<Forecast>& forecasts);

// FNV-1a hash of a byte string, hex-encoded; used for the manifest.
std::string content_hash(const std::string& bytes);

}  // namespace bcm
