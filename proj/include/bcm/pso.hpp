#pragma once
// Box-constrained particle swarm optimizer with conditional
// (categorical-gated) search dimensions.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bcm/labeling.hpp"
#include "bcm/regress.hpp"

namespace bcm {

enum class DimensionKind { Continuous, Integer, Categorical };

struct SearchDimension {
    std::string name;
    DimensionKind kind = DimensionKind::Continuous;
    double lo = 0.0;  // bounded kinds
    double hi = 1.0;
    std::vector<std::string> choices;  // categorical

    // Active only while `active_when_dim` (a categorical dimension) holds
    // `active_when_choice`. Empty = always active.
    std::string active_when_dim;
    std::string active_when_choice;
};

struct SearchSpace {
    std::vector<SearchDimension> dims;

    void require_valid() const;
    int index_of(const std::string& name) const;  // -1 when absent
};

struct PsoConfig {
    int num_particles = 10;
    int num_generations = 15;
    double phi1 = 1.5;
    double phi2 = 2.0;
    std::optional<double> max_speed;  // nullopt = unclamped
    double inertia = 0.7298;
    std::uint64_t seed = 0;

    void require_valid() const;
};

struct ParticleState {
    // One slot per dimension; categoricals store the choice index.
    std::vector<double> position;
    std::vector<double> velocity;  // zero and unused for categoricals
    std::vector<double> best_position;
    double best_fitness = 0.0;
    double fitness = 0.0;
    int non_finite_evals = 0;  // diagnostics
};

// A decoded position: only active dimensions appear.
using ParamValue = std::variant<double, std::string>;
using ParamMap = std::map<std::string, ParamValue>;
ParamMap decode_position(const SearchSpace& space, const std::vector<double>& position);

using FitnessFn = std::function<double(const std::vector<double>& position)>;

// Uniform positions within bounds, velocities uniform in +-(hi-lo)/2,
// deterministic given config.seed.
std::vector<ParticleState> sample_initial(const SearchSpace& space,
                                          const PsoConfig& config);

struct SwarmBest {
    std::vector<double> position;
    double fitness = std::numeric_limits<double>::infinity();
};

// One PSO generation. Random draws are assigned per (particle, generation)
// so the result is independent of evaluation order.
SwarmBest step(std::vector<ParticleState>& particles, const SearchSpace& space,
               const PsoConfig& config, const FitnessFn& fitness, int generation,
               SwarmBest current_best);

struct OptimizeResult {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    std::vector<double> history;  // best fitness after each generation
};

OptimizeResult optimize(const SearchSpace& space, const PsoConfig& config,
                        const FitnessFn& fitness);

// Default hyperparameter spaces per regressor family.
SearchSpace default_search_space(RegressorFamily family);

// Builds a RegressorSpec from a decoded position.
RegressorSpec spec_from_params(RegressorFamily family, const ParamMap& params);

struct TuneResult {
    RegressorSpec best_spec;
    double validation_mse = 0.0;
    std::vector<double> history;
};

// Fitness = validation MSE of a model fit on train with the decoded spec.
// Throws NumericError when every evaluation is non-finite.
TuneResult tune_regressor(const SigmaDataset& train, const SigmaDataset& validation,
                          RegressorFamily family, const SearchSpace& space,
                          const PsoConfig& config,
                          std::optional<std::size_t> max_train_points = std::nullopt);

// JSON parsing for configuration documents.
SearchSpace search_space_from_json(const std::string& text);
PsoConfig pso_config_from_json(const std::string& text);

// CSV export of an optimize history: "generation,best_fitness".
std::string history_to_csv(const std::vector<double>& history);

}  // namespace bcm
