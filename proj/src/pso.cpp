#include "bcm/pso.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

namespace bcm {

using nlohmann::json;

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t particle, std::uint64_t gen) {
    // splitmix64 over a combined key
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (particle + 1) +
                      0xBF58476D1CE4E5B9ULL * (gen + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

bool dim_active(const SearchSpace& space, const std::vector<double>& position,
                std::size_t dim_index) {
    const SearchDimension* d = &space.dims[dim_index];
    int guard = 0;
    while (!d->active_when_dim.empty()) {
        if (++guard > static_cast<int>(space.dims.size())) {
            throw DataError("cyclic activation rules in search space");
        }
        int gi = space.index_of(d->active_when_dim);
        const SearchDimension& gate = space.dims[gi];
        int choice = static_cast<int>(std::llround(position[gi]));
        if (gate.choices[choice] != d->active_when_choice) return false;
        d = &gate;
    }
    return true;
}

}  // namespace

void SearchSpace::require_valid() const {
    if (dims.empty()) throw DataError("empty search space");
    for (const auto& d : dims) {
        if (d.kind == DimensionKind::Categorical) {
            if (d.choices.empty()) throw DataError("categorical '" + d.name + "' has no choices");
        } else if (!(d.lo < d.hi)) {
            throw DataError("dimension '" + d.name + "' needs lo < hi");
        }
        if (!d.active_when_dim.empty()) {
            int gi = index_of(d.active_when_dim);
            if (gi < 0) throw DataError("activation rule references unknown dimension");
            if (dims[gi].kind != DimensionKind::Categorical) {
                throw DataError("activation gate must be categorical");
            }
        }
    }
    // Cycle check: follow each gate chain to its root.
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const SearchDimension* d = &dims[i];
        int guard = 0;
        while (!d->active_when_dim.empty()) {
            if (++guard > static_cast<int>(dims.size())) {
                throw DataError("cyclic activation rules in search space");
            }
            d = &dims[index_of(d->active_when_dim)];
        }
    }
}

int SearchSpace::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

void PsoConfig::require_valid() const {
    if (num_particles < 1) throw DataError("num_particles must be >= 1");
    if (num_generations < 0) throw DataError("num_generations must be >= 0");
    if (phi1 < 0 || phi2 < 0) throw DataError("phi1/phi2 must be >= 0");
    if (!(inertia > 0 && inertia <= 1)) throw DataError("inertia must be in (0,1]");
}

ParamMap decode_position(const SearchSpace& space, const std::vector<double>& position) {
    if (position.size() != space.dims.size()) {
        throw DataError("position length does not match search space");
    }
    ParamMap out;
    for (std::size_t i = 0; i < space.dims.size(); ++i) {
        if (!dim_active(space, position, i)) continue;
        const auto& d = space.dims[i];
        if (d.kind == DimensionKind::Categorical) {
            out[d.name] = d.choices[static_cast<int>(std::llround(position[i]))];
        } else {
            out[d.name] = position[i];
        }
    }
    return out;
}

std::vector<ParticleState> sample_initial(const SearchSpace& space,
                                          const PsoConfig& config) {
    space.require_valid();
    config.require_valid();
    std::vector<ParticleState> particles(config.num_particles);
    for (int p = 0; p < config.num_particles; ++p) {
        std::mt19937_64 rng(mix(config.seed, p, 0));
        auto& ps = particles[p];
        ps.position.resize(space.dims.size());
        ps.velocity.assign(space.dims.size(), 0.0);
        for (std::size_t i = 0; i < space.dims.size(); ++i) {
            const auto& d = space.dims[i];
            if (d.kind == DimensionKind::Categorical) {
                std::uniform_int_distribution<int> pick(0, static_cast<int>(d.choices.size()) - 1);
                ps.position[i] = pick(rng);
            } else {
                std::uniform_real_distribution<double> pos(d.lo, d.hi);
                std::uniform_real_distribution<double> vel(-(d.hi - d.lo) / 2,
                                                           (d.hi - d.lo) / 2);
                ps.position[i] = pos(rng);
                if (d.kind == DimensionKind::Integer) {
                    ps.position[i] = std::clamp(std::round(ps.position[i]), d.lo, d.hi);
                }
                ps.velocity[i] = vel(rng);
            }
        }
        ps.best_position = ps.position;
        ps.best_fitness = std::numeric_limits<double>::infinity();
        ps.fitness = std::numeric_limits<double>::infinity();
    }
    return particles;
}

SwarmBest step(std::vector<ParticleState>& particles, const SearchSpace& space,
               const PsoConfig& config, const FitnessFn& fitness, int generation,
               SwarmBest best) {
    const double phi_sum = config.phi1 + config.phi2 + 1.0;
    for (std::size_t p = 0; p < particles.size(); ++p) {
        auto& ps = particles[p];
        std::mt19937_64 rng(mix(config.seed, p, generation));
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        const std::vector<double>& gbest =
            best.position.empty() ? ps.best_position : best.position;
        for (std::size_t i = 0; i < space.dims.size(); ++i) {
            const auto& d = space.dims[i];
            if (d.kind == DimensionKind::Categorical) {
                double u = uni(rng) * phi_sum;
                if (u < config.phi1) {
                    ps.position[i] = ps.best_position[i];
                } else if (u < config.phi1 + config.phi2) {
                    ps.position[i] = gbest[i];
                }  // else keep
                continue;
            }
            double r1 = uni(rng);
            double r2 = uni(rng);
            double v = config.inertia * ps.velocity[i] +
                       config.phi1 * r1 * (ps.best_position[i] - ps.position[i]) +
                       config.phi2 * r2 * (gbest[i] - ps.position[i]);
            if (config.max_speed) {
                v = std::clamp(v, -*config.max_speed, *config.max_speed);
            }
            double x = ps.position[i] + v;
            if (x <= d.lo) {
                x = d.lo;
                v = 0.0;  // zero velocity on boundary contact
            } else if (x >= d.hi) {
                x = d.hi;
                v = 0.0;
            }
            if (d.kind == DimensionKind::Integer) x = std::round(x);
            ps.position[i] = x;
            ps.velocity[i] = v;
        }
        double f = fitness(ps.position);
        ps.fitness = f;
        if (!std::isfinite(f)) {
            ps.non_finite_evals += 1;
            continue;  // keep previous best
        }
        if (f < ps.best_fitness) {
            ps.best_fitness = f;
            ps.best_position = ps.position;
        }
    }
    for (const auto& ps : particles) {
        if (ps.best_fitness < best.fitness) {
            best.fitness = ps.best_fitness;
            best.position = ps.best_position;
        }
    }
    return best;
}

OptimizeResult optimize(const SearchSpace& space, const PsoConfig& config,
                        const FitnessFn& fitness) {
    std::vector<ParticleState> particles = sample_initial(space, config);
    SwarmBest best;
    for (auto& ps : particles) {
        double f = fitness(ps.position);
        ps.fitness = f;
        if (!std::isfinite(f)) {
            ps.non_finite_evals += 1;
            continue;
        }
        ps.best_fitness = f;
        if (f < best.fitness) {
            best.fitness = f;
            best.position = ps.position;
        }
    }

    OptimizeResult result;
    for (int g = 1; g <= config.num_generations; ++g) {
        best = step(particles, space, config, fitness, g, best);
        result.history.push_back(best.fitness);
    }
    if (result.history.empty()) result.history.push_back(best.fitness);
    result.best_position = best.position;
    result.best_fitness = best.fitness;
    return result;
}

SearchSpace default_search_space(RegressorFamily family) {
    SearchSpace s;
    switch (family) {
        case RegressorFamily::Svr:
            s.dims.push_back({"kernel", DimensionKind::Categorical, 0, 0,
                              {"rbf", "linear", "poly"}, "", ""});
            s.dims.push_back({"gamma", DimensionKind::Continuous, 1e-6, 50.0, {},
                              "kernel", "rbf"});
            s.dims.push_back({"c_rbf", DimensionKind::Continuous, 1.0, 100.0, {},
                              "kernel", "rbf"});
            s.dims.push_back({"c_linear", DimensionKind::Continuous, 1.0, 100.0, {},
                              "kernel", "linear"});
            s.dims.push_back({"c_poly", DimensionKind::Continuous, 1000.0, 20000.0, {},
                              "kernel", "poly"});
            s.dims.push_back({"degree", DimensionKind::Integer, 2, 5, {}, "kernel",
                              "poly"});
            s.dims.push_back({"coef0", DimensionKind::Continuous, 0.0, 1.0, {},
                              "kernel", "poly"});
            break;
        case RegressorFamily::GaussianProcess:
            s.dims.push_back({"normalize_y", DimensionKind::Categorical, 0, 0,
                              {"true", "false"}, "", ""});
            s.dims.push_back({"gp_alpha", DimensionKind::Continuous, 1e-10, 1e-2, {},
                              "", ""});
            s.dims.push_back({"gamma", DimensionKind::Continuous, 1e-6, 50.0, {}, "",
                              ""});
            break;
        case RegressorFamily::ElasticNet:
            s.dims.push_back({"alpha", DimensionKind::Continuous, 0.0, 1.0, {}, "", ""});
            s.dims.push_back({"l1_ratio", DimensionKind::Continuous, 0.0, 1.0, {}, "",
                              ""});
            s.dims.push_back({"tol", DimensionKind::Continuous, 1e-4, 0.01, {}, "", ""});
            break;
        case RegressorFamily::Ridge:
            s.dims.push_back({"alpha", DimensionKind::Continuous, 1e-6, 10.0, {}, "",
                              ""});
            break;
    }
    // elasticnet alpha = 0 would make the box degenerate at the OLS corner;
    // keep the 0-inclusive lower bound (the solver handles alpha = 0).
    return s;
}

namespace {

double num_param(const ParamMap& m, const std::string& key, double fallback) {
    auto it = m.find(key);
    if (it == m.end()) return fallback;
    return std::get<double>(it->second);
}

}  // namespace

RegressorSpec spec_from_params(RegressorFamily family, const ParamMap& params) {
    RegressorSpec spec;
    spec.family = family;
    switch (family) {
        case RegressorFamily::Svr: {
            std::string kernel = std::get<std::string>(params.at("kernel"));
            if (kernel == "rbf") {
                spec.kernel = RbfKernel{num_param(params, "gamma", 1.0)};
                spec.c = num_param(params, "c_rbf", 10.0);
            } else if (kernel == "linear") {
                spec.kernel = LinearKernel{};
                spec.c = num_param(params, "c_linear", 10.0);
            } else {
                spec.kernel = PolynomialKernel{
                    static_cast<int>(std::llround(num_param(params, "degree", 2))),
                    num_param(params, "coef0", 0.0)};
                spec.c = num_param(params, "c_poly", 1000.0);
            }
            spec.epsilon = num_param(params, "epsilon", 0.01);
            break;
        }
        case RegressorFamily::GaussianProcess:
            spec.kernel = RbfKernel{num_param(params, "gamma", 1.0)};
            spec.gp_alpha = num_param(params, "gp_alpha", 1e-6);
            spec.normalize_y =
                std::get<std::string>(params.at("normalize_y")) == "true";
            break;
        case RegressorFamily::ElasticNet:
            spec.alpha = num_param(params, "alpha", 0.01);
            spec.l1_ratio = num_param(params, "l1_ratio", 0.5);
            spec.tol = num_param(params, "tol", 1e-4);
            break;
        case RegressorFamily::Ridge:
            spec.alpha = num_param(params, "alpha", 1.0);
            break;
    }
    return spec;
}

TuneResult tune_regressor(const SigmaDataset& train, const SigmaDataset& validation,
                          RegressorFamily family, const SearchSpace& space,
                          const PsoConfig& config,
                          std::optional<std::size_t> max_train_points) {
    if (train.tuples.empty() || validation.tuples.empty()) {
        throw DataError("tune_regressor requires non-empty train and validation splits");
    }
    auto val_x = feature_matrix(validation);
    auto val_y = label_vector(validation);

    FitnessFn fitness = [&](const std::vector<double>& position) -> double {
        try {
            RegressorSpec spec = spec_from_params(family, decode_position(space, position));
            spec.max_train_points = max_train_points;
            FittedModel m = fit(train, spec);
            std::vector<double> preds;
            preds.reserve(val_x.size());
            for (const auto& x : val_x) preds.push_back(predict(m, x));
            return mse(preds, val_y);
        } catch (const std::exception&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    OptimizeResult opt = optimize(space, config, fitness);
    if (!std::isfinite(opt.best_fitness)) {
        throw NumericError("all PSO fitness evaluations were non-finite");
    }
    TuneResult result;
    result.best_spec = spec_from_params(family, decode_position(space, opt.best_position));
    result.best_spec.max_train_points = max_train_points;
    result.validation_mse = opt.best_fitness;
    result.history = std::move(opt.history);
    return result;
}

SearchSpace search_space_from_json(const std::string& text) {
    json j = json::parse(text);
    SearchSpace s;
    for (const auto& jd : j.at("dimensions")) {
        SearchDimension d;
        d.name = jd.at("name");
        std::string kind = jd.at("kind");
        if (kind == "continuous") {
            d.kind = DimensionKind::Continuous;
        } else if (kind == "integer") {
            d.kind = DimensionKind::Integer;
        } else if (kind == "categorical") {
            d.kind = DimensionKind::Categorical;
        } else {
            throw DataError("unknown dimension kind: '" + kind + "'");
        }
        if (d.kind == DimensionKind::Categorical) {
            d.choices = jd.at("choices").get<std::vector<std::string>>();
        } else {
            d.lo = jd.at("lo");
            d.hi = jd.at("hi");
        }
        if (jd.contains("active_when")) {
            d.active_when_dim = jd.at("active_when").at("dim");
            d.active_when_choice = jd.at("active_when").at("choice");
        }
        s.dims.push_back(std::move(d));
    }
    s.require_valid();
    return s;
}

PsoConfig pso_config_from_json(const std::string& text) {
    json j = json::parse(text);
    PsoConfig c;
    if (j.contains("num_particles")) c.num_particles = j.at("num_particles");
    if (j.contains("num_generations")) c.num_generations = j.at("num_generations");
    if (j.contains("phi1")) c.phi1 = j.at("phi1");
    if (j.contains("phi2")) c.phi2 = j.at("phi2");
    if (j.contains("inertia")) c.inertia = j.at("inertia");
    if (j.contains("seed")) c.seed = j.at("seed");
    if (j.contains("max_speed") && !j.at("max_speed").is_null()) {
        c.max_speed = j.at("max_speed").get<double>();
    }
    c.require_valid();
    return c;
}

std::string history_to_csv(const std::vector<double>& history) {
    std::ostringstream out;
    out << "generation,best_fitness\n";
    for (std::size_t g = 0; g < history.size(); ++g) {
        out << (g + 1) << "," << history[g] << "\n";
    }
    return out.str();
}

}  // namespace bcm
