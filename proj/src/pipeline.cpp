#include "bcm/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include <json.hpp>

namespace bcm {

using nlohmann::json;

std::vector<Forecast> forecast_networks(const std::vector<EgoNetwork>& nets,
                                        const FittedModel& model, double mu,
                                        InteractionMode /*mode*/, GroupScheme scheme) {
    std::vector<Forecast> out;
    for (const auto& net : nets) {
        std::size_t segs = net.num_segments();
        if (segs < 2) throw DataError("forecast needs at least 2 segments per network");
        std::size_t last = segs - 1;
        const auto& ego_traj = net.trajectories[0];
        for (ValueDimension dim : kAllDimensions) {
            // Sigma per alter from the last observed transition.
            std::vector<double> sigma_hat(net.alter_ids.size());
            for (std::size_t k = 0; k < net.alter_ids.size(); ++k) {
                std::vector<double> feats = {ego_traj[last - 1][dim],
                                             net.trajectories[1 + k][last - 1][dim],
                                             ego_traj[last][dim], mu};
                sigma_hat[k] = predict(model, feats);
            }
            double ego = ego_traj[last][dim];
            if (scheme == GroupScheme::Sequential) {
                for (std::size_t k = 0; k < net.alter_ids.size(); ++k) {
                    ego = bcm_pair_update(ego, net.trajectories[1 + k][last][dim],
                                          {mu, sigma_hat[k]});
                }
            } else {
                double sum = 0.0;
                int count = 0;
                for (std::size_t k = 0; k < net.alter_ids.size(); ++k) {
                    double alter = net.trajectories[1 + k][last][dim];
                    if (std::abs(alter - ego) <= sigma_hat[k]) {
                        sum += alter;
                        count += 1;
                    }
                }
                if (count > 0) ego += mu * (sum / count - ego);
            }
            out.push_back({net.ego_id, dim, ego_traj[last][dim], ego});
        }
    }
    return out;
}

PipelineResult run_pipeline(const std::vector<EgoNetwork>& networks,
                            const RunConfig& config) {
    if (networks.empty()) throw DataError("no networks loaded");
    PipelineResult r;

    r.dataset = build_dataset(networks, config.mu, config.delta);
    if (r.dataset.tuples.empty()) throw DataError("labeling produced an empty dataset");

    r.split = split_dataset(r.dataset, config.split_fractions, config.seed);

    SearchSpace space = config.space ? *config.space : default_search_space(config.family);
    // A zero validation fraction falls back to Algorithm-style train/test
    // tuning against the test split.
    const SigmaDataset& tune_val =
        r.split.validation.tuples.empty() ? r.split.test : r.split.validation;
    PsoConfig pso = config.pso;
    pso.seed = config.seed;
    r.tuned = tune_regressor(r.split.train, tune_val, config.family, space, pso,
                             config.max_train_points);

    r.model = fit(r.split.train, r.tuned.best_spec);

    std::vector<double> preds;
    preds.reserve(r.split.test.tuples.size());
    for (const auto& t : r.split.test.tuples) preds.push_back(predict(r.model, t.features()));
    r.test_mse = mse(preds, label_vector(r.split.test));

    r.forecasts = forecast_networks(networks, r.model, config.mu, config.mode,
                                    config.scheme);

    r.family_losses.push_back({family_name(config.family), r.test_mse});
    if (config.compare_families) {
        for (RegressorFamily f : {RegressorFamily::Svr, RegressorFamily::GaussianProcess,
                                  RegressorFamily::ElasticNet, RegressorFamily::Ridge}) {
            if (f == config.family) continue;
            RegressorSpec spec;
            spec.family = f;
            spec.max_train_points = config.max_train_points;
            FittedModel m = fit(r.split.train, spec);
            std::vector<double> p;
            p.reserve(r.split.test.tuples.size());
            for (const auto& t : r.split.test.tuples) p.push_back(predict(m, t.features()));
            r.family_losses.push_back({family_name(f), mse(p, label_vector(r.split.test))});
        }
    }

    json metrics;
    metrics["format_version"] = 1;
    metrics["seed"] = config.seed;
    metrics["mu"] = config.mu;
    metrics["delta"] = config.delta;
    metrics["family"] = family_name(config.family);
    metrics["num_networks"] = networks.size();
    metrics["num_tuples"] = r.dataset.tuples.size();
    metrics["split_sizes"] = {r.split.train.tuples.size(),
                              r.split.validation.tuples.size(),
                              r.split.test.tuples.size()};
    metrics["validation_mse"] = r.tuned.validation_mse;
    metrics["test_mse"] = r.test_mse;
    metrics["best_spec"] = json::parse(spec_to_json_string(r.tuned.best_spec));
    json losses = json::object();
    for (const auto& [fam, loss] : r.family_losses) losses[fam] = loss;
    metrics["family_test_mse"] = losses;
    r.metrics_json = metrics.dump(2);
    return r;
}

std::string forecasts_to_csv(const std::vector<Forecast>& forecasts) {
    std::ostringstream out;
    out << "ego_id,dimension,last_observed,forecast\n";
    out.precision(17);
    for (const auto& f : forecasts) {
        out << f.ego_id << ',' << dimension_name(f.dimension) << ',' << f.last_observed
            << ',' << f.forecast << '\n';
    }
    return out.str();
}

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

PipelineResult run_pipeline_files(const RunConfig& config) {
    namespace fs = std::filesystem;
    std::vector<EgoNetwork> networks =
        load_trajectories(config.input_path, config.input_format, config.interpolate);

    PipelineResult r = run_pipeline(networks, config);

    fs::create_directories(fs::path(config.out_dir) / "plots");
    auto out_path = [&](const std::string& name) {
        return (fs::path(config.out_dir) / name).string();
    };

    std::map<std::string, std::string> artifacts;
    artifacts["dataset.csv"] = dataset_to_csv(r.dataset);
    artifacts["best_spec.json"] = spec_to_json_string(r.tuned.best_spec);
    artifacts["model.json"] = model_to_json(r.model);
    artifacts["metrics.json"] = r.metrics_json;
    artifacts["forecasts.csv"] = forecasts_to_csv(r.forecasts);
    artifacts["plots/hyperparam_variation.csv"] = plot_hyperparam_variation(r.tuned.history);
    artifacts["plots/model_loss.csv"] = plot_model_loss(r.family_losses);
    {
        std::vector<double> actual, predicted;
        for (const auto& t : r.split.test.tuples) {
            actual.push_back(t.sigma_label);
            predicted.push_back(predict(r.model, t.features()));
        }
        artifacts["plots/actual_vs_predicted.csv"] =
            plot_actual_vs_predicted(actual, predicted);
    }

    json manifest;
    manifest["format_version"] = 1;
    manifest["seed"] = config.seed;
    manifest["mu"] = config.mu;
    manifest["delta"] = config.delta;
    manifest["family"] = family_name(config.family);
    manifest["input"] = config.input_path;
    manifest["created_at"] = static_cast<long long>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    json files = json::object();
    for (const auto& [name, content] : artifacts) {
        write_file(out_path(name), content);
        files[name] = content_hash(content);
    }
    manifest["artifacts"] = files;
    write_file(out_path("manifest.json"), manifest.dump(2));
    return r;
}

}  // namespace bcm
