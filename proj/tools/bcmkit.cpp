// Command-line front end for the value-dynamics toolkit.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcm/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    double mu = 0.4;
    double delta = 0.01;
};

void apply_config_file(bcm::RunConfig& cfg, const std::string& path) {
    json j = json::parse(bcm::read_file(path));
    if (j.contains("input")) cfg.input_path = j.at("input");
    if (j.contains("format")) cfg.input_format = j.at("format");
    if (j.contains("out")) cfg.out_dir = j.at("out");
    if (j.contains("interpolate")) cfg.interpolate = j.at("interpolate");
    if (j.contains("mu")) cfg.mu = j.at("mu");
    if (j.contains("delta")) cfg.delta = j.at("delta");
    if (j.contains("seed")) cfg.seed = j.at("seed");
    if (j.contains("fractions")) {
        auto f = j.at("fractions").get<std::vector<double>>();
        if (f.size() != 3) throw bcm::DataError("fractions must have 3 entries");
        cfg.split_fractions = {f[0], f[1], f[2]};
    }
    if (j.contains("family")) cfg.family = bcm::parse_family(j.at("family"));
    if (j.contains("mode")) cfg.mode = bcm::parse_mode(j.at("mode"));
    if (j.contains("scheme")) cfg.scheme = bcm::parse_scheme(j.at("scheme"));
    if (j.contains("pso")) cfg.pso = bcm::pso_config_from_json(j.at("pso").dump());
    if (j.contains("search_space")) {
        cfg.space = bcm::search_space_from_json(j.at("search_space").dump());
    }
    if (j.contains("max_train_points")) {
        if (j.at("max_train_points").is_null()) {
            cfg.max_train_points = std::nullopt;
        } else {
            cfg.max_train_points = j.at("max_train_points").get<std::size_t>();
        }
    }
    if (j.contains("compare_families")) cfg.compare_families = j.at("compare_families");
}

bcm::RunConfig make_config(const GlobalOpts& g) {
    bcm::RunConfig cfg;
    if (!g.config_path.empty()) apply_config_file(cfg, g.config_path);
    cfg.out_dir = g.out_dir;
    cfg.seed = g.seed;
    cfg.mu = g.mu;
    cfg.delta = g.delta;
    return cfg;
}

void ensure_out(const std::string& dir) { fs::create_directories(dir); }

std::vector<bcm::EgoNetwork> load_input(const std::string& path, const std::string& format,
                                        bool interpolate) {
    auto nets = bcm::load_trajectories(path, format, interpolate);
    if (nets.empty()) throw bcm::DataError("no networks loaded");
    return nets;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded-confidence value dynamics toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON run configuration");
    app.add_option("--seed", g.seed, "RNG seed");
    app.add_option("--out", g.out_dir, "output directory");
    app.add_option("--mu", g.mu, "convergence factor");
    app.add_option("--delta", g.delta, "labeling margin");

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    int networks = 10, alters = 5, segments = 20;
    double noise = 0.0, sigma_fixed = -1, sigma_lo = 0.1, sigma_hi = 0.9;
    std::string synth_mode = "ego-only", synth_scheme = "sequential";
    synth->add_option("--networks", networks);
    synth->add_option("--alters", alters);
    synth->add_option("--segments", segments);
    synth->add_option("--noise", noise);
    synth->add_option("--sigma", sigma_fixed, "fixed true sigma");
    synth->add_option("--sigma-lo", sigma_lo);
    synth->add_option("--sigma-hi", sigma_hi);
    synth->add_option("--mode", synth_mode);
    synth->add_option("--scheme", synth_scheme);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run BCM influence steps");
    std::string sim_input, sim_format = "csv", sim_mode = "ego-only",
                sim_scheme = "sequential";
    int sim_steps = 10;
    double sim_sigma = 0.5, sim_tolerance = 1e-6;
    simulate->add_option("--input", sim_input)->required();
    simulate->add_option("--format", sim_format);
    simulate->add_option("--steps", sim_steps);
    simulate->add_option("--sigma", sim_sigma);
    simulate->add_option("--mode", sim_mode);
    simulate->add_option("--scheme", sim_scheme);
    simulate->add_option("--tolerance", sim_tolerance);

    // label
    auto* label = app.add_subcommand("label", "build the sigma dataset");
    std::string label_input, label_format = "csv";
    bool label_interp = false;
    label->add_option("--input", label_input)->required();
    label->add_option("--format", label_format);
    label->add_flag("--interpolate", label_interp);

    // tune
    auto* tune = app.add_subcommand("tune", "PSO hyperparameter search");
    std::string tune_dataset, tune_family = "svr";
    tune->add_option("--dataset", tune_dataset)->required();
    tune->add_option("--family", tune_family);

    // fit
    auto* fitcmd = app.add_subcommand("fit", "fit a regressor from a spec");
    std::string fit_dataset, fit_spec;
    fitcmd->add_option("--dataset", fit_dataset)->required();
    fitcmd->add_option("--spec", fit_spec)->required();

    // forecast
    auto* forecast = app.add_subcommand("forecast", "next-segment ego forecasts");
    std::string fc_input, fc_format = "csv", fc_model, fc_scheme = "sequential";
    forecast->add_option("--input", fc_input)->required();
    forecast->add_option("--format", fc_format);
    forecast->add_option("--model", fc_model)->required();
    forecast->add_option("--scheme", fc_scheme);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "MSE of a model on a dataset");
    std::string ev_dataset, ev_model;
    evaluate->add_option("--dataset", ev_dataset)->required();
    evaluate->add_option("--model", ev_model)->required();

    // plot-data
    auto* plot = app.add_subcommand("plot-data", "emit long-format plot CSVs");
    std::string plot_kind, plot_input, plot_model;
    plot->add_option("--kind", plot_kind, "hyperparam-variation | model-loss | actual-vs-predicted")
        ->required();
    plot->add_option("--input", plot_input)->required();
    plot->add_option("--model", plot_model, "model JSON (actual-vs-predicted)");

    // pipeline
    auto* pipeline = app.add_subcommand("pipeline", "full label/tune/fit/forecast run");
    std::string pipe_input, pipe_format = "csv", pipe_family = "svr";
    bool pipe_interp = false;
    pipeline->add_option("--input", pipe_input)->required();
    pipeline->add_option("--format", pipe_format);
    pipeline->add_option("--family", pipe_family);
    pipeline->add_flag("--interpolate", pipe_interp);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        ensure_out(g.out_dir);
        auto out_path = [&](const std::string& name) {
            return (fs::path(g.out_dir) / name).string();
        };

        if (synth->parsed()) {
            bcm::SynthSpec spec;
            spec.num_networks = networks;
            spec.alters_per_network = alters;
            spec.num_segments = segments;
            spec.true_mu = g.mu;
            spec.noise_stdev = noise;
            spec.seed = g.seed;
            spec.mode = bcm::parse_mode(synth_mode);
            spec.scheme = bcm::parse_scheme(synth_scheme);
            if (sigma_fixed >= 0) {
                spec.sigma = {true, sigma_fixed, 0, 0};
            } else {
                spec.sigma = {false, 0, sigma_lo, sigma_hi};
            }
            auto corpus = bcm::generate_synthetic(spec);
            bcm::write_file(out_path("trajectories.csv"),
                            bcm::networks_to_csv(corpus.networks));
            bcm::write_file(out_path("ground_truth.csv"),
                            bcm::ground_truth_to_csv(corpus.ground_truth));
            std::cout << "wrote " << corpus.networks.size() << " networks to "
                      << g.out_dir << "\n";
        } else if (simulate->parsed()) {
            auto nets = load_input(sim_input, sim_format, false);
            bcm::BcmParams params{g.mu, sim_sigma};
            auto mode = bcm::parse_mode(sim_mode);
            auto scheme = bcm::parse_scheme(sim_scheme);
            std::ostringstream all;
            bool first = true;
            for (const auto& net : nets) {
                auto traces = bcm::simulate(net, params, mode, scheme, sim_steps, g.seed);
                std::string csv = bcm::traces_to_csv(traces, net);
                if (!first) csv = csv.substr(csv.find('\n') + 1);  // drop repeated header
                all << csv;
                first = false;
                auto [ok, spread] = bcm::converged(traces, sim_tolerance);
                std::cout << net.ego_id << ": spread " << spread
                          << (ok ? " (converged)" : "") << "\n";
            }
            bcm::write_file(out_path("trace.csv"), all.str());
        } else if (label->parsed()) {
            auto nets = load_input(label_input, label_format, label_interp);
            auto dataset = bcm::build_dataset(nets, g.mu, g.delta);
            dataset.source = label_input;
            for (const auto& w : dataset.warnings) std::cerr << "warning: " << w << "\n";
            if (dataset.tuples.empty()) throw bcm::DataError("labeling produced an empty dataset");
            bcm::write_file(out_path("dataset.csv"), bcm::dataset_to_csv(dataset));
            std::cout << "wrote " << dataset.tuples.size() << " tuples\n";
        } else if (tune->parsed()) {
            auto dataset = bcm::dataset_from_csv(bcm::read_file(tune_dataset));
            bcm::RunConfig cfg = make_config(g);
            cfg.family = bcm::parse_family(tune_family);
            auto split = bcm::split_dataset(dataset, cfg.split_fractions, cfg.seed);
            auto space = cfg.space ? *cfg.space : bcm::default_search_space(cfg.family);
            bcm::PsoConfig pso = cfg.pso;
            pso.seed = cfg.seed;
            const auto& val = split.validation.tuples.empty() ? split.test : split.validation;
            auto tuned = bcm::tune_regressor(split.train, val, cfg.family, space, pso,
                                             cfg.max_train_points);
            bcm::write_file(out_path("best_spec.json"),
                            bcm::spec_to_json_string(tuned.best_spec));
            bcm::write_file(out_path("pso_history.csv"),
                            bcm::history_to_csv(tuned.history));
            std::cout << "validation MSE " << tuned.validation_mse << "\n";
        } else if (fitcmd->parsed()) {
            auto dataset = bcm::dataset_from_csv(bcm::read_file(fit_dataset));
            auto spec = bcm::spec_from_json_string(bcm::read_file(fit_spec));
            auto model = bcm::fit(dataset, spec);
            bcm::write_file(out_path("model.json"), bcm::model_to_json(model));
            std::cout << "wrote model.json\n";
        } else if (forecast->parsed()) {
            auto nets = load_input(fc_input, fc_format, false);
            auto model = bcm::model_from_json(bcm::read_file(fc_model));
            auto fc = bcm::forecast_networks(nets, model, g.mu,
                                             bcm::InteractionMode::EgoOnly,
                                             bcm::parse_scheme(fc_scheme));
            bcm::write_file(out_path("forecasts.csv"), bcm::forecasts_to_csv(fc));
            std::cout << "wrote " << fc.size() << " forecasts\n";
        } else if (evaluate->parsed()) {
            auto dataset = bcm::dataset_from_csv(bcm::read_file(ev_dataset));
            auto model = bcm::model_from_json(bcm::read_file(ev_model));
            std::vector<double> preds;
            for (const auto& t : dataset.tuples) preds.push_back(bcm::predict(model, t.features()));
            double m = bcm::mse(preds, bcm::label_vector(dataset));
            json out;
            out["format_version"] = 1;
            out["mse"] = m;
            out["count"] = dataset.tuples.size();
            bcm::write_file(out_path("metrics.json"), out.dump(2));
            std::cout << "mse " << m << "\n";
        } else if (plot->parsed()) {
            std::string csv;
            if (plot_kind == "hyperparam-variation") {
                // input: pso_history.csv (re-emitted in plot layout)
                auto text = bcm::read_file(plot_input);
                std::istringstream in(text);
                std::string line;
                std::getline(in, line);
                std::vector<double> history;
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    history.push_back(std::stod(line.substr(line.find(',') + 1)));
                }
                csv = bcm::plot_hyperparam_variation(history);
            } else if (plot_kind == "model-loss") {
                json j = json::parse(bcm::read_file(plot_input));
                std::vector<std::pair<std::string, double>> losses;
                for (auto it = j.at("family_test_mse").begin();
                     it != j.at("family_test_mse").end(); ++it) {
                    losses.push_back({it.key(), it.value().get<double>()});
                }
                csv = bcm::plot_model_loss(losses);
            } else if (plot_kind == "actual-vs-predicted") {
                if (plot_model.empty()) throw bcm::DataError("--model required for this kind");
                auto dataset = bcm::dataset_from_csv(bcm::read_file(plot_input));
                auto model = bcm::model_from_json(bcm::read_file(plot_model));
                std::vector<double> actual, predicted;
                for (const auto& t : dataset.tuples) {
                    actual.push_back(t.sigma_label);
                    predicted.push_back(bcm::predict(model, t.features()));
                }
                csv = bcm::plot_actual_vs_predicted(actual, predicted);
            } else {
                throw bcm::DataError("unknown plot kind: '" + plot_kind + "'");
            }
            bcm::write_file(out_path(plot_kind + ".csv"), csv);
            std::cout << "wrote " << plot_kind << ".csv\n";
        } else if (pipeline->parsed()) {
            bcm::RunConfig cfg = make_config(g);
            cfg.input_path = pipe_input;
            cfg.input_format = pipe_format;
            cfg.family = bcm::parse_family(pipe_family);
            cfg.interpolate = pipe_interp;
            auto r = bcm::run_pipeline_files(cfg);
            std::cout << "test MSE " << r.test_mse << "\n";
        }
    } catch (const bcm::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const bcm::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}
