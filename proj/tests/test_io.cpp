#include <doctest.h>

#include <cmath>

#include "bcm/io.hpp"

using namespace bcm;

namespace {

std::string tiny_csv() {
    std::string csv = "ego_id,user_id,segment,dimension,score\n";
    for (int seg = 0; seg < 3; ++seg) {
        for (const char* uid : {"e1", "a1", "a2"}) {
            for (ValueDimension d : kAllDimensions) {
                csv += std::string("e1,") + uid + "," + std::to_string(seg) + "," +
                       dimension_name(d) + ",0.5\n";
            }
        }
    }
    return csv;
}

}  // namespace

TEST_CASE("well-formed CSV loads one network") {
    auto nets = networks_from_csv(tiny_csv());
    REQUIRE(nets.size() == 1);
    CHECK(nets[0].ego_id == "e1");
    CHECK(nets[0].alter_ids == std::vector<std::string>{"a1", "a2"});
    CHECK(nets[0].num_segments() == 3);
}

TEST_CASE("out-of-range score is rejected naming the line") {
    std::string csv = tiny_csv() + "e1,a1,3,hedonism,1.5\n";
    try {
        networks_from_csv(csv);
        FAIL("expected a DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("out of [0,1]") != std::string::npos);
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("duplicate (user, segment, dimension) row is rejected") {
    std::string csv = tiny_csv() + "e1,a1,0,hedonism,0.4\n";
    CHECK_THROWS_AS(networks_from_csv(csv), DataError);
}

TEST_CASE("a missing segment is an error unless interpolation is requested") {
    std::string csv = "ego_id,user_id,segment,dimension,score\n";
    auto add = [&](const char* uid, int seg, double score) {
        for (ValueDimension d : kAllDimensions) {
            csv += std::string("e,") + uid + "," + std::to_string(seg) + "," +
                   dimension_name(d) + "," + std::to_string(score) + "\n";
        }
    };
    add("e", 0, 0.2);
    add("e", 1, 0.3);
    add("e", 2, 0.4);
    add("a", 0, 0.2);
    add("a", 2, 0.4);  // gap at segment 1
    CHECK_THROWS_AS(networks_from_csv(csv, false), DataError);

    auto nets = networks_from_csv(csv, true);
    REQUIRE(nets.size() == 1);
    CHECK(nets[0].trajectories[1][1][ValueDimension::Hedonism] == doctest::Approx(0.3));
}

TEST_CASE("interpolate_gaps fills interior gaps linearly") {
    EgoNetwork net;
    net.ego_id = "e";
    net.alter_ids = {"a"};
    double nan = std::nan("");
    net.trajectories = {
        {ValueProfile::uniform(0.0), ValueProfile::uniform(nan),
         ValueProfile::uniform(nan), ValueProfile::uniform(0.3)},
        {ValueProfile::uniform(0.2), ValueProfile::uniform(nan),
         ValueProfile::uniform(0.4), ValueProfile::uniform(0.4)},
    };
    auto out = interpolate_gaps(net);
    CHECK(out.trajectories[0][1][ValueDimension::Hedonism] == doctest::Approx(0.1));
    CHECK(out.trajectories[0][2][ValueDimension::Hedonism] == doctest::Approx(0.2));
    CHECK(out.trajectories[1][1][ValueDimension::Hedonism] == doctest::Approx(0.3));
}

TEST_CASE("interpolate_gaps is the identity without gaps") {
    auto nets = networks_from_csv(tiny_csv());
    auto out = interpolate_gaps(nets[0]);
    CHECK(out.trajectories == nets[0].trajectories);
}

TEST_CASE("boundary gaps cannot be interpolated") {
    EgoNetwork net;
    net.ego_id = "e";
    net.alter_ids = {"a"};
    double nan = std::nan("");
    net.trajectories = {
        {ValueProfile::uniform(nan), ValueProfile::uniform(0.3)},
        {ValueProfile::uniform(0.2), ValueProfile::uniform(0.4)},
    };
    CHECK_THROWS_AS(interpolate_gaps(net), DataError);
}

TEST_CASE("trajectory CSV and JSON round-trip") {
    SynthSpec spec;
    spec.num_networks = 3;
    spec.alters_per_network = 2;
    spec.num_segments = 4;
    spec.noise_stdev = 0.01;
    spec.seed = 31;
    auto corpus = generate_synthetic(spec);

    auto csv_back = networks_from_csv(networks_to_csv(corpus.networks));
    auto json_back = networks_from_json(networks_to_json(corpus.networks));
    REQUIRE(csv_back.size() == 3);
    REQUIRE(json_back.size() == 3);
    for (std::size_t n = 0; n < 3; ++n) {
        CHECK(csv_back[n].ego_id == corpus.networks[n].ego_id);
        CHECK(csv_back[n].trajectories == corpus.networks[n].trajectories);
        CHECK(json_back[n].trajectories == corpus.networks[n].trajectories);
    }
}

TEST_CASE("sigma dataset CSV round-trips") {
    SynthSpec spec;
    spec.num_networks = 2;
    spec.alters_per_network = 2;
    spec.num_segments = 3;
    spec.seed = 8;
    auto corpus = generate_synthetic(spec);
    auto d = build_dataset(corpus.networks, 0.4, 0.01);
    auto back = dataset_from_csv(dataset_to_csv(d));
    REQUIRE(back.tuples.size() == d.tuples.size());
    for (std::size_t i = 0; i < d.tuples.size(); ++i) {
        CHECK(back.tuples[i].v_i_t == d.tuples[i].v_i_t);
        CHECK(back.tuples[i].sigma_label == d.tuples[i].sigma_label);
        CHECK(back.tuples[i].ego_id == d.tuples[i].ego_id);
    }
}

TEST_CASE("ground truth CSV round-trips and stays within bounds") {
    SynthSpec spec;
    spec.num_networks = 20;
    spec.sigma = {false, 0, 0.1, 0.9};
    spec.seed = 5;
    auto corpus = generate_synthetic(spec);
    for (const auto& g : corpus.ground_truth) {
        CHECK(g.true_sigma >= 0.1);
        CHECK(g.true_sigma <= 0.9);
    }
    auto back = ground_truth_from_csv(ground_truth_to_csv(corpus.ground_truth));
    REQUIRE(back.size() == 20);
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].true_sigma == corpus.ground_truth[i].true_sigma);
    }
}

TEST_CASE("synthetic generation is deterministic given the seed") {
    SynthSpec spec;
    spec.num_networks = 4;
    spec.noise_stdev = 0.02;
    spec.seed = 1234;
    auto a = generate_synthetic(spec);
    auto b = generate_synthetic(spec);
    CHECK(networks_to_csv(a.networks) == networks_to_csv(b.networks));
    CHECK(ground_truth_to_csv(a.ground_truth) == ground_truth_to_csv(b.ground_truth));
}

TEST_CASE("noiseless synthetic trajectories invert exactly through labeling") {
    SynthSpec spec;
    spec.num_networks = 5;
    spec.alters_per_network = 1;  // single alter: transitions are pure pair updates
    spec.num_segments = 10;
    spec.sigma = {false, 0, 0.2, 0.8};
    spec.noise_stdev = 0.0;
    spec.seed = 77;
    auto corpus = generate_synthetic(spec);
    auto d = build_dataset(corpus.networks, spec.true_mu, 0.01);
    for (const auto& t : d.tuples) {
        double delta_v = std::abs(t.v_j_t - t.v_i_t);
        if (t.v_i_next != t.v_i_t) {
            // interaction happened: label is exactly delta + margin
            CHECK(t.sigma_label == std::min(delta_v + 0.01, 1.0));
            // and the labeled threshold reproduces the transition bit-exactly
            CHECK(bcm_pair_update(t.v_i_t, t.v_j_t, {t.mu, t.sigma_label}) == t.v_i_next);
        }
    }
}

TEST_CASE("noiseless symmetric consensus matches the dynamics closed form") {
    SynthSpec spec;
    spec.num_networks = 1;
    spec.alters_per_network = 1;
    spec.num_segments = 8;
    spec.sigma = {true, 1.0, 0, 0};
    spec.mode = InteractionMode::Symmetric;
    spec.seed = 15;
    auto corpus = generate_synthetic(spec);
    const auto& net = corpus.networks[0];
    for (ValueDimension dim : kAllDimensions) {
        double d0 = std::abs(net.trajectories[1][0][dim] - net.trajectories[0][0][dim]);
        for (std::size_t s = 0; s < net.num_segments(); ++s) {
            double ds = std::abs(net.trajectories[1][s][dim] - net.trajectories[0][s][dim]);
            CHECK(ds == doctest::Approx(d0 * std::pow(0.2, s)).epsilon(1e-9));
        }
    }
}

TEST_CASE("plot data layouts") {
    CHECK(plot_hyperparam_variation({0.5, 0.4, 0.4}) ==
          "generation,best_fitness\n1,0.5\n2,0.4\n3,0.4\n");
    auto loss = plot_model_loss({{"svr", 0.001}, {"ridge", 0.02}});
    CHECK(loss == "family,mse\nsvr,0.001\nridge,0.02\n");
    auto avp = plot_actual_vs_predicted({0.5, 0.25}, {0.5, 0.25});
    CHECK(avp == "index,actual,predicted\n0,0.5,0.5\n1,0.25,0.25\n");
    CHECK_THROWS_AS(plot_model_loss({}), DataError);
    CHECK_THROWS_AS(plot_actual_vs_predicted({}, {}), DataError);
}
