#include <doctest.h>

#include <cmath>
#include <random>

#include "bcm/pso.hpp"

using namespace bcm;

namespace {

SearchSpace box2d(double lo, double hi) {
    SearchSpace s;
    s.dims.push_back({"x", DimensionKind::Continuous, lo, hi, {}, "", ""});
    s.dims.push_back({"y", DimensionKind::Continuous, lo, hi, {}, "", ""});
    return s;
}

double sphere(const std::vector<double>& p) {
    double s = 0;
    for (double v : p) s += v * v;
    return s;
}

}  // namespace

TEST_CASE("config invariants") {
    PsoConfig c;
    c.num_particles = 0;
    CHECK_THROWS_AS(c.require_valid(), DataError);
    c = PsoConfig{};
    c.inertia = 0.0;
    CHECK_THROWS_AS(c.require_valid(), DataError);
    CHECK_NOTHROW(PsoConfig{}.require_valid());
}

TEST_CASE("initial sampling is reproducible and within bounds") {
    SearchSpace space = box2d(-3, 7);
    PsoConfig config;
    config.seed = 12;
    auto a = sample_initial(space, config);
    auto b = sample_initial(space, config);
    REQUIRE(a.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].position == b[i].position);
        CHECK(a[i].velocity == b[i].velocity);
        for (std::size_t d = 0; d < 2; ++d) {
            CHECK(a[i].position[d] >= -3);
            CHECK(a[i].position[d] <= 7);
            CHECK(std::abs(a[i].velocity[d]) <= 5);
        }
    }
}

TEST_CASE("positions stay within bounds across random spaces and steps") {
    std::mt19937_64 meta(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        double lo = -10 * uni(meta);
        double hi = lo + 0.5 + 10 * uni(meta);
        SearchSpace space = box2d(lo, hi);
        space.dims.push_back({"n", DimensionKind::Integer, std::floor(lo),
                              std::ceil(hi), {}, "", ""});
        PsoConfig config;
        config.seed = trial;
        config.num_particles = 8;
        auto particles = sample_initial(space, config);
        SwarmBest best;
        for (int g = 1; g <= 10; ++g) {
            best = step(particles, space, config, sphere, g, best);
            for (const auto& p : particles) {
                for (std::size_t d = 0; d < 2; ++d) {
                    REQUIRE(p.position[d] >= lo);
                    REQUIRE(p.position[d] <= hi);
                }
                REQUIRE(p.position[2] == std::round(p.position[2]));
            }
        }
    }
}

TEST_CASE("pure inertia drift when phi1 = phi2 = 0") {
    SearchSpace space = box2d(-100, 100);
    PsoConfig config;
    config.num_particles = 1;
    config.phi1 = 0;
    config.phi2 = 0;
    config.inertia = 1.0;
    auto particles = sample_initial(space, config);
    particles[0].position = {3.0, -8.0};
    particles[0].velocity = {1.5, -2.5};
    auto p0 = particles[0].position;
    auto v0 = particles[0].velocity;
    SwarmBest best;
    best = step(particles, space, config, sphere, 1, best);
    for (std::size_t d = 0; d < 2; ++d) {
        CHECK(particles[0].position[d] == doctest::Approx(p0[d] + v0[d]));
        CHECK(particles[0].velocity[d] == doctest::Approx(v0[d]));
    }
}

TEST_CASE("a particle at its own best with zero velocity is stationary") {
    SearchSpace space = box2d(-5, 5);
    PsoConfig config;
    config.num_particles = 1;
    auto particles = sample_initial(space, config);
    particles[0].position = {1.0, -2.0};
    particles[0].velocity = {0.0, 0.0};
    particles[0].best_position = particles[0].position;
    particles[0].best_fitness = sphere(particles[0].position);
    SwarmBest best{particles[0].position, particles[0].best_fitness};
    best = step(particles, space, config, sphere, 1, best);
    CHECK(particles[0].position == std::vector<double>{1.0, -2.0});
}

TEST_CASE("optimizer solves the 2-D sphere") {
    SearchSpace space = box2d(-5, 5);
    PsoConfig config;
    config.num_particles = 30;
    config.num_generations = 100;
    config.seed = 4;
    auto result = optimize(space, config, sphere);
    CHECK(result.best_fitness < 1e-3);
    CHECK(result.history.size() == 100);
}

TEST_CASE("history is non-increasing") {
    SearchSpace space = box2d(-5, 5);
    PsoConfig config;
    config.seed = 8;
    config.num_generations = 40;
    auto result = optimize(space, config, [](const std::vector<double>& p) {
        return std::sin(7 * p[0]) + std::cos(5 * p[1]) + p[0] * p[0];
    });
    for (std::size_t g = 1; g < result.history.size(); ++g) {
        CHECK(result.history[g] <= result.history[g - 1]);
    }
}

TEST_CASE("zero generations returns the best of the initial sample") {
    SearchSpace space = box2d(-5, 5);
    PsoConfig config;
    config.num_generations = 0;
    config.seed = 2;
    auto particles = sample_initial(space, config);
    double expected = std::numeric_limits<double>::infinity();
    for (const auto& p : particles) expected = std::min(expected, sphere(p.position));
    auto result = optimize(space, config, sphere);
    CHECK(result.best_fitness == expected);
    CHECK(result.history.size() == 1);
}

TEST_CASE("deterministic trajectories for identical inputs") {
    SearchSpace space = box2d(-5, 5);
    PsoConfig config;
    config.seed = 77;
    config.num_generations = 25;
    auto a = optimize(space, config, sphere);
    auto b = optimize(space, config, sphere);
    CHECK(a.best_position == b.best_position);
    CHECK(a.history == b.history);
}

TEST_CASE("non-finite fitness keeps the previous best and is diagnosed") {
    SearchSpace space = box2d(-5, 5);
    PsoConfig config;
    config.num_particles = 5;
    config.num_generations = 10;
    config.seed = 5;
    int calls = 0;
    auto result = optimize(space, config, [&](const std::vector<double>& p) {
        ++calls;
        if (calls % 3 == 0) return std::numeric_limits<double>::quiet_NaN();
        return sphere(p);
    });
    CHECK(std::isfinite(result.best_fitness));
    for (std::size_t g = 1; g < result.history.size(); ++g) {
        CHECK(result.history[g] <= result.history[g - 1]);
    }
}

TEST_CASE("conditional decoding drops inactive dimensions") {
    SearchSpace space = default_search_space(RegressorFamily::Svr);
    space.require_valid();
    std::vector<double> position(space.dims.size(), 0.0);
    position[0] = 1;  // kernel = linear
    position[3] = 42.0;
    auto params = decode_position(space, position);
    CHECK(params.count("kernel"));
    CHECK(std::get<std::string>(params.at("kernel")) == "linear");
    CHECK(params.count("c_linear"));
    CHECK(!params.count("gamma"));
    CHECK(!params.count("degree"));
    CHECK(!params.count("c_poly"));

    position[0] = 0;  // rbf
    params = decode_position(space, position);
    CHECK(params.count("gamma"));
    CHECK(params.count("c_rbf"));
    CHECK(!params.count("coef0"));
}

TEST_CASE("one-point search space returns that point") {
    SearchSpace space;
    space.dims.push_back({"only", DimensionKind::Categorical, 0, 0, {"fixed"}, "", ""});
    PsoConfig config;
    config.num_generations = 7;
    auto result = optimize(space, config,
                           [](const std::vector<double>&) { return 3.0; });
    CHECK(result.best_fitness == 3.0);
    CHECK(result.best_position == std::vector<double>{0.0});
}

TEST_CASE("search space validation catches bad bounds and activation rules") {
    SearchSpace s;
    s.dims.push_back({"x", DimensionKind::Continuous, 1.0, 1.0, {}, "", ""});
    CHECK_THROWS_AS(s.require_valid(), DataError);

    s.dims.clear();
    s.dims.push_back({"x", DimensionKind::Continuous, 0.0, 1.0, {}, "ghost", "on"});
    CHECK_THROWS_AS(s.require_valid(), DataError);
}

TEST_CASE("search space and config parse from JSON") {
    auto space = search_space_from_json(R"({
      "dimensions": [
        {"name": "kernel", "kind": "categorical", "choices": ["rbf", "linear"]},
        {"name": "gamma", "kind": "continuous", "lo": 1e-6, "hi": 50,
         "active_when": {"dim": "kernel", "choice": "rbf"}},
        {"name": "degree", "kind": "integer", "lo": 2, "hi": 5}
      ]})");
    CHECK(space.dims.size() == 3);
    CHECK(space.dims[1].active_when_dim == "kernel");

    auto config = pso_config_from_json(R"({
      "num_particles": 10, "num_generations": 15,
      "phi1": 1.5, "phi2": 2.0, "max_speed": null, "seed": 3})");
    CHECK(config.num_particles == 10);
    CHECK(config.num_generations == 15);
    CHECK(config.phi1 == 1.5);
    CHECK(config.phi2 == 2.0);
    CHECK(!config.max_speed);
}

TEST_CASE("tuned spec never carries an inactive dimension's value") {
    // decode/spec_from_params: poly decode must not read gamma
    SearchSpace space = default_search_space(RegressorFamily::Svr);
    std::vector<double> position(space.dims.size(), 0.0);
    position[0] = 2;  // poly
    position[5] = 3;  // degree
    position[6] = 0.5;
    position[4] = 5000;
    auto spec = spec_from_params(RegressorFamily::Svr, decode_position(space, position));
    CHECK(std::holds_alternative<PolynomialKernel>(spec.kernel));
    CHECK(std::get<PolynomialKernel>(spec.kernel).degree == 3);
    CHECK(spec.c == 5000);
}

TEST_CASE("convex budget contract: final best well below initial best") {
    SearchSpace space = box2d(-5, 5);
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        PsoConfig config;
        config.num_particles = 30;
        config.num_generations = 100;
        config.seed = seed;
        auto particles = sample_initial(space, config);
        double init_best = std::numeric_limits<double>::infinity();
        for (const auto& p : particles) init_best = std::min(init_best, sphere(p.position));
        auto result = optimize(space, config, sphere);
        if (result.best_fitness <= init_best * 1e-2) ++successes;
    }
    CHECK(successes == 5);
}
