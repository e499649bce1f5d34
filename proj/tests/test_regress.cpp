#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "bcm/io.hpp"
#include "bcm/regress.hpp"

using namespace bcm;

namespace {

// y = f(x) samples on a 1-D grid.
void linear_data(std::vector<std::vector<double>>& x, std::vector<double>& y,
                 double slope, int n = 11) {
    x.clear();
    y.clear();
    for (int i = 0; i < n; ++i) {
        double v = static_cast<double>(i) / (n - 1);
        x.push_back({v});
        y.push_back(slope * v);
    }
}

SigmaDataset synthetic_dataset(int networks, int segments, std::uint64_t seed) {
    SynthSpec spec;
    spec.num_networks = networks;
    spec.alters_per_network = 3;
    spec.num_segments = segments;
    spec.sigma = {false, 0, 0.1, 0.9};
    spec.seed = seed;
    auto corpus = generate_synthetic(spec);
    return build_dataset(corpus.networks, 0.4, 0.01);
}

}  // namespace

TEST_CASE("kernel_eval basics") {
    CHECK(kernel_eval(RbfKernel{3.0}, {0.2, 0.4}, {0.2, 0.4}) == 1.0);
    CHECK(kernel_eval(LinearKernel{}, {1, 2}, {3, 4}) == 11.0);
    CHECK(kernel_eval(PolynomialKernel{2, 0.0}, {1, 0}, {1, 0}) == 1.0);
    CHECK_THROWS_AS(kernel_eval(LinearKernel{}, {1, 2}, {1}), DataError);
}

TEST_CASE("rbf kernel decays with distance") {
    double near = kernel_eval(RbfKernel{1.0}, {0.0}, {0.1});
    double far = kernel_eval(RbfKernel{1.0}, {0.0}, {2.0});
    CHECK(near > far);
    CHECK(far == doctest::Approx(std::exp(-4.0)));
}

TEST_CASE("standardization round-trips") {
    std::vector<std::vector<double>> rows = {{0.1, 5.0}, {0.9, -2.0}, {0.4, 1.5}};
    auto s = Standardizer::fit(rows);
    for (const auto& r : rows) {
        auto back = s.invert(s.apply(r));
        for (std::size_t j = 0; j < r.size(); ++j) {
            CHECK(back[j] == doctest::Approx(r[j]).epsilon(1e-14));
        }
    }
}

TEST_CASE("linear SVR recovers y = 2x") {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    linear_data(x, y, 2.0);
    RegressorSpec spec;
    spec.family = RegressorFamily::Svr;
    spec.kernel = LinearKernel{};
    spec.c = 100;
    spec.epsilon = 0.01;
    auto m = fit_svr_xy(x, y, spec);
    for (const auto& xi : x) {
        CHECK(std::abs(m.evaluate(xi) - 2.0 * xi[0]) < 0.02);
    }
}

TEST_CASE("constant labels give a constant SVR predictor with no support vectors") {
    std::vector<std::vector<double>> x = {{0.1}, {0.5}, {0.9}};
    std::vector<double> y = {0.3, 0.3, 0.3};
    RegressorSpec spec;
    spec.family = RegressorFamily::Svr;
    spec.kernel = RbfKernel{1.0};
    auto m = fit_svr_xy(x, y, spec);
    CHECK(m.support_x.empty());
    CHECK(m.evaluate({0.42}) == doctest::Approx(0.3));
}

TEST_CASE("labels inside the epsilon tube give zero dual weights") {
    std::vector<std::vector<double>> x = {{0.0}, {0.5}, {1.0}};
    std::vector<double> y = {0.50, 0.505, 0.495};
    RegressorSpec spec;
    spec.family = RegressorFamily::Svr;
    spec.kernel = RbfKernel{1.0};
    spec.epsilon = 0.05;
    auto m = fit_svr_xy(x, y, spec);
    CHECK(m.support_x.empty());
    CHECK(m.evaluate({0.7}) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("SVR KKT residual is small at convergence") {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        double a = uni(rng), b = uni(rng);
        x.push_back({a, b});
        y.push_back(0.3 * a + 0.5 * b * b);
    }
    RegressorSpec spec;
    spec.family = RegressorFamily::Svr;
    spec.kernel = RbfKernel{2.0};
    spec.c = 10;
    auto m = fit_svr_xy(x, y, spec);
    CHECK(svr_kkt_residual(m, x, y) < 1e-3);
    for (double beta : m.dual_coef) CHECK(std::abs(beta) <= spec.c + 1e-12);
}

TEST_CASE("SVR prediction is invariant under duplicating a non-support point") {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    linear_data(x, y, 1.0, 9);
    RegressorSpec spec;
    spec.family = RegressorFamily::Svr;
    spec.kernel = LinearKernel{};
    spec.c = 50;
    spec.epsilon = 0.05;
    auto m1 = fit_svr_xy(x, y, spec);
    REQUIRE(m1.support_x.size() < x.size());
    // find a non-support training point and duplicate it
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto z = m1.standardizer.apply(x[i]);
        bool is_support = false;
        for (const auto& s : m1.support_x) {
            if (s == z) is_support = true;
        }
        if (is_support) continue;
        auto x2 = x;
        auto y2 = y;
        x2.push_back(x[i]);
        y2.push_back(y[i]);
        auto m2 = fit_svr_xy(x2, y2, spec);
        for (double q = 0.0; q <= 1.0; q += 0.25) {
            CHECK(m2.evaluate({q}) == doctest::Approx(m1.evaluate({q})).epsilon(5e-3));
        }
        break;
    }
}

TEST_CASE("elasticnet with alpha 0 matches least squares") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (int i = 0; i < 40; ++i) {
        double a = uni(rng), b = uni(rng);
        x.push_back({a, b});
        y.push_back(1.5 * a - 0.7 * b + 0.2);
    }
    RegressorSpec spec;
    spec.family = RegressorFamily::ElasticNet;
    spec.alpha = 0.0;
    spec.tol = 1e-10;
    auto m = fit_elasticnet_xy(x, y, spec);

    // independent normal-equations solution on the standardized design
    auto st = Standardizer::fit(x);
    Eigen::MatrixXd z(x.size(), 2);
    Eigen::VectorXd yc(x.size());
    double y_mean = 0;
    for (double v : y) y_mean += v;
    y_mean /= y.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto zi = st.apply(x[i]);
        z(i, 0) = zi[0];
        z(i, 1) = zi[1];
        yc(i) = y[i] - y_mean;
    }
    Eigen::VectorXd w = (z.transpose() * z).ldlt().solve(z.transpose() * yc);
    CHECK(m.weights[0] == doctest::Approx(w(0)).epsilon(1e-6));
    CHECK(m.weights[1] == doctest::Approx(w(1)).epsilon(1e-6));
}

TEST_CASE("huge alpha zeroes all elasticnet coefficients") {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    linear_data(x, y, 2.0);
    RegressorSpec spec;
    spec.family = RegressorFamily::ElasticNet;
    spec.alpha = 1e6;
    auto m = fit_elasticnet_xy(x, y, spec);
    CHECK(m.weights[0] == 0.0);
    CHECK(m.evaluate({0.3}) == doctest::Approx(1.0));  // label mean
}

TEST_CASE("lasso shrinks the slope strictly below the OLS slope") {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    linear_data(x, y, 2.0);
    RegressorSpec spec;
    spec.family = RegressorFamily::ElasticNet;
    spec.alpha = 0.1;
    spec.l1_ratio = 1.0;
    auto m = fit_elasticnet_xy(x, y, spec);
    // slope in standardized coords of the pure OLS fit
    RegressorSpec ols = spec;
    ols.alpha = 0.0;
    auto m0 = fit_elasticnet_xy(x, y, ols);
    CHECK(m.weights[0] < m0.weights[0]);
    CHECK(m.weights[0] > 0.0);
}

TEST_CASE("GP near-interpolates training points at tiny alpha") {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (int i = 0; i < 8; ++i) {
        double v = i / 7.0;
        x.push_back({v});
        y.push_back(std::sin(3 * v));
    }
    RegressorSpec spec;
    spec.family = RegressorFamily::GaussianProcess;
    spec.kernel = RbfKernel{5.0};
    spec.gp_alpha = 1e-10;
    auto m = fit_gp_xy(x, y, spec);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(std::abs(m.evaluate(x[i]) - y[i]) < 1e-6);
    }
}

TEST_CASE("GP reverts to the prior mean far from the data") {
    std::vector<std::vector<double>> x = {{0.4}, {0.5}, {0.6}};
    std::vector<double> y = {0.8, 0.9, 0.85};
    RegressorSpec spec;
    spec.family = RegressorFamily::GaussianProcess;
    spec.kernel = RbfKernel{10.0};
    spec.gp_alpha = 1e-8;
    spec.normalize_y = true;
    auto m = fit_gp_xy(x, y, spec);
    // far from data the normalized prediction decays to 0, i.e. y_mean
    CHECK(m.evaluate({100.0}) == doctest::Approx(m.y_mean).epsilon(1e-6));
}

TEST_CASE("two-point GP mean at the midpoint matches the 2x2 closed form") {
    std::vector<std::vector<double>> x = {{0.0}, {1.0}};
    std::vector<double> y = {0.2, 0.8};
    RegressorSpec spec;
    spec.family = RegressorFamily::GaussianProcess;
    spec.kernel = RbfKernel{1.0};
    spec.gp_alpha = 1e-9;
    spec.normalize_y = false;
    auto m = fit_gp_xy(x, y, spec);
    // standardized coords: z = +-1, so K12 = exp(-4), k*(mid) = exp(-1)
    double k12 = std::exp(-4.0);
    double a = 1.0 + 1e-9;
    // solve [a k; k a] w = y
    double det = a * a - k12 * k12;
    double w0 = (a * y[0] - k12 * y[1]) / det;
    double w1 = (a * y[1] - k12 * y[0]) / det;
    double expected = std::exp(-1.0) * (w0 + w1);
    CHECK(m.evaluate({0.5}) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("GP with huge alpha shrinks toward the prior mean") {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    linear_data(x, y, 1.0);
    RegressorSpec spec;
    spec.family = RegressorFamily::GaussianProcess;
    spec.kernel = RbfKernel{1.0};
    spec.normalize_y = true;
    spec.gp_alpha = 1e-2;
    auto small_alpha_dev = 0.0, big_alpha_dev = 0.0;
    auto m1 = fit_gp_xy(x, y, spec);
    spec.gp_alpha = 1e6;
    auto m2 = fit_gp_xy(x, y, spec);
    for (const auto& xi : x) {
        small_alpha_dev += std::abs(m1.evaluate(xi) - m1.y_mean);
        big_alpha_dev += std::abs(m2.evaluate(xi) - m2.y_mean);
    }
    CHECK(big_alpha_dev < 1e-3 * small_alpha_dev);
}

TEST_CASE("predict clamps to [0,1] and validates feature count") {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    linear_data(x, y, -1.0);  // negative targets
    RegressorSpec spec;
    spec.family = RegressorFamily::Ridge;
    spec.alpha = 1e-6;
    auto m = fit_ridge_xy(x, y, spec);
    CHECK(predict(m, {1.0}) == 0.0);  // raw would be -1
    CHECK_THROWS_AS(predict(m, {0.5, 0.5}), DataError);
}

TEST_CASE("mse basics") {
    CHECK(mse({1, 2}, {1, 2}) == 0.0);
    CHECK(mse({0, 0}, {1, 1}) == 1.0);
    CHECK(mse({0.1, 0.3}, {0.2, 0.2}) == doctest::Approx(0.01));
    CHECK(mse({0.3, 0.1}, {0.2, 0.2}) == doctest::Approx(0.01));  // permutation invariant
    CHECK_THROWS_AS(mse({}, {}), DataError);
}

TEST_CASE("SVR fit on noiseless BCM data predicts held-out labels well") {
    // single alter: every transition is a pure pair update, so labels are a
    // smooth function of the features away from the fixed gate boundary
    SynthSpec sspec;
    sspec.num_networks = 20;
    sspec.alters_per_network = 1;
    sspec.num_segments = 12;
    sspec.sigma = {true, 0.5, 0, 0};
    sspec.seed = 42;
    auto corpus = generate_synthetic(sspec);
    auto d = build_dataset(corpus.networks, 0.4, 0.01);
    auto split = split_dataset(d, {0.7, 0.0, 0.3}, 1);
    RegressorSpec spec;
    spec.family = RegressorFamily::Svr;
    spec.kernel = RbfKernel{2.0};
    spec.c = 50;
    auto m = fit_svr(split.train, spec);
    std::vector<double> preds;
    for (const auto& t : split.test.tuples) preds.push_back(predict(m, t.features()));
    CHECK(mse(preds, label_vector(split.test)) < 1e-3);
}

TEST_CASE("cross_validate produces folds x iterations scores") {
    auto d = synthetic_dataset(10, 5, 9);
    RegressorSpec spec;
    spec.family = RegressorFamily::Ridge;
    auto cv = cross_validate(d, spec, 5, 3, 123);
    CHECK(cv.fold_mses.size() == 15);
    double mean = 0;
    for (double v : cv.fold_mses) mean += v;
    CHECK(cv.mean_mse == doctest::Approx(mean / 15));
}

TEST_CASE("cross_validate holds each ego out exactly once per iteration") {
    auto d = synthetic_dataset(2, 5, 4);
    RegressorSpec spec;
    spec.family = RegressorFamily::Ridge;
    auto cv = cross_validate(d, spec, 2, 1, 5);
    CHECK(cv.fold_mses.size() == 2);
    CHECK_THROWS_AS(cross_validate(d, spec, 3, 1, 5), DataError);
}

TEST_CASE("model JSON round-trips predictions exactly") {
    auto d = synthetic_dataset(6, 6, 77);
    for (RegressorFamily f : {RegressorFamily::Svr, RegressorFamily::GaussianProcess,
                              RegressorFamily::ElasticNet, RegressorFamily::Ridge}) {
        RegressorSpec spec;
        spec.family = f;
        auto m = fit(d, spec);
        auto m2 = model_from_json(model_to_json(m));
        for (int i = 0; i < 10; ++i) {
            const auto& t = d.tuples[i * 7];
            CHECK(predict(m2, t.features()) == predict(m, t.features()));
        }
    }
}
