#pragma once
// From-scratch regressors for predicting sigma from transition features:
// epsilon-SVR (dual coordinate ascent), exact Gaussian-process regression,
// ElasticNet coordinate descent, and a ridge baseline.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bcm/labeling.hpp"

namespace bcm {

struct LinearKernel {};
struct RbfKernel {
    double gamma = 1.0;
};
struct PolynomialKernel {
    int degree = 2;
    double coef0 = 0.0;
};
using Kernel = std::variant<LinearKernel, RbfKernel, PolynomialKernel>;

std::string kernel_name(const Kernel& k);
double kernel_eval(const Kernel& k, const std::vector<double>& x,
                   const std::vector<double>& y);

enum class RegressorFamily { Svr, GaussianProcess, ElasticNet, Ridge };

RegressorFamily parse_family(const std::string& name);
const char* family_name(RegressorFamily f);

struct RegressorSpec {
    RegressorFamily family = RegressorFamily::Svr;

    // SVR / GP
    Kernel kernel = RbfKernel{10.0};
    double c = 10.0;           // SVR regularization
    double epsilon = 0.01;     // SVR tube width
    double gp_alpha = 1e-6;    // GP diagonal jitter / noise
    bool normalize_y = true;   // GP target normalization

    // ElasticNet / Ridge
    double alpha = 0.01;
    double l1_ratio = 0.5;
    double tol = 1e-4;

    // Kernel fits subsample the training set above this size (seeded,
    // deterministic). nullopt = use everything.
    std::optional<std::size_t> max_train_points;

    void require_valid() const;
};

struct Standardizer {
    std::vector<double> mean;
    std::vector<double> scale;

    std::vector<double> apply(const std::vector<double>& x) const;
    std::vector<double> invert(const std::vector<double>& z) const;
    static Standardizer fit(const std::vector<std::vector<double>>& rows);
};

struct FittedModel {
    RegressorSpec spec;
    Standardizer standardizer;

    // SVR: support points (standardized) and dual coefficients.
    std::vector<std::vector<double>> support_x;
    std::vector<double> dual_coef;
    double bias = 0.0;

    // GP: training inputs (standardized) + weight vector alpha.
    std::vector<std::vector<double>> gp_x;
    std::vector<double> gp_weights;
    double y_mean = 0.0;
    double y_scale = 1.0;

    // Linear families.
    std::vector<double> weights;
    double intercept = 0.0;

    // Unclamped prediction for an unstandardized feature vector.
    double evaluate(const std::vector<double>& x) const;
};

// Training matrix views of a SigmaDataset.
std::vector<std::vector<double>> feature_matrix(const SigmaDataset& d);
std::vector<double> label_vector(const SigmaDataset& d);

FittedModel fit_svr(const SigmaDataset& train, const RegressorSpec& spec);
FittedModel fit_elasticnet(const SigmaDataset& train, const RegressorSpec& spec);
FittedModel fit_gp(const SigmaDataset& train, const RegressorSpec& spec);
FittedModel fit_ridge(const SigmaDataset& train, const RegressorSpec& spec);
FittedModel fit(const SigmaDataset& train, const RegressorSpec& spec);

// Raw fits on arbitrary (X, y); the dataset overloads wrap these.
FittedModel fit_svr_xy(const std::vector<std::vector<double>>& x,
                       const std::vector<double>& y, const RegressorSpec& spec);
FittedModel fit_elasticnet_xy(const std::vector<std::vector<double>>& x,
                              const std::vector<double>& y,
                              const RegressorSpec& spec);
FittedModel fit_gp_xy(const std::vector<std::vector<double>>& x,
                      const std::vector<double>& y, const RegressorSpec& spec);
FittedModel fit_ridge_xy(const std::vector<std::vector<double>>& x,
                         const std::vector<double>& y, const RegressorSpec& spec);

// Deterministic prediction, clamped to [0,1] (sigma lives on that scale).
double predict(const FittedModel& m, const std::vector<double>& x);

double mse(const std::vector<double>& predictions, const std::vector<double>& labels);

// Worst KKT violation over the training set of a fitted SVR; near zero at
// convergence.
double svr_kkt_residual(const FittedModel& m, const std::vector<std::vector<double>>& x,
                        const std::vector<double>& y);

struct CvResult {
    double mean_mse = 0.0;
    std::vector<double> fold_mses;  // folds * iterations entries
};

// K-fold cross-validation grouped by ego; each iteration reshuffles the
// egos with a fresh seeded permutation.
CvResult cross_validate(const SigmaDataset& d, const RegressorSpec& spec, int folds,
                        int iterations, std::uint64_t seed);

// JSON (de)serialization of fitted models and specs.
std::string model_to_json(const FittedModel& m);
FittedModel model_from_json(const std::string& text);
std::string spec_to_json_string(const RegressorSpec& s);
RegressorSpec spec_from_json_string(const std::string& text);

}  // namespace bcm
