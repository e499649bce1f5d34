#include "bcm/regress.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include <json.hpp>

namespace bcm {

using nlohmann::json;

namespace {

double soft_threshold(double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Deterministic subsample for kernel fits on large training sets.
void maybe_subsample(std::vector<std::vector<double>>& x, std::vector<double>& y,
                     std::optional<std::size_t> cap) {
    if (!cap || x.size() <= *cap) return;
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(0xB4C0FFEEULL ^ x.size());
    std::shuffle(idx.begin(), idx.end(), rng);
    idx.resize(*cap);
    std::sort(idx.begin(), idx.end());
    std::vector<std::vector<double>> xs;
    std::vector<double> ys;
    xs.reserve(*cap);
    ys.reserve(*cap);
    for (std::size_t i : idx) {
        xs.push_back(x[i]);
        ys.push_back(y[i]);
    }
    x = std::move(xs);
    y = std::move(ys);
}

}  // namespace

std::string kernel_name(const Kernel& k) {
    if (std::holds_alternative<LinearKernel>(k)) return "linear";
    if (std::holds_alternative<RbfKernel>(k)) return "rbf";
    return "poly";
}

double kernel_eval(const Kernel& k, const std::vector<double>& x,
                   const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("kernel_eval: length mismatch");
    if (const auto* rbf = std::get_if<RbfKernel>(&k)) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double d = x[i] - y[i];
            d2 += d * d;
        }
        return std::exp(-rbf->gamma * d2);
    }
    if (const auto* poly = std::get_if<PolynomialKernel>(&k)) {
        return std::pow(dot(x, y) + poly->coef0, poly->degree);
    }
    return dot(x, y);
}

RegressorFamily parse_family(const std::string& name) {
    if (name == "svr") return RegressorFamily::Svr;
    if (name == "gp" || name == "gaussian_process") return RegressorFamily::GaussianProcess;
    if (name == "elasticnet") return RegressorFamily::ElasticNet;
    if (name == "ridge") return RegressorFamily::Ridge;
    throw DataError("unknown regressor family: '" + name + "'");
}

const char* family_name(RegressorFamily f) {
    switch (f) {
        case RegressorFamily::Svr: return "svr";
        case RegressorFamily::GaussianProcess: return "gaussian_process";
        case RegressorFamily::ElasticNet: return "elasticnet";
        default: return "ridge";
    }
}

void RegressorSpec::require_valid() const {
    if (const auto* rbf = std::get_if<RbfKernel>(&kernel)) {
        if (!(rbf->gamma > 0)) throw DataError("rbf gamma must be positive");
    }
    if (const auto* poly = std::get_if<PolynomialKernel>(&kernel)) {
        if (poly->degree < 1) throw DataError("polynomial degree must be >= 1");
    }
    switch (family) {
        case RegressorFamily::Svr:
            if (!(c > 0)) throw DataError("SVR C must be positive");
            if (!(epsilon >= 0)) throw DataError("SVR epsilon must be >= 0");
            break;
        case RegressorFamily::GaussianProcess:
            if (!(gp_alpha > 0)) throw DataError("GP alpha must be positive");
            break;
        case RegressorFamily::ElasticNet:
            if (!(alpha >= 0)) throw DataError("elasticnet alpha must be >= 0");
            if (!(l1_ratio >= 0 && l1_ratio <= 1)) {
                throw DataError("l1_ratio must be in [0,1]");
            }
            if (!(tol > 0)) throw DataError("tol must be positive");
            break;
        case RegressorFamily::Ridge:
            if (!(alpha >= 0)) throw DataError("ridge alpha must be >= 0");
            break;
    }
}

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw DataError("cannot standardize an empty dataset");
    std::size_t d = rows.front().size();
    Standardizer s;
    s.mean.assign(d, 0.0);
    s.scale.assign(d, 1.0);
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < d; ++j) s.mean[j] += r[j];
    }
    for (std::size_t j = 0; j < d; ++j) s.mean[j] /= static_cast<double>(rows.size());
    std::vector<double> var(d, 0.0);
    for (const auto& r : rows) {
        for (std::size_t j = 0; j < d; ++j) {
            double c = r[j] - s.mean[j];
            var[j] += c * c;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        double sd = std::sqrt(var[j] / static_cast<double>(rows.size()));
        s.scale[j] = sd > 1e-12 ? sd : 1.0;
    }
    return s;
}

std::vector<double> Standardizer::apply(const std::vector<double>& x) const {
    if (x.size() != mean.size()) throw DataError("feature count mismatch");
    std::vector<double> z(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) z[j] = (x[j] - mean[j]) / scale[j];
    return z;
}

std::vector<double> Standardizer::invert(const std::vector<double>& z) const {
    std::vector<double> x(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) x[j] = z[j] * scale[j] + mean[j];
    return x;
}

std::vector<std::vector<double>> feature_matrix(const SigmaDataset& d) {
    std::vector<std::vector<double>> x;
    x.reserve(d.tuples.size());
    for (const auto& t : d.tuples) x.push_back(t.features());
    return x;
}

std::vector<double> label_vector(const SigmaDataset& d) {
    std::vector<double> y;
    y.reserve(d.tuples.size());
    for (const auto& t : d.tuples) y.push_back(t.sigma_label);
    return y;
}

FittedModel fit_svr_xy(const std::vector<std::vector<double>>& x_in,
                       const std::vector<double>& y_in, const RegressorSpec& spec) {
    spec.require_valid();
    if (x_in.empty()) throw DataError("SVR training set is empty");
    auto x = x_in;
    auto y = y_in;
    maybe_subsample(x, y, spec.max_train_points);

    FittedModel m;
    m.spec = spec;
    const std::size_t n = x.size();

    // Preprocessing statistics over distinct rows only, so that duplicating a
    // training point cannot shift the scaling or the bias (the dual solution
    // itself is duplicate-invariant for non-support points).
    std::vector<std::vector<double>> ux;
    std::vector<double> uy;
    for (std::size_t i = 0; i < n; ++i) {
        bool seen = false;
        for (std::size_t j = 0; j < ux.size() && !seen; ++j) {
            seen = ux[j] == x[i] && uy[j] == y[i];
        }
        if (!seen) {
            ux.push_back(x[i]);
            uy.push_back(y[i]);
        }
    }
    m.standardizer = Standardizer::fit(ux);
    std::vector<std::vector<double>> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = m.standardizer.apply(x[i]);

    double y_mean =
        std::accumulate(uy.begin(), uy.end(), 0.0) / static_cast<double>(uy.size());
    std::vector<double> yc(n);
    for (std::size_t i = 0; i < n; ++i) yc[i] = y[i] - y_mean;

    // Dual coordinate ascent on beta = alpha - alpha*, box [-C, C].
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(n);
    // Stop once no coordinate wants to move by more than a small fraction of
    // the box; keeps the KKT residual well under the 1e-3 tolerance.
    const double stop_tol = 1e-7 * std::max(1.0, spec.c);

    if (std::holds_alternative<LinearKernel>(spec.kernel)) {
        // Linear kernel: maintain the primal vector w = Z^T beta so each
        // coordinate update costs O(d); sweeps are cheap enough to run until
        // the box is quiet even at large C.
        const std::size_t dim = z.front().size();
        std::vector<double> w(dim, 0.0);
        const int max_sweeps = 30000;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            double max_delta = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double kii = dot(z[i], z[i]);
                if (kii < 1e-12) continue;
                double q = yc[i] - dot(w, z[i]) + kii * beta(i);
                double b_new = soft_threshold(q, spec.epsilon) / kii;
                b_new = std::clamp(b_new, -spec.c, spec.c);
                double d = b_new - beta(i);
                if (d != 0.0) {
                    for (std::size_t j = 0; j < dim; ++j) w[j] += d * z[i][j];
                    beta(i) = b_new;
                    max_delta = std::max(max_delta, std::abs(d));
                }
            }
            if (max_delta < stop_tol) break;
        }
    } else {
        Eigen::MatrixXd gram(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                double v = kernel_eval(spec.kernel, z[i], z[j]);
                gram(i, j) = v;
                gram(j, i) = v;
            }
        }
        Eigen::VectorXd f = Eigen::VectorXd::Zero(n);  // f_i = sum_j beta_j K_ij
        // Sweeps cost O(n^2); cap total work so ill-conditioned corners of the
        // hyperparameter space (e.g. poly at extreme C) stay within budget.
        const int max_sweeps = static_cast<int>(
            std::clamp(6e8 / static_cast<double>(n * n), 100.0, 5000.0));
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            double max_delta = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double kii = gram(i, i);
                if (kii < 1e-12) continue;
                double q = yc[i] - f(i) + kii * beta(i);
                double b_new = soft_threshold(q, spec.epsilon) / kii;
                b_new = std::clamp(b_new, -spec.c, spec.c);
                double d = b_new - beta(i);
                if (d != 0.0) {
                    f += d * gram.col(static_cast<Eigen::Index>(i));
                    beta(i) = b_new;
                    max_delta = std::max(max_delta, std::abs(d));
                }
            }
            if (max_delta < stop_tol) break;
        }
    }

    // Keep only support points.
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(beta(i)) > 1e-12) {
            m.support_x.push_back(z[i]);
            m.dual_coef.push_back(beta(i));
        }
    }
    m.bias = y_mean;
    return m;
}

FittedModel fit_elasticnet_xy(const std::vector<std::vector<double>>& x,
                              const std::vector<double>& y,
                              const RegressorSpec& spec) {
    spec.require_valid();
    if (x.empty()) throw DataError("elasticnet training set is empty");
    FittedModel m;
    m.spec = spec;
    m.standardizer = Standardizer::fit(x);
    const std::size_t n = x.size();
    const std::size_t d = x.front().size();

    Eigen::MatrixXd z(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        auto zi = m.standardizer.apply(x[i]);
        for (std::size_t j = 0; j < d; ++j) z(i, j) = zi[j];
    }
    double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    Eigen::VectorXd yc(n);
    for (std::size_t i = 0; i < n; ++i) yc(i) = y[i] - y_mean;

    // Objective: (1/2n)||y - Zw||^2 + alpha*(l1*|w|_1 + (1-l1)/2*|w|^2)
    const double l1_pen = spec.alpha * spec.l1_ratio;
    const double l2_pen = spec.alpha * (1.0 - spec.l1_ratio);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd resid = yc;
    Eigen::VectorXd col_sq(d);
    for (std::size_t j = 0; j < d; ++j) {
        col_sq(j) = z.col(j).squaredNorm() / static_cast<double>(n);
    }
    const int max_sweeps = 100000;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double max_delta = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            if (col_sq(j) < 1e-15) continue;
            double rho = z.col(j).dot(resid) / static_cast<double>(n) + col_sq(j) * w(j);
            double w_new = soft_threshold(rho, l1_pen) / (col_sq(j) + l2_pen);
            double delta = w_new - w(j);
            if (delta != 0.0) {
                resid -= delta * z.col(j);
                w(j) = w_new;
                max_delta = std::max(max_delta, std::abs(delta));
            }
        }
        if (max_delta < spec.tol * 1e-2) break;
    }

    m.weights.assign(w.data(), w.data() + d);
    m.intercept = y_mean;
    return m;
}

FittedModel fit_ridge_xy(const std::vector<std::vector<double>>& x,
                         const std::vector<double>& y, const RegressorSpec& spec) {
    spec.require_valid();
    if (x.empty()) throw DataError("ridge training set is empty");
    FittedModel m;
    m.spec = spec;
    m.standardizer = Standardizer::fit(x);
    const std::size_t n = x.size();
    const std::size_t d = x.front().size();
    Eigen::MatrixXd z(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        auto zi = m.standardizer.apply(x[i]);
        for (std::size_t j = 0; j < d; ++j) z(i, j) = zi[j];
    }
    double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    Eigen::VectorXd yc(n);
    for (std::size_t i = 0; i < n; ++i) yc(i) = y[i] - y_mean;

    Eigen::MatrixXd a = z.transpose() * z;
    a.diagonal().array() += spec.alpha;
    Eigen::VectorXd w = a.ldlt().solve(z.transpose() * yc);
    m.weights.assign(w.data(), w.data() + d);
    m.intercept = y_mean;
    return m;
}

FittedModel fit_gp_xy(const std::vector<std::vector<double>>& x_in,
                      const std::vector<double>& y_in, const RegressorSpec& spec) {
    spec.require_valid();
    if (x_in.empty()) throw DataError("GP training set is empty");
    auto x = x_in;
    auto y = y_in;
    maybe_subsample(x, y, spec.max_train_points);

    FittedModel m;
    m.spec = spec;
    m.standardizer = Standardizer::fit(x);
    const std::size_t n = x.size();
    m.gp_x.resize(n);
    for (std::size_t i = 0; i < n; ++i) m.gp_x[i] = m.standardizer.apply(x[i]);

    m.y_mean = 0.0;
    m.y_scale = 1.0;
    Eigen::VectorXd yn(n);
    if (spec.normalize_y) {
        m.y_mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
        double var = 0.0;
        for (double v : y) var += (v - m.y_mean) * (v - m.y_mean);
        double sd = std::sqrt(var / static_cast<double>(n));
        m.y_scale = sd > 1e-12 ? sd : 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) yn(i) = (y[i] - m.y_mean) / m.y_scale;

    Eigen::MatrixXd k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double v = kernel_eval(spec.kernel, m.gp_x[i], m.gp_x[j]);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    k.diagonal().array() += spec.gp_alpha;
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() != Eigen::Success) {
        throw NumericError("GP Cholesky failed; try a larger alpha");
    }
    Eigen::VectorXd w = llt.solve(yn);
    m.gp_weights.assign(w.data(), w.data() + n);
    return m;
}

FittedModel fit_svr(const SigmaDataset& train, const RegressorSpec& spec) {
    return fit_svr_xy(feature_matrix(train), label_vector(train), spec);
}
FittedModel fit_elasticnet(const SigmaDataset& train, const RegressorSpec& spec) {
    return fit_elasticnet_xy(feature_matrix(train), label_vector(train), spec);
}
FittedModel fit_gp(const SigmaDataset& train, const RegressorSpec& spec) {
    return fit_gp_xy(feature_matrix(train), label_vector(train), spec);
}
FittedModel fit_ridge(const SigmaDataset& train, const RegressorSpec& spec) {
    return fit_ridge_xy(feature_matrix(train), label_vector(train), spec);
}

FittedModel fit(const SigmaDataset& train, const RegressorSpec& spec) {
    switch (spec.family) {
        case RegressorFamily::Svr: return fit_svr(train, spec);
        case RegressorFamily::GaussianProcess: return fit_gp(train, spec);
        case RegressorFamily::ElasticNet: return fit_elasticnet(train, spec);
        default: return fit_ridge(train, spec);
    }
}

double FittedModel::evaluate(const std::vector<double>& x) const {
    std::vector<double> z = standardizer.apply(x);
    switch (spec.family) {
        case RegressorFamily::Svr: {
            double s = bias;
            for (std::size_t i = 0; i < support_x.size(); ++i) {
                s += dual_coef[i] * kernel_eval(spec.kernel, support_x[i], z);
            }
            return s;
        }
        case RegressorFamily::GaussianProcess: {
            double s = 0.0;
            for (std::size_t i = 0; i < gp_x.size(); ++i) {
                s += gp_weights[i] * kernel_eval(spec.kernel, gp_x[i], z);
            }
            return s * y_scale + y_mean;
        }
        default:
            return dot(weights, z) + intercept;
    }
}

double predict(const FittedModel& m, const std::vector<double>& x) {
    return std::clamp(m.evaluate(x), 0.0, 1.0);
}

double mse(const std::vector<double>& predictions, const std::vector<double>& labels) {
    if (predictions.empty()) throw DataError("mse of empty vectors");
    if (predictions.size() != labels.size()) throw DataError("mse length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        double d = predictions[i] - labels[i];
        s += d * d;
    }
    return s / static_cast<double>(predictions.size());
}

double svr_kkt_residual(const FittedModel& m, const std::vector<std::vector<double>>& x,
                        const std::vector<double>& y) {
    // Dual coefficients indexed against the support set only; points absent
    // from the support set have beta = 0.
    const double c = m.spec.c;
    const double eps = m.spec.epsilon;
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = y[i] - m.evaluate(x[i]);
        std::vector<double> z = m.standardizer.apply(x[i]);
        double beta = 0.0;
        for (std::size_t s = 0; s < m.support_x.size(); ++s) {
            if (m.support_x[s] == z) {
                beta = m.dual_coef[s];
                break;
            }
        }
        double viol = 0.0;
        const double band = 1e-9;
        if (std::abs(beta) <= band) {
            viol = std::max(0.0, std::abs(r) - eps);
        } else if (beta >= c - band) {
            viol = std::max(0.0, eps - r);
        } else if (beta <= -c + band) {
            viol = std::max(0.0, eps + r);
        } else if (beta > 0) {
            viol = std::abs(r - eps);
        } else {
            viol = std::abs(r + eps);
        }
        worst = std::max(worst, viol);
    }
    return worst;
}

CvResult cross_validate(const SigmaDataset& d, const RegressorSpec& spec, int folds,
                        int iterations, std::uint64_t seed) {
    if (folds < 2) throw DataError("cross_validate requires folds >= 2");
    if (iterations < 1) throw DataError("cross_validate requires iterations >= 1");
    std::vector<std::string> egos = dataset_egos(d);
    if (egos.size() < static_cast<std::size_t>(folds)) {
        throw DataError("too few egos for the requested fold count");
    }

    // Tuples grouped per ego once.
    std::map<std::string, SigmaDataset> by_ego;
    for (const auto& t : d.tuples) by_ego[t.ego_id].tuples.push_back(t);

    CvResult result;
    for (int iter = 0; iter < iterations; ++iter) {
        std::vector<std::string> order = egos;
        std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (iter + 1)));
        std::shuffle(order.begin(), order.end(), rng);
        for (int f = 0; f < folds; ++f) {
            SigmaDataset train, test;
            train.delta = test.delta = d.delta;
            for (std::size_t e = 0; e < order.size(); ++e) {
                auto& dst = (static_cast<int>(e % folds) == f) ? test : train;
                const auto& src = by_ego.at(order[e]).tuples;
                dst.tuples.insert(dst.tuples.end(), src.begin(), src.end());
            }
            FittedModel m = fit(train, spec);
            std::vector<double> preds;
            preds.reserve(test.tuples.size());
            for (const auto& t : test.tuples) preds.push_back(predict(m, t.features()));
            result.fold_mses.push_back(mse(preds, label_vector(test)));
        }
    }
    result.mean_mse = std::accumulate(result.fold_mses.begin(), result.fold_mses.end(),
                                      0.0) /
                      static_cast<double>(result.fold_mses.size());
    return result;
}

namespace {

json kernel_to_json(const Kernel& k) {
    json j;
    j["type"] = kernel_name(k);
    if (const auto* rbf = std::get_if<RbfKernel>(&k)) j["gamma"] = rbf->gamma;
    if (const auto* poly = std::get_if<PolynomialKernel>(&k)) {
        j["degree"] = poly->degree;
        j["coef0"] = poly->coef0;
    }
    return j;
}

Kernel kernel_from_json(const json& j) {
    std::string type = j.at("type");
    if (type == "linear") return LinearKernel{};
    if (type == "rbf") return RbfKernel{j.at("gamma").get<double>()};
    if (type == "poly") {
        return PolynomialKernel{j.at("degree").get<int>(), j.at("coef0").get<double>()};
    }
    throw DataError("unknown kernel type: '" + type + "'");
}

json spec_to_json(const RegressorSpec& s) {
    json j;
    j["family"] = family_name(s.family);
    j["kernel"] = kernel_to_json(s.kernel);
    j["c"] = s.c;
    j["epsilon"] = s.epsilon;
    j["gp_alpha"] = s.gp_alpha;
    j["normalize_y"] = s.normalize_y;
    j["alpha"] = s.alpha;
    j["l1_ratio"] = s.l1_ratio;
    j["tol"] = s.tol;
    if (s.max_train_points) j["max_train_points"] = *s.max_train_points;
    return j;
}

RegressorSpec spec_from_json(const json& j) {
    RegressorSpec s;
    s.family = parse_family(j.at("family"));
    if (j.contains("kernel")) s.kernel = kernel_from_json(j.at("kernel"));
    if (j.contains("c")) s.c = j.at("c");
    if (j.contains("epsilon")) s.epsilon = j.at("epsilon");
    if (j.contains("gp_alpha")) s.gp_alpha = j.at("gp_alpha");
    if (j.contains("normalize_y")) s.normalize_y = j.at("normalize_y");
    if (j.contains("alpha")) s.alpha = j.at("alpha");
    if (j.contains("l1_ratio")) s.l1_ratio = j.at("l1_ratio");
    if (j.contains("tol")) s.tol = j.at("tol");
    if (j.contains("max_train_points")) {
        s.max_train_points = j.at("max_train_points").get<std::size_t>();
    }
    return s;
}

}  // namespace

std::string spec_to_json_string(const RegressorSpec& s) { return spec_to_json(s).dump(2); }

RegressorSpec spec_from_json_string(const std::string& text) {
    return spec_from_json(json::parse(text));
}

std::string model_to_json(const FittedModel& m) {
    json j;
    j["format_version"] = 1;
    j["spec"] = spec_to_json(m.spec);
    j["standardizer"] = {{"mean", m.standardizer.mean}, {"scale", m.standardizer.scale}};
    j["support_x"] = m.support_x;
    j["dual_coef"] = m.dual_coef;
    j["bias"] = m.bias;
    j["gp_x"] = m.gp_x;
    j["gp_weights"] = m.gp_weights;
    j["y_mean"] = m.y_mean;
    j["y_scale"] = m.y_scale;
    j["weights"] = m.weights;
    j["intercept"] = m.intercept;
    return j.dump(2);
}

FittedModel model_from_json(const std::string& text) {
    json j = json::parse(text);
    if (j.at("format_version").get<int>() != 1) {
        throw DataError("unsupported model format version");
    }
    FittedModel m;
    m.spec = spec_from_json(j.at("spec"));
    m.standardizer.mean = j.at("standardizer").at("mean").get<std::vector<double>>();
    m.standardizer.scale = j.at("standardizer").at("scale").get<std::vector<double>>();
    m.support_x = j.at("support_x").get<std::vector<std::vector<double>>>();
    m.dual_coef = j.at("dual_coef").get<std::vector<double>>();
    m.bias = j.at("bias");
    m.gp_x = j.at("gp_x").get<std::vector<std::vector<double>>>();
    m.gp_weights = j.at("gp_weights").get<std::vector<double>>();
    m.y_mean = j.at("y_mean");
    m.y_scale = j.at("y_scale");
    m.weights = j.at("weights").get<std::vector<double>>();
    m.intercept = j.at("intercept");
    return m;
}

}  // namespace bcm
