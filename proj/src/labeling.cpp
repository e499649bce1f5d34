#include "bcm/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace bcm {

double label_sigma(double v_i_t, double v_j_t, double v_i_next, double mu,
                   double margin) {
    if (!(margin > 0)) throw DataError("margin must be positive");
    BcmParams{mu, 0.0}.require_valid();
    double delta_v = std::abs(v_j_t - v_i_t);
    double pred_on = v_i_t + mu * (v_j_t - v_i_t);
    double e_on = (pred_on - v_i_next) * (pred_on - v_i_next);
    double e_off = (v_i_t - v_i_next) * (v_i_t - v_i_next);
    if (e_on <= e_off) return std::min(delta_v + margin, 1.0);
    return delta_v / 2.0;
}

double label_sigma_oracle(double v_i_t, double v_j_t, double v_i_next, double mu,
                          double grid_resolution) {
    if (!(grid_resolution >= 1e-3)) {
        throw DataError("grid resolution must be >= 1e-3");
    }
    double delta_v = std::abs(v_j_t - v_i_t);
    int n = static_cast<int>(std::llround(1.0 / grid_resolution));
    std::vector<double> argmin;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= n; ++k) {
        double sigma = static_cast<double>(k) / n;
        double pred = delta_v <= sigma ? v_i_t + mu * (v_j_t - v_i_t) : v_i_t;
        double err = (pred - v_i_next) * (pred - v_i_next);
        if (err < best - 1e-15) {
            best = err;
            argmin.clear();
            argmin.push_back(sigma);
        } else if (err <= best + 1e-15) {
            argmin.push_back(sigma);
        }
    }
    // The error is a two-valued step function of sigma, so the argmin set is
    // the lower interval [0, delta), the upper interval [delta, 1], or (in
    // the degenerate tie case) the whole grid.
    bool has_low = argmin.front() == 0.0;
    bool has_high = argmin.back() == 1.0;
    if (has_high && !has_low) return argmin.front();  // interaction threshold
    std::size_t m = argmin.size();
    if (m % 2 == 1) return argmin[m / 2];
    return 0.5 * (argmin[m / 2 - 1] + argmin[m / 2]);
}

SigmaDataset build_dataset(const std::vector<EgoNetwork>& networks, double mu,
                           double margin) {
    SigmaDataset out;
    out.delta = margin;
    if (networks.empty()) {
        out.warnings.push_back("no networks provided; dataset is empty");
        return out;
    }
    for (const auto& net : networks) {
        if (net.num_segments() < 2) {
            out.warnings.push_back("network '" + net.ego_id +
                                   "' has fewer than 2 segments; skipped");
            continue;
        }
        net.require_valid();
        const auto& ego_traj = net.trajectories[0];
        for (std::size_t t = 0; t + 1 < ego_traj.size(); ++t) {
            for (std::size_t k = 0; k < net.alter_ids.size(); ++k) {
                for (ValueDimension dim : kAllDimensions) {
                    SigmaTuple tup;
                    tup.ego_id = net.ego_id;
                    tup.alter_id = net.alter_ids[k];
                    tup.dimension = dim;
                    tup.segment = static_cast<int>(t);
                    tup.v_i_t = ego_traj[t][dim];
                    tup.v_j_t = net.trajectories[1 + k][t][dim];
                    tup.v_i_next = ego_traj[t + 1][dim];
                    tup.mu = mu;
                    tup.sigma_label =
                        label_sigma(tup.v_i_t, tup.v_j_t, tup.v_i_next, mu, margin);
                    out.tuples.push_back(std::move(tup));
                }
            }
        }
    }
    return out;
}

std::vector<std::string> dataset_egos(const SigmaDataset& d) {
    std::vector<std::string> egos;
    for (const auto& t : d.tuples) {
        if (std::find(egos.begin(), egos.end(), t.ego_id) == egos.end()) {
            egos.push_back(t.ego_id);
        }
    }
    return egos;
}

DatasetSplit split_dataset(const SigmaDataset& d,
                           const std::array<double, 3>& fractions,
                           std::uint64_t seed) {
    double sum = fractions[0] + fractions[1] + fractions[2];
    if (std::abs(sum - 1.0) > 1e-9) throw DataError("split fractions must sum to 1");

    std::vector<std::string> egos = dataset_egos(d);
    std::mt19937_64 rng(seed);
    std::shuffle(egos.begin(), egos.end(), rng);

    const std::size_t n = egos.size();
    // Largest-remainder apportionment over the shuffled ego list.
    std::array<std::size_t, 3> counts{};
    std::array<double, 3> remainders{};
    std::size_t assigned = 0;
    for (int s = 0; s < 3; ++s) {
        double exact = fractions[s] * static_cast<double>(n);
        counts[s] = static_cast<std::size_t>(exact);
        remainders[s] = exact - static_cast<double>(counts[s]);
        assigned += counts[s];
    }
    while (assigned < n) {
        int best = 0;
        for (int s = 1; s < 3; ++s) {
            if (remainders[s] > remainders[best]) best = s;
        }
        counts[best] += 1;
        remainders[best] = -1;
        assigned += 1;
    }
    for (int s = 0; s < 3; ++s) {
        if (fractions[s] > 0 && counts[s] == 0) {
            throw DataError("dataset too small: split " + std::to_string(s) +
                            " would receive no egos");
        }
    }

    std::map<std::string, int> assignment;
    std::size_t pos = 0;
    for (int s = 0; s < 3; ++s) {
        for (std::size_t k = 0; k < counts[s]; ++k) assignment[egos[pos++]] = s;
    }

    DatasetSplit split;
    for (SigmaDataset* part : {&split.train, &split.validation, &split.test}) {
        part->source = d.source;
        part->delta = d.delta;
    }
    for (const auto& t : d.tuples) {
        switch (assignment.at(t.ego_id)) {
            case 0: split.train.tuples.push_back(t); break;
            case 1: split.validation.tuples.push_back(t); break;
            default: split.test.tuples.push_back(t); break;
        }
    }
    return split;
}

}  // namespace bcm
