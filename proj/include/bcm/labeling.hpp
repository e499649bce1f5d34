#pragma once
// Builds the sigma-regression dataset by inverting the BCM update on
// observed segment-to-segment transitions.

#include <cstdint>
#include <string>
#include <vector>

#include "bcm/core.hpp"

namespace bcm {

// One regression training instance. Features are the four used for the
// sigma regression; sigma_label is the target.
struct SigmaTuple {
    std::string ego_id;
    std::string alter_id;
    ValueDimension dimension = ValueDimension::OpennessToChange;
    int segment = 0;  // index of the transition's starting segment

    double v_i_t = 0;     // ego value at t
    double v_j_t = 0;     // alter value at t
    double v_i_next = 0;  // ego value at t+1
    double mu = 0.4;
    double sigma_label = 0;

    std::vector<double> features() const { return {v_i_t, v_j_t, v_i_next, mu}; }
};

struct SigmaDataset {
    std::vector<SigmaTuple> tuples;
    // Provenance.
    std::string source;
    double delta = 0.01;
    std::vector<std::string> warnings;
};

// Closed-form sigma label. Compares the squared error of the interaction
// branch (ego moved by mu toward the alter) against staying put:
//   interaction wins (or ties) -> min(|delta_v| + margin, 1)
//   staying put wins           -> |delta_v| / 2
double label_sigma(double v_i_t, double v_j_t, double v_i_next, double mu,
                   double margin);

// Grid-enumeration oracle: scans sigma over a uniform grid on [0,1],
// scores each by BCM prediction error, returns the median of the argmin
// set. Independent check for label_sigma.
double label_sigma_oracle(double v_i_t, double v_j_t, double v_i_next, double mu,
                          double grid_resolution);

// One tuple per (ego, alter, dimension, consecutive-segment transition),
// ordered by (network order, segment, alter order, dimension order).
// Networks with fewer than 2 segments are skipped with a warning.
SigmaDataset build_dataset(const std::vector<EgoNetwork>& networks, double mu,
                           double margin);

struct DatasetSplit {
    SigmaDataset train;
    SigmaDataset validation;
    SigmaDataset test;
};

// Disjoint partition grouped by ego_id; no ego spans two splits.
// Fractions must sum to 1; every split with a nonzero fraction gets at
// least one ego or the call fails.
DatasetSplit split_dataset(const SigmaDataset& d,
                           const std::array<double, 3>& fractions,
                           std::uint64_t seed);

// Distinct ego ids in first-appearance order.
std::vector<std::string> dataset_egos(const SigmaDataset& d);

}  // namespace bcm
