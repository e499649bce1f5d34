#pragma once
// Bounded Confidence Model: pairwise update, group stepping over an ego
// network, and convergence diagnostics.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bcm/core.hpp"

namespace bcm {

// Who moves during an encounter. EgoOnly updates just the ego; Symmetric
// moves both parties toward each other with the same mu.
enum class InteractionMode { EgoOnly, Symmetric };

// How a step visits the alters. Sequential folds pairwise encounters in
// fixed alter order; MeanField moves the ego once toward the mean of the
// alters inside the threshold.
enum class GroupScheme { Sequential, MeanField };

InteractionMode parse_mode(const std::string& name);
GroupScheme parse_scheme(const std::string& name);
const char* mode_name(InteractionMode m);
const char* scheme_name(GroupScheme s);

struct InteractionRecord {
    std::string user_a;  // the ego
    std::string user_b;
    ValueDimension dimension;
    bool interacted = false;  // |v_b - v_a| <= sigma at the encounter
};

struct StepTrace {
    int step = 0;
    // Snapshot after the step, ego first then alters in fixed order.
    std::vector<ValueProfile> snapshot;
    std::vector<InteractionRecord> records;
};

// Eq. update for user i: v_i + mu*(v_j - v_i) when |v_j - v_i| <= sigma,
// else v_i unchanged (bit-identical). Theta(0) counts as interaction.
double bcm_pair_update(double v_i, double v_j, const BcmParams& params);

// One influence step over in-memory profiles (ego first). Each dimension
// evolves independently. Returns the trace for this step.
StepTrace step_profiles(std::vector<ValueProfile>& profiles, const EgoNetwork& net,
                        const BcmParams& params, InteractionMode mode,
                        GroupScheme scheme, int step_number);

// group_step starting from the network's stored profiles at `segment`.
StepTrace group_step(const EgoNetwork& net, int segment, const BcmParams& params,
                     InteractionMode mode, GroupScheme scheme);

// Runs `steps` influence steps from segment 0. The returned list has
// steps+1 traces; trace 0 is the initial snapshot. Deterministic: the
// dynamics are seed-free, the seed is carried for provenance only.
std::vector<StepTrace> simulate(const EgoNetwork& net, const BcmParams& params,
                                InteractionMode mode, GroupScheme scheme, int steps,
                                std::uint64_t seed = 0);

// True iff max-min score across users in the last snapshot (over all
// dimensions) is below tolerance; also returns that spread.
std::pair<bool, double> converged(const std::vector<StepTrace>& traces,
                                  double tolerance);

}  // namespace bcm
