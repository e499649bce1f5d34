#include "bcm/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace bcm {

InteractionMode parse_mode(const std::string& name) {
    if (name == "ego-only") return InteractionMode::EgoOnly;
    if (name == "symmetric") return InteractionMode::Symmetric;
    throw DataError("unknown interaction mode: '" + name + "'");
}

GroupScheme parse_scheme(const std::string& name) {
    if (name == "sequential") return GroupScheme::Sequential;
    if (name == "meanfield") return GroupScheme::MeanField;
    throw DataError("unknown group scheme: '" + name + "'");
}

const char* mode_name(InteractionMode m) {
    return m == InteractionMode::EgoOnly ? "ego-only" : "symmetric";
}

const char* scheme_name(GroupScheme s) {
    return s == GroupScheme::Sequential ? "sequential" : "meanfield";
}

double bcm_pair_update(double v_i, double v_j, const BcmParams& params) {
    params.require_valid();
    if (std::abs(v_j - v_i) <= params.sigma) {
        return v_i + params.mu * (v_j - v_i);
    }
    return v_i;
}

StepTrace step_profiles(std::vector<ValueProfile>& profiles, const EgoNetwork& net,
                        const BcmParams& params, InteractionMode mode,
                        GroupScheme scheme, int step_number) {
    params.require_valid();
    StepTrace trace;
    trace.step = step_number;
    const std::size_t n_alters = net.alter_ids.size();

    for (ValueDimension dim : kAllDimensions) {
        double ego = profiles[0][dim];
        if (scheme == GroupScheme::Sequential) {
            for (std::size_t k = 0; k < n_alters; ++k) {
                double alter = profiles[1 + k][dim];
                bool in = std::abs(alter - ego) <= params.sigma;
                trace.records.push_back({net.ego_id, net.alter_ids[k], dim, in});
                if (!in) continue;
                double ego_next = ego + params.mu * (alter - ego);
                if (mode == InteractionMode::Symmetric) {
                    profiles[1 + k][dim] = alter + params.mu * (ego - alter);
                }
                ego = ego_next;
            }
        } else {  // MeanField
            double sum = 0.0;
            std::size_t count = 0;
            std::vector<std::size_t> inside;
            for (std::size_t k = 0; k < n_alters; ++k) {
                double alter = profiles[1 + k][dim];
                bool in = std::abs(alter - ego) <= params.sigma;
                trace.records.push_back({net.ego_id, net.alter_ids[k], dim, in});
                if (in) {
                    sum += alter;
                    count += 1;
                    inside.push_back(k);
                }
            }
            if (count > 0) {
                double mean = sum / static_cast<double>(count);
                double ego_next = ego + params.mu * (mean - ego);
                if (mode == InteractionMode::Symmetric) {
                    // mu/count per alter keeps the group sum invariant.
                    double w = params.mu / static_cast<double>(count);
                    for (std::size_t k : inside) {
                        double alter = profiles[1 + k][dim];
                        profiles[1 + k][dim] = alter + w * (ego - alter);
                    }
                }
                ego = ego_next;
            }
        }
        profiles[0][dim] = ego;
    }
    trace.snapshot = profiles;
    return trace;
}

StepTrace group_step(const EgoNetwork& net, int segment, const BcmParams& params,
                     InteractionMode mode, GroupScheme scheme) {
    if (segment < 0 || static_cast<std::size_t>(segment) >= net.num_segments()) {
        throw DataError("segment out of trajectory range");
    }
    std::vector<ValueProfile> profiles;
    profiles.reserve(net.num_users());
    for (const auto& traj : net.trajectories) profiles.push_back(traj[segment]);
    return step_profiles(profiles, net, params, mode, scheme, 0);
}

std::vector<StepTrace> simulate(const EgoNetwork& net, const BcmParams& params,
                                InteractionMode mode, GroupScheme scheme, int steps,
                                std::uint64_t /*seed*/) {
    if (steps < 0) throw DataError("steps must be >= 0");
    net.require_valid();
    std::vector<ValueProfile> profiles;
    for (const auto& traj : net.trajectories) profiles.push_back(traj.front());

    std::vector<StepTrace> traces;
    traces.reserve(steps + 1);
    StepTrace initial;
    initial.step = 0;
    initial.snapshot = profiles;
    traces.push_back(initial);
    for (int s = 1; s <= steps; ++s) {
        traces.push_back(step_profiles(profiles, net, params, mode, scheme, s));
    }
    return traces;
}

std::pair<bool, double> converged(const std::vector<StepTrace>& traces,
                                  double tolerance) {
    if (traces.empty()) throw DataError("empty trace list");
    if (!(tolerance > 0)) throw DataError("tolerance must be positive");
    const auto& last = traces.back().snapshot;
    double spread = 0.0;
    for (ValueDimension dim : kAllDimensions) {
        double lo = last[0][dim], hi = last[0][dim];
        for (const auto& p : last) {
            lo = std::min(lo, p[dim]);
            hi = std::max(hi, p[dim]);
        }
        spread = std::max(spread, hi - lo);
    }
    return {spread < tolerance, spread};
}

}  // namespace bcm
