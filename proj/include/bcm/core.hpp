#pragma once
// Core domain types: value dimensions, profiles, ego networks, segments.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcm {

// Error categories the CLI maps to exit codes.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The five Schwartz higher-level value dimensions.
enum class ValueDimension : int {
    OpennessToChange = 0,
    SelfTranscendence = 1,
    SelfEnhancement = 2,
    Conservation = 3,
    Hedonism = 4,
};

inline constexpr int kNumDimensions = 5;

extern const std::array<ValueDimension, kNumDimensions> kAllDimensions;

const std::string& dimension_name(ValueDimension d);
// Throws DataError on an unknown name.
ValueDimension parse_dimension(const std::string& name);

// One score per value dimension, each in [0,1].
struct ValueProfile {
    std::array<double, kNumDimensions> scores{};

    double& operator[](ValueDimension d) { return scores[static_cast<int>(d)]; }
    double operator[](ValueDimension d) const { return scores[static_cast<int>(d)]; }

    bool operator==(const ValueProfile&) const = default;

    static ValueProfile uniform(double s) {
        ValueProfile p;
        p.scores.fill(s);
        return p;
    }
};

// Returns the list of violated invariants; empty means valid.
std::vector<std::string> validate_profile(const ValueProfile& p);

// Convergence factor and interaction threshold for one ego network.
struct BcmParams {
    double mu = 0.4;
    double sigma = 0.5;

    std::vector<std::string> validate() const;
    // Throws DataError if any invariant is violated.
    void require_valid() const;
};

// Star graph: one ego, 1..5 alters, per-user value trajectories indexed
// by segment. trajectories[0] is the ego, trajectories[1+k] is alter k.
struct EgoNetwork {
    std::string ego_id;
    std::vector<std::string> alter_ids;
    std::vector<std::vector<ValueProfile>> trajectories;

    std::size_t num_users() const { return 1 + alter_ids.size(); }
    std::size_t num_segments() const {
        return trajectories.empty() ? 0 : trajectories.front().size();
    }
    const std::string& user_id(std::size_t i) const {
        return i == 0 ? ego_id : alter_ids[i - 1];
    }

    std::vector<std::string> validate() const;
    void require_valid() const;
};

// Calendar date; only whole-month arithmetic is needed.
struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    bool operator==(const Date&) const = default;
    auto operator<=>(const Date&) const = default;

    std::string to_string() const;
    static Date parse(const std::string& iso);  // "YYYY-MM-DD"
};

Date add_months(const Date& d, int months);

// A 6-calendar-month window of a trajectory.
struct Segment {
    int index = 0;
    Date start;
    Date end;  // exclusive

    static Segment for_index(int index, const Date& epoch);
};

// Floor of the number of whole 6-month periods between epoch and date.
// Throws DataError when date precedes epoch.
int segment_index_for(const Date& date, const Date& epoch);

}  // namespace bcm
