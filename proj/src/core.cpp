#include "bcm/core.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace bcm {

const std::array<ValueDimension, kNumDimensions> kAllDimensions = {
    ValueDimension::OpennessToChange, ValueDimension::SelfTranscendence,
    ValueDimension::SelfEnhancement, ValueDimension::Conservation,
    ValueDimension::Hedonism};

namespace {
const std::array<std::string, kNumDimensions> kDimensionNames = {
    "openness_to_change", "self_transcendence", "self_enhancement",
    "conservation", "hedonism"};
}

const std::string& dimension_name(ValueDimension d) {
    return kDimensionNames[static_cast<int>(d)];
}

ValueDimension parse_dimension(const std::string& name) {
    for (int i = 0; i < kNumDimensions; ++i) {
        if (kDimensionNames[i] == name) return static_cast<ValueDimension>(i);
    }
    throw DataError("unknown value dimension: '" + name + "'");
}

std::vector<std::string> validate_profile(const ValueProfile& p) {
    std::vector<std::string> violations;
    for (ValueDimension d : kAllDimensions) {
        double s = p[d];
        if (!(s >= 0.0 && s <= 1.0)) {
            violations.push_back(dimension_name(d) + ": score out of [0,1]");
        }
    }
    return violations;
}

std::vector<std::string> BcmParams::validate() const {
    std::vector<std::string> violations;
    if (!(mu > 0.0 && mu <= 0.5)) violations.push_back("mu out of (0, 0.5]");
    if (!(sigma >= 0.0 && sigma <= 1.0)) violations.push_back("sigma out of [0, 1]");
    return violations;
}

void BcmParams::require_valid() const {
    auto v = validate();
    if (!v.empty()) throw DataError("invalid BCM parameters: " + v.front());
}

std::vector<std::string> EgoNetwork::validate() const {
    std::vector<std::string> violations;
    if (alter_ids.empty() || alter_ids.size() > 5) {
        violations.push_back("alter count must be in [1, 5]");
    }
    std::set<std::string> seen(alter_ids.begin(), alter_ids.end());
    if (seen.size() != alter_ids.size()) violations.push_back("duplicate alter ids");
    if (seen.count(ego_id)) violations.push_back("ego listed among alters");
    if (trajectories.size() != num_users()) {
        violations.push_back("trajectory count does not match user count");
    } else {
        std::size_t n = trajectories.front().size();
        for (std::size_t i = 0; i < trajectories.size(); ++i) {
            if (trajectories[i].size() != n) {
                violations.push_back("trajectory length mismatch for user " + user_id(i));
            }
            for (const auto& prof : trajectories[i]) {
                auto pv = validate_profile(prof);
                violations.insert(violations.end(), pv.begin(), pv.end());
            }
        }
    }
    return violations;
}

void EgoNetwork::require_valid() const {
    auto v = validate();
    if (!v.empty()) {
        throw DataError("invalid ego network '" + ego_id + "': " + v.front());
    }
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

Date Date::parse(const std::string& iso) {
    Date d;
    if (std::sscanf(iso.c_str(), "%d-%d-%d", &d.year, &d.month, &d.day) != 3 ||
        d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) {
        throw DataError("unparsable date: '" + iso + "'");
    }
    return d;
}

Date add_months(const Date& d, int months) {
    int m0 = d.year * 12 + (d.month - 1) + months;
    Date r = d;
    r.year = m0 / 12;
    r.month = m0 % 12 + 1;
    if (m0 < 0 && m0 % 12 != 0) {  // floor division for pre-epoch dates
        r.year -= 1;
        r.month = (m0 % 12 + 12) % 12 + 1;
    }
    return r;
}

Segment Segment::for_index(int index, const Date& epoch) {
    Segment s;
    s.index = index;
    s.start = add_months(epoch, 6 * index);
    s.end = add_months(epoch, 6 * (index + 1));
    return s;
}

int segment_index_for(const Date& date, const Date& epoch) {
    if (date < epoch) throw DataError("date precedes epoch");
    int whole_months = (date.year - epoch.year) * 12 + (date.month - epoch.month);
    if (date.day < epoch.day) whole_months -= 1;
    return whole_months / 6;
}

}  // namespace bcm
