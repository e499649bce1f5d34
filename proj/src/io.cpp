#include "bcm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "bcm/pso.hpp"

#include <json.hpp>

namespace bcm {

using nlohmann::json;

namespace {

// Shortest-ish round-trip decimal form.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = std::strtod(buf, nullptr);
    if (back == v) {
        // try shorter forms
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[32];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
            if (std::strtod(shorter, nullptr) == v) return shorter;
        }
    }
    return buf;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_score(const std::string& s, int line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw DataError("line " + std::to_string(line_no) + ": unparsable number '" + s + "'");
    }
}

constexpr double kGap = std::numeric_limits<double>::quiet_NaN();

// Assembles validated EgoNetworks from flat records.
std::vector<EgoNetwork> assemble(const std::vector<TrajectoryRecord>& records,
                                 bool interpolate) {
    // ego -> user -> segment -> dim -> score, orders preserved separately
    std::vector<std::string> ego_order;
    std::map<std::string, std::vector<std::string>> user_order;
    std::map<std::string, std::map<std::string, std::map<int, std::map<int, double>>>> data;

    int line_no = 1;
    for (const auto& r : records) {
        ++line_no;
        if (!(r.score >= 0.0 && r.score <= 1.0)) {
            throw DataError("line " + std::to_string(line_no) + ": score " +
                            fmt(r.score) + " out of [0,1]");
        }
        if (r.segment < 0) {
            throw DataError("line " + std::to_string(line_no) + ": negative segment");
        }
        int dim = static_cast<int>(parse_dimension(r.dimension));
        if (!data.count(r.ego_id)) ego_order.push_back(r.ego_id);
        auto& users = data[r.ego_id];
        if (!users.count(r.user_id)) user_order[r.ego_id].push_back(r.user_id);
        auto& cell = users[r.user_id][r.segment];
        if (cell.count(dim)) {
            throw DataError("line " + std::to_string(line_no) +
                            ": duplicate (user, segment, dimension) record for '" +
                            r.user_id + "'");
        }
        cell[dim] = r.score;
    }

    std::vector<EgoNetwork> nets;
    for (const auto& ego_id : ego_order) {
        const auto& users = data.at(ego_id);
        if (!users.count(ego_id)) {
            throw DataError("ego '" + ego_id + "' has no trajectory rows of its own");
        }
        EgoNetwork net;
        net.ego_id = ego_id;
        for (const auto& uid : user_order.at(ego_id)) {
            if (uid != ego_id) net.alter_ids.push_back(uid);
        }

        // Shared contiguous segment range across users.
        int lo = std::numeric_limits<int>::max(), hi = -1;
        for (const auto& [uid, segs] : users) {
            lo = std::min(lo, segs.begin()->first);
            hi = std::max(hi, segs.rbegin()->first);
        }
        net.trajectories.resize(net.num_users());
        for (std::size_t u = 0; u < net.num_users(); ++u) {
            const auto& segs = users.at(net.user_id(u));
            auto& traj = net.trajectories[u];
            for (int s = lo; s <= hi; ++s) {
                auto it = segs.find(s);
                if (it == segs.end()) {
                    if (!interpolate) {
                        throw DataError("user '" + net.user_id(u) + "' of ego '" +
                                        ego_id + "' is missing segment " +
                                        std::to_string(s) +
                                        " (pass --interpolate to repair)");
                    }
                    traj.push_back(ValueProfile::uniform(kGap));
                    continue;
                }
                if (it->second.size() != kNumDimensions) {
                    throw DataError("user '" + net.user_id(u) + "' segment " +
                                    std::to_string(s) + " does not have all five dimensions");
                }
                ValueProfile p;
                for (const auto& [dim, score] : it->second) p.scores[dim] = score;
                traj.push_back(p);
            }
        }
        if (interpolate) net = interpolate_gaps(net);
        net.require_valid();
        nets.push_back(std::move(net));
    }
    return nets;
}

}  // namespace

void SynthSpec::require_valid() const {
    if (num_networks < 0) throw DataError("num_networks must be >= 0");
    if (alters_per_network < 1 || alters_per_network > 5) {
        throw DataError("alters_per_network must be in [1,5]");
    }
    if (num_segments < 1) throw DataError("num_segments must be >= 1");
    if (!(noise_stdev >= 0)) throw DataError("noise stdev must be >= 0");
    BcmParams{true_mu, 0.0}.require_valid();
    if (sigma.fixed) {
        if (!(sigma.value >= 0 && sigma.value <= 1)) throw DataError("sigma out of [0,1]");
    } else if (!(sigma.lo >= 0 && sigma.hi <= 1 && sigma.lo <= sigma.hi)) {
        throw DataError("sigma range out of [0,1]");
    }
}

SyntheticCorpus generate_synthetic(const SynthSpec& spec) {
    spec.require_valid();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uni01(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, spec.noise_stdev > 0 ? spec.noise_stdev : 1.0);

    SyntheticCorpus corpus;
    for (int n = 0; n < spec.num_networks; ++n) {
        EgoNetwork net;
        net.ego_id = "ego" + std::to_string(n);
        for (int a = 0; a < spec.alters_per_network; ++a) {
            net.alter_ids.push_back(net.ego_id + "_alter" + std::to_string(a));
        }
        double sigma = spec.sigma.fixed
                           ? spec.sigma.value
                           : spec.sigma.lo + (spec.sigma.hi - spec.sigma.lo) * uni01(rng);
        BcmParams params{spec.true_mu, sigma};

        std::vector<ValueProfile> state(net.num_users());
        for (auto& p : state) {
            for (auto& s : p.scores) s = uni01(rng);
        }

        net.trajectories.assign(net.num_users(), {});
        auto observe = [&]() {
            for (std::size_t u = 0; u < state.size(); ++u) {
                ValueProfile obs = state[u];
                if (spec.noise_stdev > 0) {
                    for (auto& s : obs.scores) s = std::clamp(s + noise(rng), 0.0, 1.0);
                }
                net.trajectories[u].push_back(obs);
            }
        };
        observe();
        for (int seg = 1; seg < spec.num_segments; ++seg) {
            step_profiles(state, net, params, spec.mode, spec.scheme, seg);
            observe();
        }
        corpus.ground_truth.push_back({net.ego_id, spec.true_mu, sigma});
        corpus.networks.push_back(std::move(net));
    }
    return corpus;
}

std::string networks_to_csv(const std::vector<EgoNetwork>& nets) {
    std::ostringstream out;
    out << "ego_id,user_id,segment,dimension,score\n";
    for (const auto& net : nets) {
        for (std::size_t u = 0; u < net.num_users(); ++u) {
            for (std::size_t s = 0; s < net.num_segments(); ++s) {
                for (ValueDimension d : kAllDimensions) {
                    out << net.ego_id << ',' << net.user_id(u) << ',' << s << ','
                        << dimension_name(d) << ',' << fmt(net.trajectories[u][s][d])
                        << '\n';
                }
            }
        }
    }
    return out.str();
}

std::vector<EgoNetwork> networks_from_csv(const std::string& text, bool interpolate) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty trajectory CSV");
    auto header = split_line(line);
    if (header != std::vector<std::string>{"ego_id", "user_id", "segment", "dimension",
                                           "score"}) {
        throw DataError("unexpected trajectory CSV header");
    }
    std::vector<TrajectoryRecord> records;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto f = split_line(line);
        if (f.size() != 5) {
            throw DataError("line " + std::to_string(line_no) + ": expected 5 fields");
        }
        TrajectoryRecord r;
        r.ego_id = f[0];
        r.user_id = f[1];
        r.segment = static_cast<int>(parse_score(f[2], line_no));
        r.dimension = f[3];
        r.score = parse_score(f[4], line_no);
        records.push_back(std::move(r));
    }
    return assemble(records, interpolate);
}

std::string networks_to_json(const std::vector<EgoNetwork>& nets) {
    json out = json::array();
    for (const auto& net : nets) {
        json jn;
        jn["ego_id"] = net.ego_id;
        jn["alters"] = net.alter_ids;
        jn["segments"] = net.num_segments();
        json profiles = json::object();
        for (std::size_t u = 0; u < net.num_users(); ++u) {
            json per_segment = json::array();
            for (const auto& p : net.trajectories[u]) {
                json scores = json::object();
                for (ValueDimension d : kAllDimensions) {
                    scores[dimension_name(d)] = p[d];
                }
                per_segment.push_back(scores);
            }
            profiles[net.user_id(u)] = per_segment;
        }
        jn["profiles"] = profiles;
        out.push_back(std::move(jn));
    }
    json doc;
    doc["format_version"] = 1;
    doc["networks"] = out;
    return doc.dump(2);
}

std::vector<EgoNetwork> networks_from_json(const std::string& text, bool interpolate) {
    json doc = json::parse(text);
    std::vector<TrajectoryRecord> records;
    for (const auto& jn : doc.at("networks")) {
        std::string ego_id = jn.at("ego_id");
        std::vector<std::string> users;
        users.push_back(ego_id);
        for (const auto& a : jn.at("alters")) users.push_back(a.get<std::string>());
        for (const auto& uid : users) {
            const auto& segs = jn.at("profiles").at(uid);
            for (std::size_t s = 0; s < segs.size(); ++s) {
                for (auto it = segs[s].begin(); it != segs[s].end(); ++it) {
                    records.push_back({ego_id, uid, static_cast<int>(s), it.key(),
                                       it.value().get<double>()});
                }
            }
        }
    }
    return assemble(records, interpolate);
}

std::vector<EgoNetwork> load_trajectories(const std::string& path,
                                          const std::string& format, bool interpolate) {
    std::string text = read_file(path);
    if (format == "csv") return networks_from_csv(text, interpolate);
    if (format == "json") return networks_from_json(text, interpolate);
    throw DataError("unknown trajectory format: '" + format + "'");
}

EgoNetwork interpolate_gaps(const EgoNetwork& net) {
    EgoNetwork out = net;
    for (auto& traj : out.trajectories) {
        for (ValueDimension d : kAllDimensions) {
            std::size_t i = 0;
            while (i < traj.size()) {
                if (!std::isnan(traj[i][d])) {
                    ++i;
                    continue;
                }
                std::size_t gap_start = i;
                while (i < traj.size() && std::isnan(traj[i][d])) ++i;
                if (gap_start == 0 || i == traj.size()) {
                    throw DataError("gap at trajectory boundary cannot be interpolated");
                }
                double before = traj[gap_start - 1][d];
                double after = traj[i][d];
                std::size_t span = i - gap_start + 1;
                for (std::size_t k = gap_start; k < i; ++k) {
                    double t = static_cast<double>(k - gap_start + 1) /
                               static_cast<double>(span);
                    traj[k][d] = before + t * (after - before);
                }
            }
        }
    }
    return out;
}

std::string ground_truth_to_csv(const std::vector<GroundTruth>& gt) {
    std::ostringstream out;
    out << "ego_id,true_mu,true_sigma\n";
    for (const auto& g : gt) {
        out << g.ego_id << ',' << fmt(g.true_mu) << ',' << fmt(g.true_sigma) << '\n';
    }
    return out.str();
}

std::vector<GroundTruth> ground_truth_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || split_line(line) != std::vector<std::string>{
                                       "ego_id", "true_mu", "true_sigma"}) {
        throw DataError("unexpected ground-truth CSV header");
    }
    std::vector<GroundTruth> gt;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto f = split_line(line);
        if (f.size() != 3) throw DataError("line " + std::to_string(line_no) + ": expected 3 fields");
        gt.push_back({f[0], parse_score(f[1], line_no), parse_score(f[2], line_no)});
    }
    return gt;
}

std::string dataset_to_csv(const SigmaDataset& d) {
    std::ostringstream out;
    out << "ego_id,alter_id,dimension,segment,v_i_t,v_j_t,v_i_next,mu,sigma_label\n";
    for (const auto& t : d.tuples) {
        out << t.ego_id << ',' << t.alter_id << ',' << dimension_name(t.dimension)
            << ',' << t.segment << ',' << fmt(t.v_i_t) << ',' << fmt(t.v_j_t) << ','
            << fmt(t.v_i_next) << ',' << fmt(t.mu) << ',' << fmt(t.sigma_label)
            << '\n';
    }
    return out.str();
}

SigmaDataset dataset_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) ||
        split_line(line) != std::vector<std::string>{"ego_id", "alter_id", "dimension",
                                                     "segment", "v_i_t", "v_j_t",
                                                     "v_i_next", "mu", "sigma_label"}) {
        throw DataError("unexpected sigma dataset CSV header");
    }
    SigmaDataset d;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto f = split_line(line);
        if (f.size() != 9) throw DataError("line " + std::to_string(line_no) + ": expected 9 fields");
        SigmaTuple t;
        t.ego_id = f[0];
        t.alter_id = f[1];
        t.dimension = parse_dimension(f[2]);
        t.segment = static_cast<int>(parse_score(f[3], line_no));
        t.v_i_t = parse_score(f[4], line_no);
        t.v_j_t = parse_score(f[5], line_no);
        t.v_i_next = parse_score(f[6], line_no);
        t.mu = parse_score(f[7], line_no);
        t.sigma_label = parse_score(f[8], line_no);
        d.tuples.push_back(std::move(t));
    }
    return d;
}

std::string traces_to_csv(const std::vector<StepTrace>& traces, const EgoNetwork& net) {
    std::ostringstream out;
    out << "step,user_id,dimension,score\n";
    for (const auto& tr : traces) {
        for (std::size_t u = 0; u < tr.snapshot.size(); ++u) {
            for (ValueDimension d : kAllDimensions) {
                out << tr.step << ',' << net.user_id(u) << ',' << dimension_name(d)
                    << ',' << fmt(tr.snapshot[u][d]) << '\n';
            }
        }
    }
    return out.str();
}

std::string plot_hyperparam_variation(const std::vector<double>& history) {
    if (history.empty()) throw DataError("empty PSO history");
    return history_to_csv(history);
}

std::string plot_model_loss(const std::vector<std::pair<std::string, double>>& losses) {
    if (losses.empty()) throw DataError("no model losses to plot");
    std::ostringstream out;
    out << "family,mse\n";
    for (const auto& [family, loss] : losses) out << family << ',' << fmt(loss) << '\n';
    return out.str();
}

std::string plot_actual_vs_predicted(const std::vector<double>& actual,
                                     const std::vector<double>& predicted) {
    if (actual.empty() || actual.size() != predicted.size()) {
        throw DataError("actual/predicted must be non-empty and equal length");
    }
    std::ostringstream out;
    out << "index,actual,predicted\n";
    for (std::size_t i = 0; i < actual.size(); ++i) {
        out << i << ',' << fmt(actual[i]) << ',' << fmt(predicted[i]) << '\n';
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
}

}  // namespace bcm
