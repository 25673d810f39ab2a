#include <fstream>
#include <set>
#include <sstream>

#include "rdiff/errors.hpp"
#include "rdiff/scenario.hpp"

namespace rdiff {

namespace {

using Kind = json::value_t;

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw ConfigError(join(path, it.key()), "unknown field");
}

const json* field(const json& j, const char* key) {
    auto it = j.find(key);
    return (it == j.end() || it->is_null()) ? nullptr : &*it;
}

double get_number(const json& j, const char* key, const std::string& path, double fallback) {
    const json* f = field(j, key);
    if (!f) return fallback;
    if (!f->is_number()) throw ConfigError(join(path, key), "expected a number");
    return f->get<double>();
}

std::int64_t get_int(const json& j, const char* key, const std::string& path,
                     std::int64_t fallback) {
    const json* f = field(j, key);
    if (!f) return fallback;
    if (!f->is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
    return f->get<std::int64_t>();
}

std::uint64_t get_uint(const json& j, const char* key, const std::string& path,
                       std::uint64_t fallback) {
    const json* f = field(j, key);
    if (!f) return fallback;
    if (!f->is_number_unsigned()) throw ConfigError(join(path, key), "expected a non-negative integer");
    return f->get<std::uint64_t>();
}

bool get_bool(const json& j, const char* key, const std::string& path, bool fallback) {
    const json* f = field(j, key);
    if (!f) return fallback;
    if (!f->is_boolean()) throw ConfigError(join(path, key), "expected true or false");
    return f->get<bool>();
}

std::string get_string(const json& j, const char* key, const std::string& path,
                       const std::string& fallback) {
    const json* f = field(j, key);
    if (!f) return fallback;
    if (!f->is_string()) throw ConfigError(join(path, key), "expected a string");
    return f->get<std::string>();
}

StateVector parse_vector(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
    StateVector v;
    for (std::size_t m = 0; m < j.size(); ++m) {
        if (!j[m].is_number()) throw ConfigError(path + "[" + std::to_string(m) + "]", "expected a number");
        v.push_back(j[m].get<double>());
    }
    return v;
}

Range parse_range(const json& j, const std::string& path) {
    StateVector v = parse_vector(j, path);
    if (v.size() != 2) throw ConfigError(path, "expected [lo, hi]");
    return {v[0], v[1]};
}

json target_to_json(const TargetModel& t) {
    if (const auto* s = std::get_if<StationaryTarget>(&t))
        return {{"kind", "stationary"}, {"base", s->base}};
    const auto& c = std::get<CircularTarget>(t);
    return {{"kind", "circular"}, {"center", c.center}, {"amplitude", c.amplitude},
            {"omega", c.omega}, {"phase", c.phase}};
}

TargetModel parse_target(const json& j, const std::string& path) {
    const std::string kind = get_string(j, "kind", path, "stationary");
    if (kind == "stationary") {
        check_keys(j, path, {"kind", "base"});
        const json* b = field(j, "base");
        if (!b) throw ConfigError(join(path, "base"), "missing");
        return StationaryTarget{parse_vector(*b, join(path, "base"))};
    }
    if (kind == "circular") {
        check_keys(j, path, {"kind", "center", "amplitude", "omega", "phase"});
        const json* c = field(j, "center");
        if (!c) throw ConfigError(join(path, "center"), "missing");
        return CircularTarget{parse_vector(*c, join(path, "center")),
                              get_number(j, "amplitude", path, 0.0),
                              get_number(j, "omega", path, 0.0), get_number(j, "phase", path, 0.0)};
    }
    throw ConfigError(join(path, "kind"), "unknown target kind '" + kind + "'");
}

json trajectory_to_json(const CircularTrajectory& t) {
    return {{"amplitude", t.amplitude},
            {"omega", t.omega},
            {"phase", t.phase},
            {"delta", t.delta == DeltaMode::Exact ? "exact" : "analytic"},
            {"correction", t.correction}};
}

CircularTrajectory parse_trajectory(const json& j, const std::string& path) {
    check_keys(j, path, {"amplitude", "omega", "phase", "delta", "correction"});
    CircularTrajectory t;
    t.amplitude = get_number(j, "amplitude", path, 0.0);
    t.omega = get_number(j, "omega", path, 0.0);
    t.phase = get_number(j, "phase", path, 0.0);
    const std::string d = get_string(j, "delta", path, "exact");
    if (d == "exact")
        t.delta = DeltaMode::Exact;
    else if (d == "analytic")
        t.delta = DeltaMode::Analytic;
    else
        throw ConfigError(join(path, "delta"), "expected 'exact' or 'analytic'");
    t.correction = get_bool(j, "correction", path, true);
    return t;
}

const char* topology_kind_name(TopologySpec::Kind k) {
    switch (k) {
    case TopologySpec::Kind::RandomGeometric: return "random_geometric";
    case TopologySpec::Kind::ErdosRenyi: return "erdos_renyi";
    case TopologySpec::Kind::Complete: return "complete";
    case TopologySpec::Kind::Explicit: return "explicit";
    }
    return "";
}

const char* cluster_kind_name(ClusterSpec::Kind k) {
    switch (k) {
    case ClusterSpec::Kind::Diagonal: return "diagonal";
    case ClusterSpec::Kind::Uniform: return "uniform";
    case ClusterSpec::Kind::Explicit: return "explicit";
    }
    return "";
}

const char* selection_kind_name(SelectionSpec::Kind k) {
    switch (k) {
    case SelectionSpec::Kind::Disjoint: return "disjoint";
    case SelectionSpec::Kind::DominatingSet: return "dominating_set";
    case SelectionSpec::Kind::Explicit: return "explicit";
    }
    return "";
}

} // namespace

json config_to_json(const ScenarioConfig& c) {
    json j;
    j["name"] = c.name;
    j["n_agents"] = c.n_agents;
    j["M"] = c.M;

    json t{{"kind", topology_kind_name(c.topology.kind)}};
    switch (c.topology.kind) {
    case TopologySpec::Kind::RandomGeometric:
        t["radius"] = c.topology.radius;
        t["band_gap"] = c.topology.band_gap;
        t["min_degree"] = c.topology.min_degree;
        t["cluster_majority"] = c.topology.cluster_majority;
        t["max_attempts"] = c.topology.max_attempts;
        break;
    case TopologySpec::Kind::ErdosRenyi: t["p"] = c.topology.p; break;
    case TopologySpec::Kind::Complete: break;
    case TopologySpec::Kind::Explicit: {
        json edges = json::array();
        for (const Link& e : c.topology.edges) edges.push_back({e.a, e.b});
        t["edges"] = edges;
        break;
    }
    }
    j["topology"] = t;

    json targets = json::array();
    for (const auto& tm : c.clusters.targets) targets.push_back(target_to_json(tm));
    j["clusters"] = {{"kind", cluster_kind_name(c.clusters.kind)}, {"targets", targets}};
    j["noise"] = {{"sigma_u_sq", {c.noise.sigma_u_sq.lo, c.noise.sigma_u_sq.hi}},
                  {"sigma_v_sq", {c.noise.sigma_v_sq.lo, c.noise.sigma_v_sq.hi}}};
    j["mu"] = c.mu;
    j["nu"] = c.nu;
    j["prune"] = c.prune;
    j["prune_threshold"] = c.prune_threshold;
    j["prune_start"] = c.prune_start;
    j["initial_estimate"] = c.initial_estimate;
    j["iterations"] = c.iterations;
    j["seed"] = c.seed;
    j["runs"] = c.runs;
    j["noncooperative"] = c.noncooperative;

    if (c.attack) {
        const AttackSpec& a = *c.attack;
        json sel{{"kind", selection_kind_name(a.selection.kind)}};
        if (a.selection.kind == SelectionSpec::Kind::Disjoint) {
            sel["count"] = a.selection.count;
            sel["dominance"] = a.selection.dominance;
            sel["max_tries"] = a.selection.max_tries;
        } else if (a.selection.kind == SelectionSpec::Kind::Explicit) {
            sel["nodes"] = a.selection.nodes;
        }
        json guard;
        if (const auto* g = std::get_if<Guarded>(&a.guard))
            guard = {{"kind", "guarded"}, {"rho", g->rho}};
        else
            guard = {{"kind", "fixed"}};
        j["attack"] = {{"selection", sel},
                       {"goal", a.goal},
                       {"trajectory", a.trajectory ? trajectory_to_json(*a.trajectory) : json()},
                       {"r", a.r},
                       {"start_iteration", a.start_iteration},
                       {"guard", guard},
                       {"active", a.active}};
    } else {
        j["attack"] = nullptr;
    }

    if (c.resilience) {
        json per = json::object();
        for (const auto& [k, f] : c.resilience->per_agent_F) per[std::to_string(k)] = f;
        j["resilience"] = {{"F", c.resilience->F}, {"per_agent_F", per},
                           {"window_n", c.resilience->window_n}};
    } else {
        j["resilience"] = nullptr;
    }

    j["record"] = {{"states", c.record.states},
                   {"weights", c.record.weights},
                   {"topology_events", c.record.topology_events},
                   {"msd", c.record.msd},
                   {"stride", c.record.stride}};
    j["epsilon"] = c.epsilon;
    j["steady_fraction"] = c.steady_fraction;
    j["convergence_fraction"] = c.convergence_fraction;
    return j;
}

ScenarioConfig config_from_json(const json& j) {
    check_keys(j, "", {"name", "n_agents", "M", "topology", "clusters", "noise", "mu", "nu",
                       "prune", "prune_threshold", "prune_start", "initial_estimate",
                       "iterations", "seed", "runs", "noncooperative", "attack", "resilience",
                       "record", "epsilon", "steady_fraction", "convergence_fraction"});
    ScenarioConfig c;
    c.name = get_string(j, "name", "", c.name);
    c.n_agents = static_cast<int>(get_int(j, "n_agents", "", c.n_agents));
    const std::int64_t M = get_int(j, "M", "", static_cast<std::int64_t>(c.M));
    if (M < 1) throw ConfigError("M", "must be >= 1");
    c.M = static_cast<std::size_t>(M);

    if (const json* t = field(j, "topology")) {
        check_keys(*t, "topology", {"kind", "radius", "band_gap", "min_degree", "cluster_majority", "max_attempts", "p", "edges"});
        const std::string kind = get_string(*t, "kind", "topology", "random_geometric");
        if (kind == "random_geometric")
            c.topology.kind = TopologySpec::Kind::RandomGeometric;
        else if (kind == "erdos_renyi")
            c.topology.kind = TopologySpec::Kind::ErdosRenyi;
        else if (kind == "complete")
            c.topology.kind = TopologySpec::Kind::Complete;
        else if (kind == "explicit")
            c.topology.kind = TopologySpec::Kind::Explicit;
        else
            throw ConfigError("topology.kind", "unknown topology '" + kind + "'");
        c.topology.radius = get_number(*t, "radius", "topology", c.topology.radius);
        c.topology.band_gap = get_number(*t, "band_gap", "topology", c.topology.band_gap);
        c.topology.min_degree =
            static_cast<int>(get_int(*t, "min_degree", "topology", c.topology.min_degree));
        c.topology.max_attempts =
            static_cast<int>(get_int(*t, "max_attempts", "topology", c.topology.max_attempts));
        c.topology.cluster_majority =
            get_bool(*t, "cluster_majority", "topology", c.topology.cluster_majority);
        c.topology.p = get_number(*t, "p", "topology", c.topology.p);
        if (const json* e = field(*t, "edges")) {
            if (!e->is_array()) throw ConfigError("topology.edges", "expected an array");
            for (std::size_t n = 0; n < e->size(); ++n) {
                const json& p = (*e)[n];
                const std::string path = "topology.edges[" + std::to_string(n) + "]";
                if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
                    !p[1].is_number_integer())
                    throw ConfigError(path, "expected [a, b]");
                int a = p[0].get<int>(), b = p[1].get<int>();
                if (a > b) std::swap(a, b);
                c.topology.edges.push_back({a, b});
            }
        }
    }

    if (const json* cl = field(j, "clusters")) {
        check_keys(*cl, "clusters", {"kind", "targets"});
        const std::string kind = get_string(*cl, "kind", "clusters", "diagonal");
        if (kind == "diagonal")
            c.clusters.kind = ClusterSpec::Kind::Diagonal;
        else if (kind == "uniform")
            c.clusters.kind = ClusterSpec::Kind::Uniform;
        else if (kind == "explicit")
            c.clusters.kind = ClusterSpec::Kind::Explicit;
        else
            throw ConfigError("clusters.kind", "unknown cluster kind '" + kind + "'");
        if (const json* ts = field(*cl, "targets")) {
            if (!ts->is_array()) throw ConfigError("clusters.targets", "expected an array");
            for (std::size_t n = 0; n < ts->size(); ++n)
                c.clusters.targets.push_back(
                    parse_target((*ts)[n], "clusters.targets[" + std::to_string(n) + "]"));
        }
    }

    if (const json* nz = field(j, "noise")) {
        check_keys(*nz, "noise", {"sigma_u_sq", "sigma_v_sq"});
        if (const json* f = field(*nz, "sigma_u_sq")) c.noise.sigma_u_sq = parse_range(*f, "noise.sigma_u_sq");
        if (const json* f = field(*nz, "sigma_v_sq")) c.noise.sigma_v_sq = parse_range(*f, "noise.sigma_v_sq");
    }

    c.mu = get_number(j, "mu", "", c.mu);
    c.nu = get_number(j, "nu", "", c.nu);
    c.prune = get_bool(j, "prune", "", c.prune);
    c.prune_threshold = get_number(j, "prune_threshold", "", c.prune_threshold);
    c.prune_start = get_int(j, "prune_start", "", c.prune_start);
    if (const json* f = field(j, "initial_estimate")) c.initial_estimate = parse_vector(*f, "initial_estimate");
    c.iterations = get_int(j, "iterations", "", c.iterations);
    c.seed = get_uint(j, "seed", "", c.seed);
    c.runs = static_cast<int>(get_int(j, "runs", "", c.runs));
    c.noncooperative = get_bool(j, "noncooperative", "", c.noncooperative);

    if (const json* a = field(j, "attack")) {
        check_keys(*a, "attack", {"selection", "goal", "trajectory", "r", "start_iteration", "guard", "active"});
        AttackSpec s;
        if (const json* sel = field(*a, "selection")) {
            const std::string p = "attack.selection";
            check_keys(*sel, p, {"kind", "count", "dominance", "max_tries", "nodes"});
            const std::string kind = get_string(*sel, "kind", p, "disjoint");
            if (kind == "disjoint")
                s.selection.kind = SelectionSpec::Kind::Disjoint;
            else if (kind == "dominating_set")
                s.selection.kind = SelectionSpec::Kind::DominatingSet;
            else if (kind == "explicit")
                s.selection.kind = SelectionSpec::Kind::Explicit;
            else
                throw ConfigError(p + ".kind", "unknown selection '" + kind + "'");
            s.selection.count = static_cast<int>(get_int(*sel, "count", p, s.selection.count));
            s.selection.dominance = get_number(*sel, "dominance", p, s.selection.dominance);
            s.selection.max_tries = static_cast<int>(get_int(*sel, "max_tries", p, s.selection.max_tries));
            if (const json* nodes = field(*sel, "nodes")) {
                if (!nodes->is_array()) throw ConfigError(p + ".nodes", "expected an array");
                for (std::size_t n = 0; n < nodes->size(); ++n) {
                    if (!(*nodes)[n].is_number_integer())
                        throw ConfigError(p + ".nodes[" + std::to_string(n) + "]", "expected an integer");
                    s.selection.nodes.push_back((*nodes)[n].get<int>());
                }
            }
        }
        if (const json* g = field(*a, "goal")) s.goal = parse_vector(*g, "attack.goal");
        if (const json* tr = field(*a, "trajectory")) s.trajectory = parse_trajectory(*tr, "attack.trajectory");
        s.r = get_number(*a, "r", "attack", s.r);
        s.start_iteration = get_int(*a, "start_iteration", "attack", s.start_iteration);
        if (const json* g = field(*a, "guard")) {
            check_keys(*g, "attack.guard", {"kind", "rho"});
            const std::string kind = get_string(*g, "kind", "attack.guard", "fixed");
            if (kind == "fixed")
                s.guard = FixedR{};
            else if (kind == "guarded")
                s.guard = Guarded{get_number(*g, "rho", "attack.guard", 0.1)};
            else
                throw ConfigError("attack.guard.kind", "expected 'fixed' or 'guarded'");
        }
        s.active = get_bool(*a, "active", "attack", s.active);
        c.attack = std::move(s);
    }

    if (const json* r = field(j, "resilience")) {
        check_keys(*r, "resilience", {"F", "per_agent_F", "window_n"});
        ResilienceConfig rc;
        rc.F = static_cast<int>(get_int(*r, "F", "resilience", 0));
        const std::int64_t wn = get_int(*r, "window_n", "resilience", 100);
        if (wn < 1) throw ConfigError("resilience.window_n", "must be >= 1");
        rc.window_n = static_cast<std::size_t>(wn);
        if (const json* per = field(*r, "per_agent_F")) {
            if (!per->is_object()) throw ConfigError("resilience.per_agent_F", "expected an object");
            for (auto it = per->begin(); it != per->end(); ++it) {
                const std::string path = "resilience.per_agent_F." + it.key();
                if (!it->is_number_integer()) throw ConfigError(path, "expected an integer");
                int k = 0;
                try {
                    std::size_t used = 0;
                    k = std::stoi(it.key(), &used);
                    if (used != it.key().size()) throw std::invalid_argument("trailing");
                } catch (const std::exception&) {
                    throw ConfigError(path, "key must be an agent id");
                }
                rc.per_agent_F[k] = it->get<int>();
            }
        }
        c.resilience = rc;
    }

    if (const json* rec = field(j, "record")) {
        check_keys(*rec, "record", {"states", "weights", "topology_events", "msd", "stride"});
        c.record.states = get_bool(*rec, "states", "record", c.record.states);
        c.record.weights = get_bool(*rec, "weights", "record", c.record.weights);
        c.record.topology_events = get_bool(*rec, "topology_events", "record", c.record.topology_events);
        c.record.msd = get_bool(*rec, "msd", "record", c.record.msd);
        c.record.stride = get_int(*rec, "stride", "record", c.record.stride);
    }
    c.epsilon = get_number(j, "epsilon", "", c.epsilon);
    c.steady_fraction = get_number(j, "steady_fraction", "", c.steady_fraction);
    c.convergence_fraction = get_number(j, "convergence_fraction", "", c.convergence_fraction);
    c.validate();
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open file");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path, e.what());
    }
    return config_from_json(j);
}

void ScenarioConfig::validate() const {
    if (n_agents < 1) throw ConfigError("n_agents", "must be >= 1");
    if (M < 1) throw ConfigError("M", "must be >= 1");
    if (!(mu >= 0.0)) throw ConfigError("mu", "must be >= 0");
    if (!(nu > 0.0 && nu <= 1.0)) throw ConfigError("nu", "must be in (0, 1]");
    if (!(prune_threshold > 0.0)) throw ConfigError("prune_threshold", "must be > 0");
    if (prune_start < 0) throw ConfigError("prune_start", "must be >= 0");
    if (iterations < 0) throw ConfigError("iterations", "must be >= 0");
    if (runs < 1) throw ConfigError("runs", "must be >= 1");
    if (!(epsilon > 0.0)) throw ConfigError("epsilon", "must be > 0");
    if (!(steady_fraction > 0.0 && steady_fraction <= 1.0))
        throw ConfigError("steady_fraction", "must be in (0, 1]");
    if (!(convergence_fraction > 0.0 && convergence_fraction <= 1.0))
        throw ConfigError("convergence_fraction", "must be in (0, 1]");
    if (!initial_estimate.empty() && initial_estimate.size() != M)
        throw ConfigError("initial_estimate", "must have M entries");

    switch (topology.kind) {
    case TopologySpec::Kind::RandomGeometric:
        if (!(topology.radius > 0.0)) throw ConfigError("topology.radius", "must be > 0");
        if (!(topology.band_gap >= 0.0 && topology.band_gap < 1.0))
            throw ConfigError("topology.band_gap", "must be in [0, 1)");
        if (topology.min_degree < 0) throw ConfigError("topology.min_degree", "must be >= 0");
        if (topology.max_attempts < 1) throw ConfigError("topology.max_attempts", "must be >= 1");
        break;
    case TopologySpec::Kind::ErdosRenyi:
        if (!(topology.p >= 0.0 && topology.p <= 1.0)) throw ConfigError("topology.p", "must be in [0, 1]");
        break;
    case TopologySpec::Kind::Complete: break;
    case TopologySpec::Kind::Explicit:
        for (std::size_t n = 0; n < topology.edges.size(); ++n) {
            const Link& e = topology.edges[n];
            if (e.a < 0 || e.b >= n_agents || e.a == e.b)
                throw ConfigError("topology.edges[" + std::to_string(n) + "]", "invalid agent pair");
        }
        break;
    }

    const std::size_t need = clusters.kind == ClusterSpec::Kind::Diagonal  ? 2
                             : clusters.kind == ClusterSpec::Kind::Uniform ? 1
                                                                          : static_cast<std::size_t>(n_agents);
    if (clusters.targets.size() != need)
        throw ConfigError("clusters.targets", "expected " + std::to_string(need) + " targets");
    if (clusters.kind == ClusterSpec::Kind::Diagonal && topology.kind != TopologySpec::Kind::RandomGeometric)
        throw ConfigError("clusters.kind", "diagonal clusters need a random_geometric topology");
    for (std::size_t n = 0; n < clusters.targets.size(); ++n) {
        try {
            validate_target(clusters.targets[n], M);
        } catch (const std::exception& e) {
            throw ConfigError("clusters.targets[" + std::to_string(n) + "]", e.what());
        }
    }

    auto check_range = [](const Range& r, const char* path) {
        if (!(r.lo > 0.0 && r.hi >= r.lo)) throw ConfigError(path, "need 0 < lo <= hi");
    };
    check_range(noise.sigma_u_sq, "noise.sigma_u_sq");
    check_range(noise.sigma_v_sq, "noise.sigma_v_sq");

    if (attack) {
        const AttackSpec& a = *attack;
        if (a.goal.size() != M) throw ConfigError("attack.goal", "must have M entries");
        if (!(a.r > 0.0 && a.r < 1.0)) throw ConfigError("attack.r", "must be in (0, 1)");
        if (a.start_iteration < 0) throw ConfigError("attack.start_iteration", "must be >= 0");
        if (a.trajectory && M != 2) throw ConfigError("attack.trajectory", "requires M = 2");
        if (const auto* g = std::get_if<Guarded>(&a.guard); g && !(g->rho > 0.0 && g->rho < 1.0))
            throw ConfigError("attack.guard.rho", "must be in (0, 1)");
        if (a.selection.kind == SelectionSpec::Kind::Disjoint) {
            if (a.selection.count < 1) throw ConfigError("attack.selection.count", "must be >= 1");
            if (a.selection.dominance < 0.0) throw ConfigError("attack.selection.dominance", "must be >= 0");
            if (a.selection.max_tries < 1) throw ConfigError("attack.selection.max_tries", "must be >= 1");
        }
        if (a.selection.kind == SelectionSpec::Kind::Explicit)
            for (std::size_t n = 0; n < a.selection.nodes.size(); ++n)
                if (a.selection.nodes[n] < 0 || a.selection.nodes[n] >= n_agents)
                    throw ConfigError("attack.selection.nodes[" + std::to_string(n) + "]", "not an agent id");
    }
    if (resilience) {
        if (resilience->F < 0) throw ConfigError("resilience.F", "must be >= 0");
        if (resilience->window_n < 1) throw ConfigError("resilience.window_n", "must be >= 1");
        for (const auto& [k, f] : resilience->per_agent_F)
            if (k < 0 || k >= n_agents || f < 0)
                throw ConfigError("resilience.per_agent_F." + std::to_string(k), "invalid entry");
    }
    if (record.stride < 1) throw ConfigError("record.stride", "must be >= 1");
}

} // namespace rdiff
