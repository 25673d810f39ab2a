#include "rdiff/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <thread>

#include "rdiff/engine.hpp"
#include "rdiff/errors.hpp"

namespace rdiff {

namespace {

constexpr std::int64_t kCaptureSkip = 500;

NetworkTopology make_graph(const ScenarioConfig& c, RngStream& rng, std::vector<Point>& positions) {
    switch (c.topology.kind) {
    case TopologySpec::Kind::RandomGeometric: {
        GeometricGraph g = random_geometric(c.n_agents, c.topology.radius, c.topology.band_gap, rng,
                                            c.topology.max_attempts, c.topology.min_degree);
        positions = std::move(g.positions);
        return std::move(g.topology);
    }
    case TopologySpec::Kind::ErdosRenyi: return erdos_renyi(c.n_agents, c.topology.p, rng);
    case TopologySpec::Kind::Complete: return complete_graph(c.n_agents);
    case TopologySpec::Kind::Explicit: return NetworkTopology(c.n_agents, c.topology.edges);
    }
    return NetworkTopology(c.n_agents);
}

std::vector<int> assign_clusters(const ScenarioConfig& c, const std::vector<Point>& positions) {
    std::vector<int> cl(c.n_agents, 0);
    if (c.clusters.kind == ClusterSpec::Kind::Diagonal) {
        for (int k = 0; k < c.n_agents; ++k) cl[k] = positions[k].x + positions[k].y < 1.0 ? 0 : 1;
    } else if (c.clusters.kind == ClusterSpec::Kind::Explicit) {
        std::vector<json> seen;
        for (int k = 0; k < c.n_agents; ++k) {
            json repr = std::visit(
                [](const auto& m) {
                    using T = std::decay_t<decltype(m)>;
                    if constexpr (std::is_same_v<T, StationaryTarget>)
                        return json{{"s", m.base}};
                    else
                        return json{{"c", m.center}, {"a", m.amplitude}, {"o", m.omega}, {"p", m.phase}};
                },
                c.clusters.targets[k]);
            auto it = std::find(seen.begin(), seen.end(), repr);
            cl[k] = static_cast<int>(it - seen.begin());
            if (it == seen.end()) seen.push_back(repr);
        }
    }
    return cl;
}

bool dominance_ok(const NetworkTopology& topo, const std::vector<AgentId>& chosen,
                  const std::vector<int>& cluster, double factor) {
    if (factor <= 0.0) return true;
    const int n = topo.n_agents();
    std::vector<std::uint8_t> comp(n, 0), victim(n, 0);
    for (AgentId a : chosen) comp[a] = 1;
    for (AgentId a : chosen)
        for (AgentId l : topo.neighbors(a))
            if (!comp[l]) victim[l] = 1;
    for (AgentId k = 0; k < n; ++k) {
        if (comp[k] || victim[k]) continue;
        int nv = 0, nn = 0;
        for (AgentId l : topo.neighbors(k)) {
            if (victim[l])
                ++nv;
            else if (!comp[l] && cluster[l] == cluster[k])
                ++nn;
        }
        if (nn == 0) return false;
        if (nv > 0 && static_cast<double>(nn) < factor * nv) return false;
    }
    return true;
}

bool select_disjoint(const NetworkTopology& topo, const std::vector<int>& cluster,
                     const SelectionSpec& sel, RngStream& rng, std::vector<AgentId>& out) {
    const int n = topo.n_agents();
    std::vector<AgentId> order(n);
    for (int t = 0; t < sel.max_tries; ++t) {
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng.engine());
        std::vector<std::uint8_t> used(n, 0);
        std::vector<AgentId> chosen;
        for (AgentId a : order) {
            bool clash = used[a] != 0;
            for (AgentId l : topo.neighbors(a)) clash = clash || used[l] != 0;
            if (clash) continue;
            chosen.push_back(a);
            used[a] = 1;
            for (AgentId l : topo.neighbors(a)) used[l] = 1;
            if (static_cast<int>(chosen.size()) == sel.count) break;
        }
        if (static_cast<int>(chosen.size()) == sel.count &&
            dominance_ok(topo, chosen, cluster, sel.dominance)) {
            std::sort(chosen.begin(), chosen.end());
            out = std::move(chosen);
            return true;
        }
    }
    return false;
}

bool cluster_majority_ok(const NetworkTopology& g, const std::vector<int>& cluster) {
    for (AgentId k = 0; k < g.n_agents(); ++k) {
        int same = 0, other = 0;
        for (AgentId l : g.neighbors(k)) (cluster[l] == cluster[k] ? same : other) += 1;
        if (other >= same && other > 0) return false;
    }
    return true;
}

NetworkBuild build_network_seeded(const ScenarioConfig& c, std::uint64_t seed) {
    RngStream graph_rng(seed, StreamPurpose::Topology, 0);
    RngStream select_rng(seed, StreamPurpose::Topology, 2);
    const bool disjoint = c.attack && c.attack->selection.kind == SelectionSpec::Kind::Disjoint;
    const bool random_graph = c.topology.kind == TopologySpec::Kind::RandomGeometric ||
                              c.topology.kind == TopologySpec::Kind::ErdosRenyi;
    const bool majority = c.topology.cluster_majority &&
                          c.topology.kind == TopologySpec::Kind::RandomGeometric;
    const int graph_attempts = ((disjoint || majority) && random_graph) ? c.topology.max_attempts : 1;
    for (int attempt = 0; attempt < graph_attempts; ++attempt) {
        NetworkBuild b;
        b.topology = make_graph(c, graph_rng, b.positions);
        b.cluster = assign_clusters(c, b.positions);
        if (majority && !cluster_majority_ok(b.topology, b.cluster)) continue;
        if (c.attack) {
            switch (c.attack->selection.kind) {
            case SelectionSpec::Kind::Disjoint:
                if (!select_disjoint(b.topology, b.cluster, c.attack->selection, select_rng, b.compromised))
                    continue;
                break;
            case SelectionSpec::Kind::DominatingSet:
                b.compromised = greedy_dominating_set(b.topology);
                break;
            case SelectionSpec::Kind::Explicit:
                b.compromised = c.attack->selection.nodes;
                break;
            }
        }
        return b;
    }
    if (!disjoint) throw ConfigError("topology.cluster_majority", "no sampled graph has cluster majorities");
    throw ConfigError("attack.selection", "no topology admits the requested compromised set");
}

std::size_t cross_links(const std::vector<Link>& links, const std::vector<int>& cluster) {
    return static_cast<std::size_t>(std::count_if(links.begin(), links.end(), [&](const Link& e) {
        return cluster[e.a] != cluster[e.b];
    }));
}

template <class Fn>
void parallel_for(int count, Fn&& fn) {
    const int workers = std::max(1, std::min<int>(count, static_cast<int>(std::thread::hardware_concurrency())));
    if (workers <= 1) {
        for (int t = 0; t < count; ++t) fn(t);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int t = w; t < count; t += workers) {
                try {
                    fn(t);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

void round_numbers(json& j) {
    if (j.is_number_float()) {
        const double x = j.get<double>();
        j = std::isfinite(x) ? json(round_sig(x)) : json(nullptr);
    } else if (j.is_structured()) {
        for (auto& v : j) round_numbers(v);
    }
}

} // namespace

std::uint64_t run_seed(const ScenarioConfig& config, int index) {
    return derive_seed(config.seed, StreamPurpose::Run, static_cast<std::uint64_t>(index));
}

NetworkBuild build_network(const ScenarioConfig& config, int index) {
    config.validate();
    return build_network_seeded(config, run_seed(config, index));
}

SimulationTrace run_single(const ScenarioConfig& config, int index) {
    config.validate();
    const std::uint64_t seed = run_seed(config, index);
    NetworkBuild net = build_network_seeded(config, seed);
    const int n = config.n_agents;

    SimulationTrace tr;
    tr.n_agents = n;
    tr.dim = config.M;
    tr.iterations = config.iterations;
    tr.seed = seed;
    tr.cluster = net.cluster;
    tr.positions = net.positions;

    RngStream noise_rng(seed, StreamPurpose::Topology, 1);
    tr.noise.resize(n);
    for (auto& nm : tr.noise) {
        nm.sigma_u_sq = noise_rng.uniform(config.noise.sigma_u_sq.lo, config.noise.sigma_u_sq.hi);
        nm.sigma_v_sq = noise_rng.uniform(config.noise.sigma_v_sq.lo, config.noise.sigma_v_sq.hi);
        if (config.noise.sigma_u_sq.lo == config.noise.sigma_u_sq.hi) nm.sigma_u_sq = config.noise.sigma_u_sq.lo;
        if (config.noise.sigma_v_sq.lo == config.noise.sigma_v_sq.hi) nm.sigma_v_sq = config.noise.sigma_v_sq.lo;
    }
    tr.targets.resize(n);
    for (int k = 0; k < n; ++k)
        tr.targets[k] = config.clusters.kind == ClusterSpec::Kind::Explicit ? config.clusters.targets[k]
                                                                            : config.clusters.targets[net.cluster[k]];

    NetworkTopology topo = config.noncooperative ? NetworkTopology(n) : net.topology;
    tr.initial_links = topo.links();

    EngineParams params;
    params.mu = config.mu;
    params.nu = config.nu;
    params.prune = config.prune;
    params.prune_threshold = config.prune_threshold;
    params.prune_start = config.prune_start;
    params.resilience = config.resilience;
    if (config.attack) {
        const AttackSpec& a = *config.attack;
        AttackGoal goal{a.goal, a.trajectory};
        AttackPlan plan = plan_attack(topo, net.compromised, [&](AgentId) { return goal; });
        plan.r = a.r;
        plan.start_iteration = a.start_iteration;
        plan.guard = a.guard;
        params.attack = plan;
        params.attack_active = a.active;
        tr.compromised = plan.compromised;
        tr.victims = plan.victims;
        tr.attack_start = a.start_iteration;
        tr.attack_active = a.active;
    }

    const StateVector init = config.initial_estimate.empty() ? StateVector(config.M, 0.0) : config.initial_estimate;
    DiffusionEngine engine(topo, tr.targets, tr.noise, std::vector<StateVector>(n, init), params, seed);
    tr.initial.reserve(static_cast<std::size_t>(n) * config.M);
    for (const auto& ag : engine.agents()) tr.initial.insert(tr.initial.end(), ag.w.begin(), ag.w.end());

    tr.estimates.resize(static_cast<std::size_t>(config.iterations) * n * config.M);
    for (const auto& v : tr.victims) tr.capture.push_back({v.victim, 0, 0});
    const bool capture = config.attack && config.attack->active;

    for (std::int64_t i = 0; i < config.iterations; ++i) {
        const RoundReport& rep = engine.round();
        double* dst = tr.estimates.data() + static_cast<std::size_t>(i) * n * config.M;
        for (const auto& ag : engine.agents()) dst = std::copy(ag.w.begin(), ag.w.end(), dst);
        tr.max_weight_sum_error = std::max(tr.max_weight_sum_error, rep.max_weight_sum_error);
        for (const Link& e : rep.removed_links) tr.topology_events.push_back({i, e});
        if (config.record.weights && i % config.record.stride == 0)
            for (AgentId k = 0; k < n; ++k)
                for (const auto& [l, a] : rep.weights[k]) tr.weights.push_back({i, k, l, a});
        if (capture && i >= config.attack->start_iteration + kCaptureSkip) {
            for (std::size_t s = 0; s < tr.victims.size(); ++s) {
                const auto& va = tr.victims[s];
                const auto& wk = rep.weights[va.victim];
                const double a_att = wk.get(va.attacker, 0.0);
                double other = 0.0;
                for (const auto& [l, a] : wk)
                    if (l != va.attacker && !engine.params().attack->is_compromised(l)) other = std::max(other, a);
                ++tr.capture[s].rounds;
                if (a_att > other) ++tr.capture[s].dominated;
            }
        }
    }
    tr.final_links = engine.topology().links();
    return tr;
}

RunMetrics evaluate_run(const ScenarioConfig& config, const SimulationTrace& tr) {
    RunMetrics m;
    m.seed = tr.seed;
    const std::size_t window = steady_window(tr.iterations, config.steady_fraction);
    const std::vector<AgentId> normal = tr.normal_agents();
    m.msd = msd_empirical(tr, normal, window);

    std::vector<double> sv;
    for (AgentId k : normal) sv.push_back(tr.noise[k].sigma_v_sq);
    if (!sv.empty()) m.ncop_theory = msd_ncop(config.mu, config.M, sv);
    if (sv.size() >= 2) m.diff_theory = msd_diff(config.mu, config.M, sv);

    m.links_initial = tr.initial_links.size();
    m.links_final = tr.final_links.size();
    m.cross_cluster_initial = cross_links(tr.initial_links, tr.cluster);
    m.cross_cluster_final = cross_links(tr.final_links, tr.cluster);
    m.max_weight_sum_error = tr.max_weight_sum_error;

    if (tr.iterations == 0) return m;
    const std::size_t conv_window = steady_window(tr.iterations, config.convergence_fraction);
    const bool attacked = tr.attack_active && !tr.victims.empty();
    for (AgentId k : normal) {
        const Reference ref = true_target_reference(tr, k);
        const double rms = steady_rms_error(tr, k, ref, window);
        const double bias = steady_mean_error(tr, k, ref, conv_window);
        m.max_normal_rms = std::max(m.max_normal_rms, rms);
        m.max_normal_bias = std::max(m.max_normal_bias, bias);
        if (!(attacked && tr.victim(k))) {
            m.max_unaffected_rms = std::max(m.max_unaffected_rms, rms);
            m.max_unaffected_bias = std::max(m.max_unaffected_bias, bias);
        }
    }
    if (attacked) {
        for (const auto& va : tr.victims)
            m.verdicts.push_back(attack_success(tr, va.victim, va.goal, config.epsilon,
                                                static_cast<std::int64_t>(window)));
        for (const auto& c : tr.capture)
            if (c.rounds > 0)
                m.min_capture_fraction = std::min(m.min_capture_fraction,
                                                  static_cast<double>(c.dominated) / static_cast<double>(c.rounds));
    }
    return m;
}

ScenarioResult run_scenario(const ScenarioConfig& config, bool keep_traces) {
    config.validate();
    ScenarioResult res;
    res.runs.resize(config.runs);
    if (keep_traces) res.traces.resize(config.runs);
    parallel_for(config.runs, [&](int r) {
        SimulationTrace tr = run_single(config, r);
        res.runs[r] = evaluate_run(config, tr);
        if (keep_traces) res.traces[r] = std::move(tr);
    });
    std::vector<MsdSeries> series;
    for (const auto& r : res.runs) series.push_back(r.msd);
    res.msd = msd_average(series);
    return res;
}

SweepResult sweep_F(const ScenarioConfig& config, const std::vector<int>& F_values) {
    SweepResult out;
    for (int F : F_values) {
        ScenarioConfig c = config;
        ResilienceConfig rc = config.resilience.value_or(ResilienceConfig{});
        rc.F = F;
        c.resilience = rc;
        out.rows.push_back({F, run_scenario(c).msd.steady_state});
    }
    ScenarioConfig nc = config;
    nc.noncooperative = true;
    nc.resilience.reset();
    out.noncooperative_msd = run_scenario(nc).msd.steady_state;
    ScenarioConfig na = config;
    na.resilience.reset();
    if (na.attack) na.attack->active = false;
    out.no_attack_msd = run_scenario(na).msd.steady_state;
    return out;
}

double round_sig(double x, int digits) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

json summary_json(const ScenarioConfig& config, const ScenarioResult& result) {
    json runs = json::array();
    bool all_success = true;
    double max_normal = 0.0, max_unaffected = 0.0, max_wsum = 0.0;
    double max_normal_bias = 0.0, max_unaffected_bias = 0.0;
    std::size_t cross_final = 0;
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
        const RunMetrics& m = result.runs[r];
        json verdicts = json::array();
        for (const auto& v : m.verdicts) {
            all_success = all_success && v.success;
            verdicts.push_back({{"victim", v.victim},
                                {"success", v.success},
                                {"i_c", v.i_c ? json(*v.i_c) : json(nullptr)}});
        }
        max_normal = std::max(max_normal, m.max_normal_rms);
        max_normal_bias = std::max(max_normal_bias, m.max_normal_bias);
        max_unaffected_bias = std::max(max_unaffected_bias, m.max_unaffected_bias);
        max_unaffected = std::max(max_unaffected, m.max_unaffected_rms);
        max_wsum = std::max(max_wsum, m.max_weight_sum_error);
        cross_final += m.cross_cluster_final;
        json run{{"run", r},
                 {"seed", m.seed},
                 {"steady_state_msd", m.msd.steady_state},
                 {"steady_state_msd_db", to_db(m.msd.steady_state)},
                 {"msd_ncop_theory", m.ncop_theory},
                 {"msd_diff_theory", m.diff_theory},
                 {"links_initial", m.links_initial},
                 {"links_final", m.links_final},
                 {"cross_cluster_links_initial", m.cross_cluster_initial},
                 {"cross_cluster_links_final", m.cross_cluster_final},
                 {"max_normal_bias", m.max_normal_bias},
                 {"max_unaffected_bias", m.max_unaffected_bias},
                 {"max_normal_rms_error", m.max_normal_rms},
                 {"max_unaffected_rms_error", m.max_unaffected_rms},
                 {"max_weight_sum_error", m.max_weight_sum_error},
                 {"attack_verdicts", verdicts}};
        if (!m.verdicts.empty()) run["min_capture_fraction"] = m.min_capture_fraction;
        if (r < result.traces.size()) {
            const SimulationTrace& tr = result.traces[r];
            run["compromised"] = tr.compromised;
            json fin = json::array();
            if (tr.iterations > 0)
                for (AgentId k = 0; k < tr.n_agents; ++k) {
                    auto w = tr.estimate(tr.iterations - 1, k);
                    fin.push_back(std::vector<double>(w.begin(), w.end()));
                }
            run["final_estimates"] = fin;
        }
        runs.push_back(run);
    }
    json j{{"scenario", config.name},
           {"config", config_to_json(config)},
           {"runs", runs},
           {"aggregate",
            {{"steady_state_msd", result.msd.steady_state},
             {"steady_state_msd_db", to_db(result.msd.steady_state)},
             {"steady_window", result.msd.window},
             {"max_normal_bias", max_normal_bias},
             {"max_unaffected_bias", max_unaffected_bias},
             {"max_normal_rms_error", max_normal},
             {"max_unaffected_rms_error", max_unaffected},
             {"max_weight_sum_error", max_wsum},
             {"cross_cluster_links_final", cross_final},
             {"all_attacks_succeeded", all_success}}}};
    round_numbers(j);
    return j;
}

json sweep_json(const ScenarioConfig& config, const SweepResult& sweep) {
    json rows = json::array();
    for (const auto& r : sweep.rows)
        rows.push_back({{"F", r.F}, {"steady_state_msd", r.msd}, {"steady_state_msd_db", to_db(r.msd)}});
    json j{{"scenario", config.name},
           {"config", config_to_json(config)},
           {"sweep", rows},
           {"noncooperative_msd", sweep.noncooperative_msd},
           {"noncooperative_msd_db", to_db(sweep.noncooperative_msd)},
           {"no_attack_msd", sweep.no_attack_msd},
           {"no_attack_msd_db", to_db(sweep.no_attack_msd)}};
    round_numbers(j);
    return j;
}

void write_outputs(const std::string& out_dir, const ScenarioConfig& config, const ScenarioResult& result) {
    auto open = [&](const std::string& name) {
        const std::string path = out_dir + "/" + name;
        std::FILE* f = std::fopen(path.c_str(), "w");
        if (!f) throw std::runtime_error("cannot write " + path);
        return f;
    };
    {
        std::FILE* f = open("summary.json");
        const std::string s = summary_json(config, result).dump(2) + "\n";
        std::fputs(s.c_str(), f);
        std::fclose(f);
    }
    if (config.record.msd) {
        std::FILE* f = open("msd.csv");
        std::fputs("iteration,msd,msd_db\n", f);
        for (std::size_t i = 0; i < result.msd.per_iteration.size(); ++i) {
            const double v = result.msd.per_iteration[i];
            std::fprintf(f, "%zu,%s,%s\n", i, fmt(v).c_str(), fmt(to_db(v)).c_str());
        }
        std::fclose(f);
    }
    if (config.record.states && !result.traces.empty()) {
        std::FILE* f = open("states.csv");
        std::string header = "run,iteration,agent";
        for (std::size_t m = 0; m < config.M; ++m) header += ",w" + std::to_string(m);
        for (std::size_t m = 0; m < config.M; ++m) header += ",target" + std::to_string(m);
        std::fprintf(f, "%s\n", header.c_str());
        for (std::size_t r = 0; r < result.traces.size(); ++r) {
            const SimulationTrace& tr = result.traces[r];
            for (std::int64_t i = 0; i < tr.iterations; i += config.record.stride)
                for (AgentId k = 0; k < tr.n_agents; ++k) {
                    std::string row = std::to_string(r) + "," + std::to_string(i) + "," + std::to_string(k);
                    for (double x : tr.estimate(i, k)) row += "," + fmt(x);
                    for (double x : eval_target(tr.targets[k], i)) row += "," + fmt(x);
                    std::fprintf(f, "%s\n", row.c_str());
                }
        }
        std::fclose(f);
    }
    if (config.record.weights && !result.traces.empty()) {
        std::FILE* f = open("weights.csv");
        std::fputs("run,iteration,agent,neighbor,weight\n", f);
        for (std::size_t r = 0; r < result.traces.size(); ++r)
            for (const auto& w : result.traces[r].weights)
                std::fprintf(f, "%zu,%lld,%d,%d,%s\n", r, static_cast<long long>(w.iteration), w.k, w.l,
                             fmt(w.weight).c_str());
        std::fclose(f);
    }
    if (config.record.topology_events && !result.traces.empty()) {
        std::FILE* f = open("topology_events.csv");
        std::fputs("run,iteration,agent_a,agent_b\n", f);
        for (std::size_t r = 0; r < result.traces.size(); ++r)
            for (const auto& e : result.traces[r].topology_events)
                std::fprintf(f, "%zu,%lld,%d,%d\n", r, static_cast<long long>(e.iteration), e.link.a, e.link.b);
        std::fclose(f);
    }
}

} // namespace rdiff
