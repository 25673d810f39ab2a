#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdiff/attack.hpp"
#include "rdiff/metrics.hpp"
#include "rdiff/model.hpp"
#include "rdiff/resilience.hpp"
#include "rdiff/topology.hpp"
#include "rdiff/trace.hpp"

namespace rdiff {

using json = nlohmann::json;

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

struct TopologySpec {
    enum class Kind { RandomGeometric, ErdosRenyi, Complete, Explicit };
    Kind kind = Kind::RandomGeometric;
    double radius = 0.18;
    double band_gap = 0.0;
    int min_degree = 0;
    // Resample until every agent has more same-cluster than cross-cluster
    // neighbors (geometric only).
    bool cluster_majority = false;
    double p = 0.1;
    std::vector<Link> edges;
    int max_attempts = 100;
};

struct ClusterSpec {
    // Diagonal: targets[0] where x + y < 1, targets[1] elsewhere (geometric only).
    // Uniform: targets[0] for every agent. Explicit: one target per agent.
    enum class Kind { Diagonal, Uniform, Explicit };
    Kind kind = Kind::Diagonal;
    std::vector<TargetModel> targets;
};

struct NoiseSpec {
    Range sigma_u_sq{0.8, 1.2};
    Range sigma_v_sq{0.1, 0.2};
};

struct SelectionSpec {
    // Disjoint: `count` nodes with pairwise disjoint closed neighborhoods.
    // DominatingSet: greedy dominating set. Explicit: `nodes`.
    enum class Kind { Disjoint, DominatingSet, Explicit };
    Kind kind = Kind::Disjoint;
    int count = 4;
    // When > 0, every unaffected normal node next to a victim needs at least
    // this many times as many unaffected same-cluster neighbors as victim
    // neighbors (and at least one).
    double dominance = 0.0;
    int max_tries = 1000;
    std::vector<AgentId> nodes;
};

struct AttackSpec {
    SelectionSpec selection;
    StateVector goal{0.5, 0.5};
    std::optional<CircularTrajectory> trajectory;
    double r = 0.002;
    std::int64_t start_iteration = 0;
    StepGuard guard = FixedR{};
    bool active = true;
};

struct RecordSpec {
    bool states = false;
    bool weights = false;
    bool topology_events = true;
    bool msd = true;
    std::int64_t stride = 1; // row spacing for states and weights
};

struct ScenarioConfig {
    std::string name = "custom";
    int n_agents = 100;
    std::size_t M = 2;
    TopologySpec topology;
    ClusterSpec clusters;
    NoiseSpec noise;
    double mu = 0.01;
    double nu = 0.01;
    bool prune = true;
    double prune_threshold = 0.01;
    std::int64_t prune_start = 0;
    StateVector initial_estimate; // empty means zero
    std::int64_t iterations = 10000;
    std::uint64_t seed = 1;
    int runs = 1;
    bool noncooperative = false;
    std::optional<AttackSpec> attack;
    std::optional<ResilienceConfig> resilience;
    RecordSpec record;
    double epsilon = kDefaultEpsilon;
    double steady_fraction = 0.1;
    // Final fraction of the run averaged when checking that an agent's
    // estimate settles within epsilon of its target.
    double convergence_fraction = 0.5;

    void validate() const;
};

json config_to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const json& j);
ScenarioConfig load_config(const std::string& path);

std::vector<std::string> preset_names();
std::string preset_description(const std::string& name);
ScenarioConfig preset(const std::string& name);

// Seed of run `index` under the configured master seed.
std::uint64_t run_seed(const ScenarioConfig& config, int index);

struct NetworkBuild {
    NetworkTopology topology;
    std::vector<Point> positions; // empty unless geometric
    std::vector<int> cluster;
    std::vector<AgentId> compromised;
};

// Topology, cluster labels and compromised set of run `index`.
NetworkBuild build_network(const ScenarioConfig& config, int index);

SimulationTrace run_single(const ScenarioConfig& config, int index);

struct RunMetrics {
    std::uint64_t seed = 0;
    MsdSeries msd;
    double ncop_theory = 0.0;
    double diff_theory = 0.0;
    std::size_t links_initial = 0;
    std::size_t links_final = 0;
    std::size_t cross_cluster_initial = 0;
    std::size_t cross_cluster_final = 0;
    // Steady-state error of normal agents against their true targets. "bias"
    // is the distance of the window-mean estimate, "rms" the root mean square
    // distance. "unaffected" excludes victims.
    double max_normal_bias = 0.0;
    double max_unaffected_bias = 0.0;
    double max_normal_rms = 0.0;
    double max_unaffected_rms = 0.0;
    std::vector<AttackVerdict> verdicts;
    double min_capture_fraction = 1.0;
    double max_weight_sum_error = 0.0;
};

RunMetrics evaluate_run(const ScenarioConfig& config, const SimulationTrace& trace);

struct ScenarioResult {
    std::vector<SimulationTrace> traces; // empty unless kept
    std::vector<RunMetrics> runs;
    MsdSeries msd; // averaged over runs
};

ScenarioResult run_scenario(const ScenarioConfig& config, bool keep_traces = false);

struct SweepRow {
    int F = 0;
    double msd = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double noncooperative_msd = 0.0;
    double no_attack_msd = 0.0; // plain diffusion, attack inactive
};

SweepResult sweep_F(const ScenarioConfig& config, const std::vector<int>& F_values);

double round_sig(double x, int digits = 15);

json summary_json(const ScenarioConfig& config, const ScenarioResult& result);
json sweep_json(const ScenarioConfig& config, const SweepResult& sweep);

void write_outputs(const std::string& out_dir, const ScenarioConfig& config,
                   const ScenarioResult& result);

} // namespace rdiff
