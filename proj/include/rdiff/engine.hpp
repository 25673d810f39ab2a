#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rdiff/agent.hpp"
#include "rdiff/attack.hpp"
#include "rdiff/diffusion.hpp"
#include "rdiff/model.hpp"
#include "rdiff/resilience.hpp"
#include "rdiff/topology.hpp"

namespace rdiff {

struct EngineParams {
    double mu = 0.01;
    double nu = 0.01;
    bool prune = true;
    double prune_threshold = 0.01;
    std::int64_t prune_start = 0;
    std::size_t window_n = 100;
    std::optional<ResilienceConfig> resilience;
    std::optional<AttackPlan> attack;
    // With an inactive plan the compromised nodes behave like everyone else;
    // used for reference runs that must share topology and data.
    bool attack_active = true;
};

struct RoundReport {
    std::int64_t iteration = 0;
    std::vector<Observation> observations;
    std::vector<WeightAssignment> weights;     // weights used in the combination
    std::vector<WeightAssignment> raw_weights; // before resilient filtering
    std::vector<std::vector<AgentId>> filtered; // R_k(i) per agent
    std::vector<Link> removed_links;
    double max_weight_sum_error = 0.0;
};

// Synchronous adapt-then-combine rounds over a network. Every agent reads the
// state left by the previous round; new estimates are committed together at
// the end of the round.
class DiffusionEngine {
public:
    DiffusionEngine(NetworkTopology topology, std::vector<TargetModel> targets,
                    std::vector<NoiseModel> noise, std::vector<StateVector> initial,
                    EngineParams params, std::uint64_t data_seed);

    const RoundReport& round();

    std::int64_t iteration() const noexcept { return iteration_; }
    int n_agents() const noexcept { return topo_.n_agents(); }
    std::size_t dim() const noexcept { return dim_; }
    const NetworkTopology& topology() const noexcept { return topo_; }
    const std::vector<AgentState>& agents() const noexcept { return agents_; }
    const std::vector<TargetModel>& targets() const noexcept { return targets_; }
    const EngineParams& params() const noexcept { return params_; }
    bool attack_running() const noexcept;

private:
    bool frozen(AgentId k) const;
    bool protected_link(AgentId a, AgentId b) const;
    const StateVector& message(AgentId from, AgentId to) const;

    NetworkTopology topo_;
    std::vector<TargetModel> targets_;
    std::vector<NoiseModel> noise_;
    EngineParams params_;
    std::size_t dim_ = 0;
    std::vector<AgentState> agents_;
    std::vector<RngStream> data_rng_;
    std::vector<std::uint8_t> compromised_;
    std::vector<int> victim_slot_;
    std::vector<StateVector> crafted_;
    std::vector<std::uint8_t> crafted_valid_;
    std::vector<std::optional<StateVector>> last_reconstructed_;
    std::vector<StateVector> next_w_;
    RoundReport report_;
    std::int64_t iteration_ = 0;
};

} // namespace rdiff
