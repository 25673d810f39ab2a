#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdiff/attack.hpp"
#include "rdiff/model.hpp"
#include "rdiff/topology.hpp"

namespace rdiff {

struct TopologyEvent {
    std::int64_t iteration = 0;
    Link link;
};

struct WeightRecord {
    std::int64_t iteration = 0;
    AgentId k = 0; // receiver
    AgentId l = 0; // neighbor
    double weight = 0.0;
};

// Per-victim count of rounds in which the designated attacker held the
// strictly largest weight.
struct CaptureStats {
    AgentId victim = 0;
    std::int64_t rounds = 0;
    std::int64_t dominated = 0;
};

struct SimulationTrace {
    int n_agents = 0;
    std::size_t dim = 0;
    std::int64_t iterations = 0;
    std::uint64_t seed = 0;

    std::vector<double> initial;   // n_agents * dim
    std::vector<double> estimates; // iterations * n_agents * dim, after each round

    std::vector<TargetModel> targets;
    std::vector<int> cluster;
    std::vector<Point> positions;
    std::vector<NoiseModel> noise;

    std::vector<Link> initial_links;
    std::vector<Link> final_links;
    std::vector<TopologyEvent> topology_events;
    std::vector<WeightRecord> weights;

    std::vector<AgentId> compromised;
    std::vector<VictimAssignment> victims;
    std::int64_t attack_start = 0;
    bool attack_active = false;

    double max_weight_sum_error = 0.0;
    std::vector<CaptureStats> capture;

    std::span<const double> estimate(std::int64_t i, AgentId k) const {
        return {estimates.data() + (static_cast<std::size_t>(i) * n_agents + k) * dim, dim};
    }
    std::span<const double> initial_estimate(AgentId k) const {
        return {initial.data() + static_cast<std::size_t>(k) * dim, dim};
    }
    bool is_compromised(AgentId k) const;
    const VictimAssignment* victim(AgentId k) const;
    std::vector<AgentId> normal_agents() const;
};

} // namespace rdiff
