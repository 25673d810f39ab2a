#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "rdiff/agent.hpp"
#include "rdiff/model.hpp"
#include "rdiff/topology.hpp"

namespace rdiff {

// How delta_theta(i) is evaluated. Exact: theta(i+1) - theta(i).
// Analytic: the derivative-style closed form
// 2*pi*omega*amplitude*[-sin(2*pi*omega*i + phase), cos(2*pi*omega*i + phase)].
enum class DeltaMode { Exact, Analytic };

// theta(i) = amplitude * [cos(2*pi*omega*i + phase), sin(2*pi*omega*i + phase)]
struct CircularTrajectory {
    double amplitude = 0.0;
    double omega = 0.0;
    double phase = 0.0;
    DeltaMode delta = DeltaMode::Exact;
    // When false, attack_reference drops the delta_theta / r term.
    bool correction = true;

    StateVector theta(std::int64_t i) const;
    StateVector delta_theta(std::int64_t i) const;
};

struct AttackGoal {
    StateVector base; // w^a
    std::optional<CircularTrajectory> trajectory;

    // Point the victim should sit at after round i: base + theta(i).
    StateVector desired(std::int64_t i) const;
};

struct FixedR {};
struct Guarded {
    double rho = 0.1;
};
using StepGuard = std::variant<FixedR, Guarded>;

struct VictimAssignment {
    AgentId victim = 0;
    AgentId attacker = 0; // designated attacker
    AttackGoal goal;
};

struct AttackPlan {
    std::vector<AgentId> compromised; // sorted
    std::vector<VictimAssignment> victims; // sorted by victim id
    double r = 0.002;
    std::int64_t start_iteration = 0;
    StepGuard guard = FixedR{};

    bool is_compromised(AgentId k) const;
    const VictimAssignment* victim(AgentId k) const;
    void validate(const NetworkTopology& topo) const;
};

// Solves psi = w + mu u^T (d - u w) for w using
// (I - mu u^T u)^{-1} = I + mu u^T u / (1 - mu |u|^2).
StateVector reconstruct_victim_state(std::span<const double> psi_k, const Observation& obs_k,
                                     double mu_k);

// x_i: base when stationary, base + theta(i-1) + delta_theta(i-1) / r otherwise.
StateVector attack_reference(const AttackGoal& goal, double r, std::int64_t i);

// w + r_eff (x - w)
StateVector craft_message(std::span<const double> w_victim_prev, std::span<const double> x_i,
                          double r_eff);

// r when |r (x - w)| <= rho * min_l |psi_l - w|, else 0.
double guard_step_size(double r, std::span<const double> x_i,
                       std::span<const double> w_victim_prev,
                       std::span<const StateVector> neighbor_psis, double rho);

std::vector<AgentId> greedy_dominating_set(const NetworkTopology& topo);

// Exhaustive minimum dominating set, for small graphs (n <= 20).
std::vector<AgentId> minimum_dominating_set(const NetworkTopology& topo);

using GoalFactory = std::function<AttackGoal(AgentId victim)>;

// Every normal neighbor of a compromised node becomes a victim. Its attacker
// is the smallest compromised neighbor; the others echo that message.
AttackPlan plan_attack(const NetworkTopology& topo, std::vector<AgentId> compromised,
                       const GoalFactory& goal_factory);

AttackPlan plan_network_attack(const NetworkTopology& topo, const GoalFactory& goal_factory);

} // namespace rdiff
