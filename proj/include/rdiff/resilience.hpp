#pragma once

#include <map>
#include <span>
#include <vector>

#include "rdiff/agent.hpp"

namespace rdiff {

struct ResilienceConfig {
    int F = 0;
    std::map<AgentId, int> per_agent_F; // overrides F for listed agents
    std::size_t window_n = 100;

    int F_for(AgentId k) const {
        auto it = per_agent_F.find(k);
        return it == per_agent_F.end() ? F : it->second;
    }
    void validate() const;
};

struct CostReport {
    FlatMap<double> j_cost;
    FlatMap<double> contribution;
    std::vector<AgentId> removed; // in removal order
    bool degenerate = false;      // F >= |N_k|: use psi_k alone
};

// Mean of (d_j - u_j psi)^2 over the observations in the window.
double estimate_cost(std::span<const double> psi_l, const DataWindow& window);

// j / max(gamma_sq, kGammaFloor)^2
double cost_contribution(double j_cost, double gamma_sq);

// `contributions` covers N_k without k. Removes the F largest, smaller id
// first on ties.
CostReport resilient_filter(const FlatMap<double>& contributions, int F, AgentId self_id);

} // namespace rdiff
