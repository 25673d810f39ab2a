#include "rdiff/trace.hpp"

#include <algorithm>

namespace rdiff {

bool SimulationTrace::is_compromised(AgentId k) const {
    return std::find(compromised.begin(), compromised.end(), k) != compromised.end();
}

const VictimAssignment* SimulationTrace::victim(AgentId k) const {
    for (const auto& v : victims)
        if (v.victim == k) return &v;
    return nullptr;
}

std::vector<AgentId> SimulationTrace::normal_agents() const {
    std::vector<AgentId> out;
    for (AgentId k = 0; k < n_agents; ++k)
        if (!is_compromised(k)) out.push_back(k);
    return out;
}

} // namespace rdiff
