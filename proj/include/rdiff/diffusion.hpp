#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "rdiff/agent.hpp"
#include "rdiff/model.hpp"
#include "rdiff/topology.hpp"

namespace rdiff {

inline constexpr double kGammaFloor = 1e-12;

using WeightAssignment = FlatMap<double>;
using MessageMap = FlatMap<StateVector>;

// psi = w_prev + mu * u^T (d - u w_prev)
StateVector lms_adapt(std::span<const double> w_prev, const Observation& obs, double mu);

// (1 - nu) * gamma_prev + nu * |psi_l - w_prev|^2
double update_gamma(double gamma_sq_prev, std::span<const double> psi_l,
                    std::span<const double> w_prev, double nu);

// a_lk proportional to 1 / max(gamma_lk^2, kGammaFloor) over the neighbors
// not in `exclude`. Throws AllExcluded when nothing is left.
WeightAssignment combination_weights(const GammaTable& gamma_sq,
                                     std::span<const AgentId> exclude = {});

StateVector combine(const WeightAssignment& weights, const MessageMap& messages);

// Removes (k, l) when a_lk < threshold and a_kl < threshold. `weights[k]` is
// agent k's assignment this round. Links for which `keep(k, l)` is true are
// left alone. Returns the removed links in ascending order.
template <class Keep>
std::vector<Link> prune_links(NetworkTopology& topo, std::span<const WeightAssignment> weights,
                              double threshold, Keep&& keep) {
    if (!(threshold > 0.0)) throw std::invalid_argument("prune_links: threshold must be > 0");
    std::vector<Link> removed;
    for (const Link& e : topo.links()) {
        if (keep(e.a, e.b)) continue;
        const double ab = weights[e.b].get(e.a, 0.0); // weight b assigns to a
        const double ba = weights[e.a].get(e.b, 0.0);
        if (ab < threshold && ba < threshold) removed.push_back(e);
    }
    for (const Link& e : removed) topo.remove_link(e.a, e.b);
    return removed;
}

inline std::vector<Link> prune_links(NetworkTopology& topo,
                                     std::span<const WeightAssignment> weights, double threshold) {
    return prune_links(topo, weights, threshold, [](AgentId, AgentId) { return false; });
}

} // namespace rdiff
