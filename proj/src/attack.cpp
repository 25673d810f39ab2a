#include "rdiff/attack.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "rdiff/errors.hpp"

namespace rdiff {

StateVector CircularTrajectory::theta(std::int64_t i) const {
    const double a = 2.0 * std::numbers::pi * omega * static_cast<double>(i) + phase;
    return {amplitude * std::cos(a), amplitude * std::sin(a)};
}

StateVector CircularTrajectory::delta_theta(std::int64_t i) const {
    if (delta == DeltaMode::Exact) {
        const StateVector a = theta(i);
        const StateVector b = theta(i + 1);
        return {b[0] - a[0], b[1] - a[1]};
    }
    const double w = 2.0 * std::numbers::pi * omega;
    const double a = w * static_cast<double>(i) + phase;
    return {-w * amplitude * std::sin(a), w * amplitude * std::cos(a)};
}

StateVector AttackGoal::desired(std::int64_t i) const {
    StateVector out = base;
    if (trajectory) {
        require_same_dim(base.size(), 2, "AttackGoal::desired");
        const StateVector t = trajectory->theta(i);
        out[0] += t[0];
        out[1] += t[1];
    }
    return out;
}

bool AttackPlan::is_compromised(AgentId k) const {
    return std::binary_search(compromised.begin(), compromised.end(), k);
}

const VictimAssignment* AttackPlan::victim(AgentId k) const {
    auto it = std::lower_bound(victims.begin(), victims.end(), k,
                               [](const VictimAssignment& v, AgentId x) { return v.victim < x; });
    return (it != victims.end() && it->victim == k) ? &*it : nullptr;
}

void AttackPlan::validate(const NetworkTopology& topo) const {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("attack r must be in (0, 1)");
    if (start_iteration < 0) throw std::invalid_argument("attack start_iteration must be >= 0");
    if (const auto* g = std::get_if<Guarded>(&guard); g && !(g->rho > 0.0 && g->rho < 1.0))
        throw std::invalid_argument("guard rho must be in (0, 1)");
    for (const auto& v : victims) {
        if (!is_compromised(v.attacker))
            throw std::invalid_argument("victim assigned to a normal agent");
        if (!topo.has_link(v.attacker, v.victim))
            throw std::invalid_argument("victim " + std::to_string(v.victim) +
                                        " is not adjacent to its attacker");
    }
}

StateVector reconstruct_victim_state(std::span<const double> psi_k, const Observation& obs_k,
                                     double mu_k) {
    require_same_dim(psi_k.size(), obs_k.u.size(), "reconstruct_victim_state");
    const double unorm = squared_norm(obs_k.u);
    const double denom = 1.0 - mu_k * unorm;
    if (std::abs(denom) < 1e-12) throw SingularUpdate("1 - mu |u|^2 is zero");
    // b = psi - mu u^T d, then w = b + mu u^T (u b) / denom
    StateVector b(psi_k.begin(), psi_k.end());
    for (std::size_t m = 0; m < b.size(); ++m) b[m] -= mu_k * obs_k.u[m] * obs_k.d;
    const double ub = dot(obs_k.u, b);
    const double s = mu_k * ub / denom;
    for (std::size_t m = 0; m < b.size(); ++m) b[m] += s * obs_k.u[m];
    return b;
}

StateVector attack_reference(const AttackGoal& goal, double r, std::int64_t i) {
    if (!goal.trajectory) return goal.base;
    require_same_dim(goal.base.size(), 2, "attack_reference");
    const auto& tr = *goal.trajectory;
    StateVector x = goal.base;
    const StateVector th = tr.theta(i - 1);
    x[0] += th[0];
    x[1] += th[1];
    if (tr.correction) {
        if (r == 0.0) throw ZeroStepSize("attack_reference: r = 0 with a moving goal");
        const StateVector dth = tr.delta_theta(i - 1);
        x[0] += dth[0] / r;
        x[1] += dth[1] / r;
    }
    return x;
}

StateVector craft_message(std::span<const double> w_victim_prev, std::span<const double> x_i,
                          double r_eff) {
    require_same_dim(w_victim_prev.size(), x_i.size(), "craft_message");
    StateVector out(w_victim_prev.begin(), w_victim_prev.end());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] += r_eff * (x_i[m] - w_victim_prev[m]);
    return out;
}

double guard_step_size(double r, std::span<const double> x_i,
                       std::span<const double> w_victim_prev,
                       std::span<const StateVector> neighbor_psis, double rho) {
    if (neighbor_psis.empty()) return r;
    const double step = std::abs(r) * distance(x_i, w_victim_prev);
    if (step == 0.0) return r;
    double min_dev = std::numeric_limits<double>::infinity();
    for (const auto& psi : neighbor_psis) min_dev = std::min(min_dev, distance(psi, w_victim_prev));
    return step <= rho * min_dev ? r : 0.0;
}

std::vector<AgentId> greedy_dominating_set(const NetworkTopology& topo) {
    const int n = topo.n_agents();
    std::vector<std::uint8_t> covered(n, 0);
    int uncovered = n;
    std::vector<AgentId> out;
    while (uncovered > 0) {
        AgentId best = -1;
        int best_gain = 0;
        for (AgentId k = 0; k < n; ++k) {
            int gain = covered[k] ? 0 : 1;
            for (AgentId l : topo.neighbors(k)) gain += covered[l] ? 0 : 1;
            if (gain > best_gain) {
                best_gain = gain;
                best = k;
            }
        }
        out.push_back(best);
        if (!covered[best]) {
            covered[best] = 1;
            --uncovered;
        }
        for (AgentId l : topo.neighbors(best))
            if (!covered[l]) {
                covered[l] = 1;
                --uncovered;
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<AgentId> minimum_dominating_set(const NetworkTopology& topo) {
    const int n = topo.n_agents();
    if (n > 20) throw std::invalid_argument("minimum_dominating_set: n > 20");
    if (n == 0) return {};
    std::vector<std::uint32_t> closed(n, 0);
    for (AgentId k = 0; k < n; ++k) {
        closed[k] = 1u << k;
        for (AgentId l : topo.neighbors(k)) closed[k] |= 1u << l;
    }
    const std::uint32_t all = (1u << n) - 1u;
    std::uint32_t best = all;
    int best_size = n;
    for (std::uint32_t mask = 1; mask <= all; ++mask) {
        const int size = std::popcount(mask);
        if (size >= best_size) continue;
        std::uint32_t cov = 0;
        for (AgentId k = 0; k < n; ++k)
            if (mask & (1u << k)) cov |= closed[k];
        if (cov == all) {
            best = mask;
            best_size = size;
        }
    }
    std::vector<AgentId> out;
    for (AgentId k = 0; k < n; ++k)
        if (best & (1u << k)) out.push_back(k);
    return out;
}

AttackPlan plan_attack(const NetworkTopology& topo, std::vector<AgentId> compromised,
                       const GoalFactory& goal_factory) {
    AttackPlan plan;
    std::sort(compromised.begin(), compromised.end());
    compromised.erase(std::unique(compromised.begin(), compromised.end()), compromised.end());
    plan.compromised = std::move(compromised);
    for (AgentId k = 0; k < topo.n_agents(); ++k) {
        if (plan.is_compromised(k)) continue;
        for (AgentId l : topo.neighbors(k)) {
            if (plan.is_compromised(l)) {
                plan.victims.push_back({k, l, goal_factory(k)});
                break; // neighbors are sorted: l is the smallest compromised neighbor
            }
        }
    }
    return plan;
}

AttackPlan plan_network_attack(const NetworkTopology& topo, const GoalFactory& goal_factory) {
    return plan_attack(topo, greedy_dominating_set(topo), goal_factory);
}

} // namespace rdiff
