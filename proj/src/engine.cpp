#include "rdiff/engine.hpp"

#include <cmath>
#include <stdexcept>

namespace rdiff {

DiffusionEngine::DiffusionEngine(NetworkTopology topology, std::vector<TargetModel> targets,
                                 std::vector<NoiseModel> noise, std::vector<StateVector> initial,
                                 EngineParams params, std::uint64_t data_seed)
    : topo_(std::move(topology)),
      targets_(std::move(targets)),
      noise_(std::move(noise)),
      params_(std::move(params)) {
    const int n = topo_.n_agents();
    if (static_cast<int>(targets_.size()) != n || static_cast<int>(noise_.size()) != n ||
        static_cast<int>(initial.size()) != n)
        throw std::invalid_argument("engine: per-agent inputs must have n_agents entries");
    if (n == 0) throw std::invalid_argument("engine: no agents");
    if (!(params_.mu >= 0.0)) throw std::invalid_argument("engine: mu must be >= 0");
    if (!(params_.nu > 0.0 && params_.nu <= 1.0))
        throw std::invalid_argument("engine: nu must be in (0, 1]");
    dim_ = initial[0].size();
    if (dim_ == 0) throw std::invalid_argument("engine: M must be >= 1");
    std::size_t window_n = params_.window_n;
    if (params_.resilience) {
        params_.resilience->validate();
        window_n = params_.resilience->window_n;
    }
    if (params_.attack) params_.attack->validate(topo_);

    agents_.resize(n);
    data_rng_.reserve(n);
    for (AgentId k = 0; k < n; ++k) {
        require_same_dim(initial[k].size(), dim_, "initial estimate");
        if (!all_finite(initial[k])) throw std::invalid_argument("initial estimate not finite");
        validate_target(targets_[k], dim_);
        noise_[k].validate();
        AgentState& a = agents_[k];
        a.w = initial[k];
        a.psi = initial[k];
        a.mu = params_.mu;
        a.nu = params_.nu;
        a.window = DataWindow(window_n, dim_);
        for (AgentId l : topo_.neighborhood(k)) a.gamma_sq.set(l, 0.0);
        data_rng_.emplace_back(data_seed, StreamPurpose::Data, static_cast<std::uint64_t>(k));
    }

    compromised_.assign(n, 0);
    victim_slot_.assign(n, -1);
    if (params_.attack) {
        for (AgentId c : params_.attack->compromised) compromised_.at(c) = 1;
        const auto& vs = params_.attack->victims;
        for (std::size_t s = 0; s < vs.size(); ++s) victim_slot_.at(vs[s].victim) = static_cast<int>(s);
        crafted_.assign(vs.size(), StateVector(dim_, 0.0));
        crafted_valid_.assign(vs.size(), 0);
        last_reconstructed_.assign(vs.size(), std::nullopt);
    }
    next_w_.assign(n, StateVector(dim_, 0.0));
    report_.observations.resize(n);
    report_.weights.resize(n);
    report_.raw_weights.resize(n);
    report_.filtered.resize(n);
}

bool DiffusionEngine::attack_running() const noexcept {
    return params_.attack && params_.attack_active && iteration_ >= params_.attack->start_iteration;
}

bool DiffusionEngine::frozen(AgentId k) const { return attack_running() && compromised_[k]; }

bool DiffusionEngine::protected_link(AgentId a, AgentId b) const {
    return params_.attack && params_.attack_active && (compromised_[a] || compromised_[b]);
}

const StateVector& DiffusionEngine::message(AgentId from, AgentId to) const {
    if (compromised_[from] && victim_slot_[to] >= 0 && crafted_valid_[victim_slot_[to]])
        return crafted_[victim_slot_[to]];
    return agents_[from].psi;
}

const RoundReport& DiffusionEngine::round() {
    const std::int64_t i = iteration_;
    const int n = topo_.n_agents();
    report_.iteration = i;
    report_.removed_links.clear();
    report_.max_weight_sum_error = 0.0;

    // adaptation
    for (AgentId k = 0; k < n; ++k) {
        AgentState& a = agents_[k];
        const StateVector target = eval_target(targets_[k], i);
        Observation& obs = report_.observations[k];
        obs = generate_observation(target, noise_[k], data_rng_[k], static_cast<std::uint64_t>(i));
        a.window.push(obs);
        a.psi = lms_adapt(a.w, obs, a.mu);
    }

    // crafted messages, one per victim
    std::fill(crafted_valid_.begin(), crafted_valid_.end(), 0);
    if (attack_running()) {
        const AttackPlan& plan = *params_.attack;
        for (std::size_t s = 0; s < plan.victims.size(); ++s) {
            const VictimAssignment& va = plan.victims[s];
            const AgentState& victim = agents_[va.victim];
            StateVector w_prev;
            try {
                w_prev = reconstruct_victim_state(victim.psi, report_.observations[va.victim],
                                                  victim.mu);
                last_reconstructed_[s] = w_prev;
            } catch (const SingularUpdate&) {
                w_prev = last_reconstructed_[s] ? *last_reconstructed_[s] : victim.psi;
            }
            const StateVector x = attack_reference(va.goal, plan.r, i);
            double r_eff = plan.r;
            if (const auto* g = std::get_if<Guarded>(&plan.guard)) {
                std::vector<StateVector> honest;
                for (AgentId l : topo_.neighbors(va.victim))
                    if (!compromised_[l]) honest.push_back(agents_[l].psi);
                r_eff = guard_step_size(plan.r, x, w_prev, honest, g->rho);
            }
            crafted_[s] = craft_message(w_prev, x, r_eff);
            crafted_valid_[s] = 1;
        }
    }

    // combination
    for (AgentId k = 0; k < n; ++k) {
        WeightAssignment& weights = report_.weights[k];
        WeightAssignment& raw = report_.raw_weights[k];
        std::vector<AgentId>& filtered = report_.filtered[k];
        filtered.clear();
        AgentState& a = agents_[k];
        if (frozen(k)) {
            weights.clear();
            raw.clear();
            next_w_[k] = a.w;
            continue;
        }
        const auto& nb = topo_.neighbors(k);
        a.gamma_sq.set(k, update_gamma(a.gamma_sq.get(k), a.psi, a.w, a.nu));
        for (AgentId l : nb)
            a.gamma_sq.set(l, update_gamma(a.gamma_sq.get(l), message(l, k), a.w, a.nu));
        raw = combination_weights(a.gamma_sq);

        const int F = params_.resilience ? params_.resilience->F_for(k) : 0;
        bool degenerate = false;
        if (F > 0) {
            FlatMap<double> contributions;
            contributions.reserve(nb.size());
            for (AgentId l : nb)
                contributions.set(l, cost_contribution(estimate_cost(message(l, k), a.window),
                                                       a.gamma_sq.get(l)));
            CostReport rep = resilient_filter(contributions, F, k);
            degenerate = rep.degenerate;
            filtered = std::move(rep.removed);
        }
        if (degenerate) {
            weights = WeightAssignment{{k, 1.0}};
            next_w_[k] = a.psi;
        } else {
            weights = filtered.empty() ? raw : combination_weights(a.gamma_sq, filtered);
            StateVector& w = next_w_[k];
            std::fill(w.begin(), w.end(), 0.0);
            for (const auto& [l, wt] : weights) {
                const StateVector& psi = (l == k) ? a.psi : message(l, k);
                for (std::size_t m = 0; m < dim_; ++m) w[m] += wt * psi[m];
            }
        }
        double sum = 0.0;
        for (const auto& kv : weights) sum += kv.second;
        report_.max_weight_sum_error = std::max(report_.max_weight_sum_error, std::abs(sum - 1.0));
    }

    if (params_.prune && i >= params_.prune_start) {
        report_.removed_links = prune_links(
            topo_, std::span<const WeightAssignment>(report_.raw_weights),
            params_.prune_threshold, [this](AgentId x, AgentId y) { return protected_link(x, y); });
        for (const Link& e : report_.removed_links) {
            agents_[e.a].gamma_sq.erase(e.b);
            agents_[e.b].gamma_sq.erase(e.a);
        }
    }

    for (AgentId k = 0; k < n; ++k) agents_[k].w.swap(next_w_[k]);
    ++iteration_;
    return report_;
}

} // namespace rdiff
