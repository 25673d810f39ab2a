#include "rdiff/diffusion.hpp"

#include <algorithm>

namespace rdiff {

StateVector lms_adapt(std::span<const double> w_prev, const Observation& obs, double mu) {
    require_same_dim(w_prev.size(), obs.u.size(), "lms_adapt");
    const double e = obs.d - dot(obs.u, w_prev);
    StateVector psi(w_prev.begin(), w_prev.end());
    for (std::size_t m = 0; m < psi.size(); ++m) psi[m] += mu * obs.u[m] * e;
    return psi;
}

double update_gamma(double gamma_sq_prev, std::span<const double> psi_l,
                    std::span<const double> w_prev, double nu) {
    return (1.0 - nu) * gamma_sq_prev + nu * squared_distance(psi_l, w_prev);
}

WeightAssignment combination_weights(const GammaTable& gamma_sq,
                                     std::span<const AgentId> exclude) {
    WeightAssignment out;
    out.reserve(gamma_sq.size());
    double total = 0.0;
    for (const auto& [l, g] : gamma_sq) {
        if (std::find(exclude.begin(), exclude.end(), l) != exclude.end()) continue;
        const double inv = 1.0 / std::max(g, kGammaFloor);
        out.set(l, inv);
        total += inv;
    }
    if (out.empty()) throw AllExcluded("combination_weights: no neighbor left");
    for (auto& kv : out) kv.second /= total;
    return out;
}

StateVector combine(const WeightAssignment& weights, const MessageMap& messages) {
    StateVector w;
    for (const auto& [l, a] : weights) {
        const StateVector* psi = messages.find(l);
        if (psi == nullptr)
            throw std::invalid_argument("combine: no message from agent " + std::to_string(l));
        if (w.empty()) w.assign(psi->size(), 0.0);
        require_same_dim(psi->size(), w.size(), "combine");
        for (std::size_t m = 0; m < w.size(); ++m) w[m] += a * (*psi)[m];
    }
    return w;
}

} // namespace rdiff
